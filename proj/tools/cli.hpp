#pragma once

#include <ostream>

namespace dct::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailures = 1;  // misclassification or property violation
inline constexpr int kUsage = 2;     // bad arguments, malformed input, unreadable files

// Entry point behind the `dct` binary; writes only to `out` and `err`.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dct::cli
