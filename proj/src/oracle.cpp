#include "dct/oracle.hpp"

#include <stdexcept>
#include <string>

namespace dct {

DensityVerdict majority(std::span<const Symbol> cells, int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (cells.empty()) throw std::invalid_argument("majority of an empty configuration");

  DensityVerdict verdict;
  verdict.counts.assign(static_cast<std::size_t>(alphabet_size), 0);
  for (const Symbol& s : cells) {
    if (!s.is_base() || s.value() >= alphabet_size) {
      throw std::invalid_argument("majority input must contain base symbols only, got " +
                                  to_string(s));
    }
    ++verdict.counts[static_cast<std::size_t>(s.value())];
  }

  std::uint64_t best = 0;
  int best_symbol = -1;
  bool shared = false;
  for (int b = 0; b < alphabet_size; ++b) {
    const std::uint64_t c = verdict.counts[static_cast<std::size_t>(b)];
    if (c > best) {
      best = c;
      best_symbol = b;
      shared = false;
    } else if (c == best) {
      shared = true;
    }
  }
  if (!shared) {
    verdict.kind = DensityVerdict::Kind::Majority;
    verdict.majority = best_symbol;
  }
  return verdict;
}

}  // namespace dct
