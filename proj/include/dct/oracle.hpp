#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dct/alphabet.hpp"

namespace dct {

// Ground truth for the density task, computed by counting.
struct DensityVerdict {
  enum class Kind { Majority, Tie };

  Kind kind = Kind::Tie;
  int majority = -1;                   // valid when kind == Majority
  std::vector<std::uint64_t> counts;   // counts[b] = |x|_b

  bool is_tie() const noexcept { return kind == Kind::Tie; }
};

// MAJORITY(b) iff counts[b] is strictly greater than every other count.
// Throws std::invalid_argument on empty input or non-base cells.
DensityVerdict majority(std::span<const Symbol> cells, int alphabet_size);

}  // namespace dct
