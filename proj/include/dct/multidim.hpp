#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dct/alphabet.hpp"
#include "dct/outcome.hpp"
#include "dct/rule1d.hpp"
#include "dct/trace.hpp"

namespace dct {

using Dims = std::vector<std::size_t>;
using Coord = std::vector<std::size_t>;

// How the active memory is recovered from a cell's neighbourhood.
//  CounterFiltered: only neighbours whose counter differs from the updated
//    cell's counter are candidates (all neighbours when the cell is base).
//  PaperLiteral: every intermediate neighbour is a candidate.
// Both take the largest candidate memory under set inclusion.
enum class SelectionMode : std::uint8_t { CounterFiltered, PaperLiteral };

std::string_view to_string(SelectionMode mode) noexcept;
// Accepts "counter-filtered" / "paper-literal"; throws std::invalid_argument.
SelectionMode parse_selection_mode(std::string_view text);

class RuleError : public std::runtime_error {
 public:
  explicit RuleError(RuleFault fault)
      : std::runtime_error(std::string(to_string(fault))), fault_(fault) {}
  RuleFault fault() const noexcept { return fault_; }

 private:
  RuleFault fault_;
};

// Toroidal cuboid stored with the first coordinate varying fastest, so the
// flat index order is the scan order.
class CuboidConfiguration {
 public:
  // Throws std::invalid_argument on empty dims, a zero side, a size
  // mismatch or an invalid cell.
  CuboidConfiguration(Dims dims, std::vector<Symbol> cells, int alphabet_size);

  // Base-k digits of `index`, flat cell 0 least significant.
  static CuboidConfiguration from_index(std::uint64_t index, Dims dims, int alphabet_size);

  // Grid file:
  //   dims: n1 x n2 [x n3 ...]
  //   alphabet: k
  //   then prod(n2..nd) rows of n1 glyphs, in scan order.
  // Blank lines and blanks between glyphs are ignored. Throws ParseError
  // naming line and column.
  static CuboidConfiguration parse_grid(std::string_view text);
  std::string to_grid_text() const;

  const Dims& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return dims_.size(); }
  int alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t size() const noexcept { return cells_.size(); }
  std::span<const Symbol> cells() const noexcept { return cells_; }

  std::size_t flat_index(const Coord& coord) const;
  Coord coord_of(std::size_t flat) const;
  Symbol at(const Coord& coord) const { return cells_[flat_index(coord)]; }
  void set(const Coord& coord, Symbol s) { cells_[flat_index(coord)] = s; }

  bool all_base() const noexcept;

  friend bool operator==(const CuboidConfiguration&, const CuboidConfiguration&) = default;

 private:
  Dims dims_;
  std::vector<Symbol> cells_;
  int alphabet_size_;
};

std::size_t cell_count(const Dims& dims);

// Every coordinate, first coordinate fastest.
std::vector<Coord> scan_order(const Dims& dims);

// The d corner-chain neighbours of `coord` (the j-th decrements the first
// j coordinates, wrapping), followed by `coord` itself.
std::vector<Coord> neighbors(const Coord& coord, const Dims& dims);

// Flat neighbour indices for every cell: row i holds the d neighbours of
// flat cell i (self excluded), in neighbour order.
std::vector<std::size_t> neighbor_table(const Dims& dims);

struct ActiveMemory {
  Counter counter;
  SymbolSet memory;

  friend bool operator==(const ActiveMemory&, const ActiveMemory&) = default;
};

struct MemorySelection {
  std::optional<ActiveMemory> active;
  RuleFault fault = RuleFault::None;
};

// Non-throwing form used by the engine.
MemorySelection select_memory(Symbol self, std::span<const Symbol> neighbors,
                              SelectionMode mode) noexcept;

// nullopt when there is no candidate. Throws RuleError when candidate
// memories are not totally ordered by inclusion (or, for a base cell,
// candidates disagree on the counter).
std::optional<ActiveMemory> select_active_memory(Symbol self, std::span<const Symbol> neighbors,
                                                 SelectionMode mode);

struct TransitionD {
  RuleCase rule_case;
  LocalResult result;
  RuleFault fault = RuleFault::None;  // when set, result is meaningless
};

// The d-dimensional local rule; `neighbors` excludes self.
TransitionD evaluate_local_d(Symbol self, std::span<const Symbol> neighbors,
                             SelectionMode mode) noexcept;

// Checked form. Throws std::invalid_argument on invalid symbols and
// RuleError on a rule fault.
LocalResult apply_local_d(Symbol self, std::span<const Symbol> neighbors, int alphabet_size,
                          SelectionMode mode = SelectionMode::CounterFiltered);

inline std::uint64_t default_max_sweeps_d(std::size_t cells) { return cells + 4; }

struct RunDOptions {
  std::optional<std::uint64_t> max_sweeps;  // default cells + 4
  SelectionMode mode = SelectionMode::CounterFiltered;
  bool capture_trace = false;
};

struct RunDResult {
  RunOutcome outcome;
  std::vector<PhaseEvent> events;
  std::optional<Trace> trace;
  CuboidConfiguration final_state;
};

// Sweeps the scan order with in-place updates. Outcomes as for rings, plus
// RuleError when the rule faults (the run halts there).
RunDResult run_d(const CuboidConfiguration& initial, const RunDOptions& options = {});

}  // namespace dct
