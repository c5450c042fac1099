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

// Cyclic configuration; the left neighbour of cell 0 is cell n-1.
class RingConfiguration {
 public:
  // Throws std::invalid_argument if empty or any cell is invalid.
  RingConfiguration(std::vector<Symbol> cells, int alphabet_size);

  // Digit string, cell 0 first. Throws ParseError.
  static RingConfiguration parse(std::string_view digits, int alphabet_size = 2);

  // Base-k digits of `index`, cell 0 least significant.
  static RingConfiguration from_index(std::uint64_t index, std::size_t n, int alphabet_size = 2);

  std::size_t size() const noexcept { return cells_.size(); }
  int alphabet_size() const noexcept { return alphabet_size_; }
  std::span<const Symbol> cells() const noexcept { return cells_; }
  Symbol operator[](std::size_t i) const { return cells_[i]; }
  std::size_t left_of(std::size_t i) const noexcept { return i == 0 ? cells_.size() - 1 : i - 1; }

  void set(std::size_t i, Symbol s) { cells_[i] = s; }

  bool all_base() const noexcept;
  // Uniform base configuration; the value, or nullopt.
  std::optional<int> uniform_value() const noexcept;

  std::string to_string() const;

  friend bool operator==(const RingConfiguration&, const RingConfiguration&) = default;

 private:
  std::vector<Symbol> cells_;
  int alphabet_size_;
};

struct StepResult {
  RuleCase rule_case;
  std::optional<PhaseEvent> event;
};

// Updates cell i in place from (cells[i-1], cells[i]). A tie leaves the cell
// unchanged and reports a Tie event.
StepResult step_cell(RingConfiguration& config, std::size_t i, std::uint64_t sweep = 1);

struct SweepResult {
  std::vector<PhaseEvent> events;
  bool tie = false;
};

// One application of F: step_cell on cells 0..n-1 in order.
SweepResult sweep(RingConfiguration& config, std::uint64_t sweep_index = 1);

// F^{k,i}(x): k full sweeps then cells 0..i-1. Requires i <= n.
RingConfiguration partial(RingConfiguration config, std::uint64_t sweeps, std::size_t cells);

struct RunOptions {
  std::optional<std::uint64_t> max_sweeps;  // default n + 4
  bool capture_trace = false;
};

struct RunResult {
  RunOutcome outcome;
  std::vector<PhaseEvent> events;
  std::optional<Trace> trace;
  RingConfiguration final_state;
};

inline std::uint64_t default_max_sweeps(std::size_t cells) { return cells + 4; }

// Observers see every cell update after it is written:
//   on_update(sweep, cell, rule_case, before, after)
struct NullObserver {
  void on_update(std::uint64_t, std::size_t, RuleCase, Symbol, Symbol) noexcept {}
};

namespace detail {

void validate_run_input(const RingConfiguration& config, const RunOptions& options);

struct CellUpdate {
  RuleCase rule_case;
  Symbol before;
  Symbol after;
};

// Ring storage for the run loop. Each update depends on the one before, so
// the loop is latency-bound; TableCells turns the rule into one lookup.
class DirectCells {
 public:
  explicit DirectCells(std::span<const Symbol> cells) : cells_(cells.begin(), cells.end()) {}

  CellUpdate step(std::size_t i, std::size_t left) {
    const Symbol before = cells_[i];
    const Transition t = evaluate_local(cells_[left], before);
    if (!t.result.is_tie()) cells_[i] = t.result.symbol();
    return {t.rule_case, before, cells_[i]};
  }
  std::size_t size() const noexcept { return cells_.size(); }
  std::vector<Symbol> symbols() const { return cells_; }
  std::optional<int> uniform_value() const noexcept {
    const Symbol first = cells_[0];
    if (!first.is_base()) return std::nullopt;
    for (const Symbol& s : cells_) {
      if (s != first) return std::nullopt;
    }
    return first.value();
  }

 private:
  std::vector<Symbol> cells_;
};

class TableCells {
 public:
  // All cells must be base symbols, whose ids are their values.
  TableCells(const RuleTable& table, std::span<const Symbol> cells) : table_(&table) {
    ids_.reserve(cells.size());
    for (const Symbol& s : cells) ids_.push_back(static_cast<std::uint8_t>(s.value()));
  }

  CellUpdate step(std::size_t i, std::size_t left) {
    const std::uint8_t before = ids_[i];
    // The left cell was usually the previous update; reuse it from a register.
    const std::uint8_t left_id = left + 1 == i ? last_ : ids_[left];
    const RuleTable::Entry e = table_->at(left_id, before);
    ids_[i] = last_ = e.next;
    return {e.rule_case, table_->symbol(before), table_->symbol(e.next)};
  }
  std::size_t size() const noexcept { return ids_.size(); }
  std::vector<Symbol> symbols() const {
    std::vector<Symbol> out;
    out.reserve(ids_.size());
    for (std::uint8_t id : ids_) out.push_back(table_->symbol(id));
    return out;
  }
  std::optional<int> uniform_value() const noexcept {
    const std::uint8_t first = ids_[0];
    if (first >= table_->alphabet_size()) return std::nullopt;
    for (std::uint8_t id : ids_) {
      if (id != first) return std::nullopt;
    }
    return first;
  }

 private:
  const RuleTable* table_;
  std::vector<std::uint8_t> ids_;
  std::uint8_t last_ = 0;
};

template <class Cells, class Observer>
RunResult run_loop(const RingConfiguration& initial, const RunOptions& options, Observer& observer,
                   Cells cells) {
  const std::size_t n = cells.size();
  const std::uint64_t budget = options.max_sweeps.value_or(default_max_sweeps(n));

  RunResult result{RunOutcome{}, {}, std::nullopt, initial};
  RunOutcome& outcome = result.outcome;
  if (options.capture_trace) {
    result.trace.emplace();
    result.trace->dims = {n};
    result.trace->alphabet_size = initial.alphabet_size();
    result.trace->snapshots.push_back(cells.symbols());
  }

  bool halted = false;
  for (std::uint64_t k = 1; k <= budget && !halted; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const CellUpdate u = cells.step(i, i == 0 ? n - 1 : i - 1);
      observer.on_update(k, i, u.rule_case, u.before, u.after);

      const std::optional<EventKind> ev = event_for(u.rule_case);
      if (options.capture_trace) {
        result.trace->records.push_back({k, i, u.rule_case, u.before, u.after, ev});
      }
      if (!ev) continue;
      std::optional<Symbol> detail;
      if (*ev == EventKind::SwapConverge) detail = u.after;
      result.events.push_back({*ev, k, i, detail});
      if (*ev == EventKind::Kickstart || *ev == EventKind::SwapReset) {
        ++outcome.propagation_phases;
      } else if (*ev == EventKind::Tie) {
        outcome.kind = RunOutcome::Kind::Tie;
        outcome.sweeps_used = k;
        halted = true;
        break;
      }
    }
    if (options.capture_trace) result.trace->snapshots.push_back(cells.symbols());
    if (halted) break;

    if (const std::optional<int> v = cells.uniform_value()) {
      outcome.kind = RunOutcome::Kind::Classified;
      outcome.symbol = *v;
      outcome.sweeps_used = k;
      halted = true;
    }
  }
  if (!halted) {
    outcome.kind = RunOutcome::Kind::BudgetExceeded;
    outcome.sweeps_used = budget;
  }
  if (result.trace) result.trace->outcome = outcome;
  result.final_state = RingConfiguration(cells.symbols(), initial.alphabet_size());
  return result;
}

}  // namespace detail

// Sweeps until the configuration is a uniform base fixed point, a tie is
// met (halts at once), or the budget runs out. Phase count = number of
// Kickstart + SwapReset events.
template <class Observer>
RunResult run_observed(const RingConfiguration& initial, const RunOptions& options,
                       Observer& observer) {
  detail::validate_run_input(initial, options);
  if (const RuleTable* table = RuleTable::get(initial.alphabet_size())) {
    return detail::run_loop(initial, options, observer, detail::TableCells(*table, initial.cells()));
  }
  return detail::run_loop(initial, options, observer, detail::DirectCells(initial.cells()));
}

// Same, always on the untabulated rule; a cross-check for the table path.
template <class Observer>
RunResult run_observed_direct(const RingConfiguration& initial, const RunOptions& options,
                              Observer& observer) {
  detail::validate_run_input(initial, options);
  return detail::run_loop(initial, options, observer, detail::DirectCells(initial.cells()));
}

// Input must contain base symbols only; max_sweeps, when set, must be >= 1.
RunResult run(const RingConfiguration& initial, const RunOptions& options = {});

}  // namespace dct
