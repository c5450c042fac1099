#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dct/alphabet.hpp"
#include "dct/rule1d.hpp"

namespace dct {

// Phase boundaries. Kickstart and SwapReset each begin a propagation phase.
enum class EventKind : std::uint8_t { Kickstart, SwapReset, SwapConverge, Tie };

std::string_view to_string(EventKind kind) noexcept;

// Event raised by a rule case, if any.
constexpr std::optional<EventKind> event_for(RuleCase c) noexcept {
  switch (c) {
    case RuleCase::Kickstart: return EventKind::Kickstart;
    case RuleCase::SwapReset: return EventKind::SwapReset;
    case RuleCase::SwapConverge: return EventKind::SwapConverge;
    case RuleCase::SwapTie: return EventKind::Tie;
    default: return std::nullopt;
  }
}

struct PhaseEvent {
  EventKind kind;
  std::uint64_t sweep;  // 1-based index of the sweep in which it fired
  std::size_t cell;     // flat cell index
  std::optional<Symbol> detail;  // surviving base symbol for SwapConverge

  friend bool operator==(const PhaseEvent&, const PhaseEvent&) = default;
};

// Rule-level failures of the d-dimensional rule. They mark states on which
// the local rule is not well defined and halt the run.
//  IncomparableMemories: no inclusion-maximum among candidate memories (or,
//    in counter-filtered mode, candidates that do not form a chain).
//  InconsistentConvergence: base neighbours of a converging cell disagree.
//  MixedCounters: a base cell sees intermediate neighbours of both parities.
//  NoActiveMemory: propagation with no candidate memory at all.
enum class RuleFault : std::uint8_t {
  None,
  IncomparableMemories,
  InconsistentConvergence,
  MixedCounters,
  NoActiveMemory,
};

std::string_view to_string(RuleFault fault) noexcept;

struct RunOutcome {
  enum class Kind : std::uint8_t { Classified, Tie, BudgetExceeded, RuleError };

  Kind kind = Kind::BudgetExceeded;
  int symbol = -1;                     // Classified only
  RuleFault fault = RuleFault::None;   // RuleError only
  std::uint64_t sweeps_used = 0;
  std::uint64_t propagation_phases = 0;

  bool classified() const noexcept { return kind == Kind::Classified; }

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

std::string_view to_string(RunOutcome::Kind kind) noexcept;

// "CLASSIFIED 0", "TIE", "BUDGET_EXCEEDED", "RULE_ERROR INCOMPARABLE_MEMORIES".
std::string outcome_label(const RunOutcome& outcome);

// "CLASSIFIED 0, sweeps=5, phases=3"
std::string summarize(const RunOutcome& outcome);

}  // namespace dct
