#include "dct/outcome.hpp"

namespace dct {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Kickstart: return "KICKSTART";
    case EventKind::SwapReset: return "SWAP_RESET";
    case EventKind::SwapConverge: return "SWAP_CONVERGE";
    case EventKind::Tie: return "TIE";
  }
  return "?";
}

std::string_view to_string(RuleFault fault) noexcept {
  switch (fault) {
    case RuleFault::None: return "NONE";
    case RuleFault::IncomparableMemories: return "INCOMPARABLE_MEMORIES";
    case RuleFault::InconsistentConvergence: return "INCONSISTENT_CONVERGENCE";
    case RuleFault::MixedCounters: return "MIXED_COUNTERS";
    case RuleFault::NoActiveMemory: return "NO_ACTIVE_MEMORY";
  }
  return "?";
}

std::string_view to_string(RunOutcome::Kind kind) noexcept {
  switch (kind) {
    case RunOutcome::Kind::Classified: return "CLASSIFIED";
    case RunOutcome::Kind::Tie: return "TIE";
    case RunOutcome::Kind::BudgetExceeded: return "BUDGET_EXCEEDED";
    case RunOutcome::Kind::RuleError: return "RULE_ERROR";
  }
  return "?";
}

std::string outcome_label(const RunOutcome& outcome) {
  std::string out(to_string(outcome.kind));
  if (outcome.kind == RunOutcome::Kind::Classified) {
    out += ' ';
    out += symbol_glyph(outcome.symbol);
  } else if (outcome.kind == RunOutcome::Kind::RuleError) {
    out += ' ';
    out += to_string(outcome.fault);
  }
  return out;
}

std::string summarize(const RunOutcome& outcome) {
  return outcome_label(outcome) + ", sweeps=" + std::to_string(outcome.sweeps_used) +
         ", phases=" + std::to_string(outcome.propagation_phases);
}

}  // namespace dct
