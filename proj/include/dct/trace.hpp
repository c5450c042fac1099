#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dct/alphabet.hpp"
#include "dct/outcome.hpp"
#include "dct/rule1d.hpp"

namespace dct {

// One cell update, in update order.
struct TraceRecord {
  std::uint64_t sweep;  // 1-based
  std::size_t cell;     // flat index; scan order for cuboids
  RuleCase rule_case;
  Symbol before;
  Symbol after;  // equals `before` for a tie
  std::optional<EventKind> event;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// Full history of a run. snapshots[0] is the initial configuration and
// snapshots[k] the state after sweep k (partial if the run halted mid-sweep).
struct Trace {
  std::vector<std::size_t> dims;  // {n} for rings
  int alphabet_size = 2;
  std::vector<std::vector<Symbol>> snapshots;
  std::vector<TraceRecord> records;
  RunOutcome outcome;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Space-time diagram: one row per snapshot, cells separated by spaces and
// left-aligned to the widest entry of their column. No trailing blanks.
std::string render_spacetime(const Trace& trace);

// Inverse of render_spacetime over the compact notation.
std::vector<std::vector<Symbol>> parse_spacetime(std::string_view text, int alphabet_size);

// One grid per snapshot for 2-D traces ("sweep k" header, then rows of
// constant second coordinate). Traces of other dimensionality fall back to
// the record stream. A halted final panel is labelled with the outcome.
std::string render_panels(const Trace& trace);

// Line-delimited JSON, one object per cell update with keys
// sweep, cell, case, before, after and event (null when none).
std::string emit_records(const Trace& trace);

// Line-delimited JSON, one object per phase event then a final outcome record.
std::string emit_events(const std::vector<PhaseEvent>& events, const RunOutcome& outcome);

// Replays the after-symbols of every record onto snapshots[0].
std::vector<Symbol> replay(const Trace& trace);

}  // namespace dct
