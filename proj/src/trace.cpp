#include "dct/trace.hpp"

#include <algorithm>
#include <sstream>

#include "dct/error.hpp"
#include "json.hpp"

namespace dct {

namespace {

using ordered_json = nlohmann::ordered_json;

void append_padded(std::string& out, const std::string& cell, std::size_t width) {
  out += cell;
  out.append(width - cell.size(), ' ');
}

void trim_trailing(std::string& line) {
  while (!line.empty() && line.back() == ' ') line.pop_back();
}

// Rows of rendered cells laid out with per-column widths.
std::vector<std::string> align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) line += ' ';
      append_padded(line, row[c], widths[c]);
    }
    trim_trailing(line);
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<std::string> render_cells(const std::vector<Symbol>& cells, std::size_t from,
                                      std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = from; i < from + count; ++i) out.push_back(to_string(cells[i]));
  return out;
}

ordered_json outcome_json(const RunOutcome& outcome) {
  ordered_json j;
  j["outcome"] = std::string(to_string(outcome.kind));
  j["symbol"] = outcome.kind == RunOutcome::Kind::Classified ? ordered_json(outcome.symbol)
                                                             : ordered_json(nullptr);
  j["fault"] = outcome.kind == RunOutcome::Kind::RuleError
                   ? ordered_json(std::string(to_string(outcome.fault)))
                   : ordered_json(nullptr);
  j["sweeps"] = outcome.sweeps_used;
  j["phases"] = outcome.propagation_phases;
  return j;
}

}  // namespace

std::string render_spacetime(const Trace& trace) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(trace.snapshots.size());
  for (const auto& snap : trace.snapshots) rows.push_back(render_cells(snap, 0, snap.size()));
  std::string out;
  for (const std::string& line : align(rows)) {
    out += line;
    out += '\n';
  }
  return out;
}

std::vector<std::vector<Symbol>> parse_spacetime(std::string_view text, int alphabet_size) {
  std::vector<std::vector<Symbol>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream tokens(line);
    std::vector<Symbol> row;
    std::string token;
    while (tokens >> token) {
      try {
        row.push_back(parse_symbol(token, alphabet_size));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), number);
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_panels(const Trace& trace) {
  if (trace.dims.size() == 1) return render_spacetime(trace);
  if (trace.dims.size() != 2) return emit_records(trace);

  const std::size_t width = trace.dims[0];
  const std::size_t height = trace.dims[1];
  std::vector<std::vector<std::string>> rows;
  for (const auto& snap : trace.snapshots) {
    for (std::size_t y = 0; y < height; ++y) rows.push_back(render_cells(snap, y * width, width));
  }
  const std::vector<std::string> lines = align(rows);

  std::string out;
  for (std::size_t p = 0; p < trace.snapshots.size(); ++p) {
    if (p != 0) out += '\n';
    out += "sweep " + std::to_string(p);
    if (p + 1 == trace.snapshots.size() && p != 0) out += ": " + outcome_label(trace.outcome);
    out += '\n';
    for (std::size_t y = 0; y < height; ++y) {
      out += lines[p * height + y];
      out += '\n';
    }
  }
  return out;
}

std::string emit_records(const Trace& trace) {
  std::string out;
  const bool multi = trace.dims.size() > 1;
  for (const TraceRecord& r : trace.records) {
    ordered_json j;
    j["sweep"] = r.sweep;
    j["cell"] = r.cell;
    if (multi) {
      std::vector<std::size_t> coord;
      std::size_t flat = r.cell;
      for (std::size_t side : trace.dims) {
        coord.push_back(flat % side);
        flat /= side;
      }
      j["coord"] = coord;
    }
    j["case"] = std::string(to_string(r.rule_case));
    j["before"] = to_string(r.before);
    j["after"] = to_string(r.after);
    j["event"] = r.event ? ordered_json(std::string(to_string(*r.event))) : ordered_json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string emit_events(const std::vector<PhaseEvent>& events, const RunOutcome& outcome) {
  std::string out;
  for (const PhaseEvent& e : events) {
    ordered_json j;
    j["event"] = std::string(to_string(e.kind));
    j["sweep"] = e.sweep;
    j["cell"] = e.cell;
    j["detail"] = e.detail ? ordered_json(to_string(*e.detail)) : ordered_json(nullptr);
    out += j.dump();
    out += '\n';
  }
  out += outcome_json(outcome).dump();
  out += '\n';
  return out;
}

std::vector<Symbol> replay(const Trace& trace) {
  if (trace.snapshots.empty()) return {};
  std::vector<Symbol> cells = trace.snapshots.front();
  for (const TraceRecord& r : trace.records) cells.at(r.cell) = r.after;
  return cells;
}

}  // namespace dct
