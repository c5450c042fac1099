#include "dct/multidim.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

#include "dct/error.hpp"

namespace dct {

std::string_view to_string(SelectionMode mode) noexcept {
  return mode == SelectionMode::CounterFiltered ? "counter-filtered" : "paper-literal";
}

SelectionMode parse_selection_mode(std::string_view text) {
  if (text == "counter-filtered") return SelectionMode::CounterFiltered;
  if (text == "paper-literal") return SelectionMode::PaperLiteral;
  throw std::invalid_argument("unknown selection mode '" + std::string(text) +
                              "' (expected counter-filtered or paper-literal)");
}

std::size_t cell_count(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("a cuboid needs at least one dimension");
  std::size_t total = 1;
  for (std::size_t side : dims) {
    if (side == 0) throw std::invalid_argument("cuboid sides must be at least 1");
    if (total > std::numeric_limits<std::size_t>::max() / side) {
      throw std::overflow_error("cuboid too large");
    }
    total *= side;
  }
  return total;
}

CuboidConfiguration::CuboidConfiguration(Dims dims, std::vector<Symbol> cells, int alphabet_size)
    : dims_(std::move(dims)), cells_(std::move(cells)), alphabet_size_(alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (cell_count(dims_) != cells_.size()) {
    throw std::invalid_argument("cuboid has " + std::to_string(cells_.size()) +
                                " cells, dims require " + std::to_string(cell_count(dims_)));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!is_valid(cells_[i], alphabet_size)) {
      throw std::invalid_argument("cell " + std::to_string(i) + " holds invalid symbol " +
                                  to_string(cells_[i]));
    }
  }
}

CuboidConfiguration CuboidConfiguration::from_index(std::uint64_t index, Dims dims,
                                                    int alphabet_size) {
  check_alphabet_size(alphabet_size);
  std::vector<Symbol> cells(cell_count(dims));
  const auto k = static_cast<std::uint64_t>(alphabet_size);
  for (Symbol& s : cells) {
    s = Symbol::base(static_cast<int>(index % k));
    index /= k;
  }
  return CuboidConfiguration(std::move(dims), std::move(cells), alphabet_size);
}

std::size_t CuboidConfiguration::flat_index(const Coord& coord) const {
  if (coord.size() != dims_.size()) throw std::invalid_argument("coordinate has wrong dimension");
  std::size_t flat = 0;
  for (std::size_t j = dims_.size(); j-- > 0;) {
    if (coord[j] >= dims_[j]) throw std::out_of_range("coordinate outside cuboid");
    flat = flat * dims_[j] + coord[j];
  }
  return flat;
}

Coord CuboidConfiguration::coord_of(std::size_t flat) const {
  if (flat >= cells_.size()) throw std::out_of_range("flat index outside cuboid");
  Coord c(dims_.size());
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    c[j] = flat % dims_[j];
    flat /= dims_[j];
  }
  return c;
}

bool CuboidConfiguration::all_base() const noexcept {
  return std::all_of(cells_.begin(), cells_.end(), [](Symbol s) { return s.is_base(); });
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  std::string_view text;
  std::size_t number;  // 1-based
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({line, number++});
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

// Parses "key: rest" and returns rest with its starting column.
std::pair<std::string_view, std::size_t> header_value(const Line& line, std::string_view key) {
  const std::size_t start = line.text.find_first_not_of(" \t");
  const std::string_view body = line.text.substr(start);
  if (body.substr(0, key.size()) != key || body.size() <= key.size() || body[key.size()] != ':') {
    throw ParseError("expected '" + std::string(key) + ":' header", line.number, start + 1);
  }
  return {body.substr(key.size() + 1), start + key.size() + 2};
}

std::size_t parse_number(std::string_view text, std::size_t line, std::size_t column) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("expected a positive integer, got '" + std::string(text) + "'", line, column);
  }
  return value;
}

}  // namespace

CuboidConfiguration CuboidConfiguration::parse_grid(std::string_view text) {
  std::vector<Line> lines;
  for (const Line& l : split_lines(text)) {
    if (!trim(l.text).empty()) lines.push_back(l);
  }
  if (lines.empty()) throw ParseError("empty grid file");

  // dims: n1 x n2 ...
  const auto [dims_text, dims_col] = header_value(lines[0], "dims");
  Dims dims;
  {
    std::size_t pos = 0;
    while (pos <= dims_text.size()) {
      std::size_t next = dims_text.find('x', pos);
      if (next == std::string_view::npos) next = dims_text.size();
      const std::string_view raw = dims_text.substr(pos, next - pos);
      const std::size_t lead = raw.find_first_not_of(" \t");
      const std::string_view field = trim(raw);
      const std::size_t column = dims_col + pos + (lead == std::string_view::npos ? 0 : lead);
      if (field.empty()) throw ParseError("missing dimension", lines[0].number, column);
      const std::size_t side = parse_number(field, lines[0].number, column);
      if (side == 0) throw ParseError("dimension must be at least 1", lines[0].number, column);
      dims.push_back(side);
      pos = next + 1;
    }
  }

  if (lines.size() < 2) throw ParseError("missing 'alphabet:' header", lines[0].number + 1);
  const auto [alpha_text, alpha_col] = header_value(lines[1], "alphabet");
  const std::string_view alpha_field = trim(alpha_text);
  const std::size_t alpha_lead = alpha_text.find_first_not_of(" \t");
  const std::size_t k =
      parse_number(alpha_field, lines[1].number, alpha_col + (alpha_lead == std::string_view::npos ? 0 : alpha_lead));
  if (k < kMinAlphabetSize || k > kMaxAlphabetSize) {
    throw ParseError("alphabet size must be in [2, 32]", lines[1].number, alpha_col);
  }
  const int alphabet_size = static_cast<int>(k);

  const std::size_t total = cell_count(dims);
  const std::size_t row_len = dims[0];
  const std::size_t rows = total / row_len;
  if (lines.size() - 2 != rows) {
    const std::size_t at = lines.size() - 2 < rows ? lines.back().number + 1
                                                   : lines[2 + rows].number;
    throw ParseError("expected " + std::to_string(rows) + " rows of cells, found " +
                         std::to_string(lines.size() - 2),
                     at);
  }

  std::vector<Symbol> cells;
  cells.reserve(total);
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& line = lines[2 + r];
    std::size_t in_row = 0;
    for (std::size_t c = 0; c < line.text.size(); ++c) {
      const char ch = line.text[c];
      if (ch == ' ' || ch == '\t') continue;
      const int v = glyph_value(ch);
      if (v < 0) throw ParseError(std::string("unexpected character '") + ch + "'", line.number, c + 1);
      if (v >= alphabet_size) {
        throw ParseError(std::string("symbol '") + ch + "' outside alphabet of size " +
                             std::to_string(alphabet_size),
                         line.number, c + 1);
      }
      if (++in_row > row_len) {
        throw ParseError("row longer than " + std::to_string(row_len) + " cells", line.number, c + 1);
      }
      cells.push_back(Symbol::base(v));
    }
    if (in_row < row_len) {
      throw ParseError("row has " + std::to_string(in_row) + " cells, expected " +
                           std::to_string(row_len),
                       line.number, line.text.size() + 1);
    }
  }
  return CuboidConfiguration(std::move(dims), std::move(cells), alphabet_size);
}

std::string CuboidConfiguration::to_grid_text() const {
  std::string out = "dims: ";
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (j != 0) out += " x ";
    out += std::to_string(dims_[j]);
  }
  out += "\nalphabet: " + std::to_string(alphabet_size_) + "\n";
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!cells_[i].is_base()) throw std::logic_error("grid files hold base symbols only");
    out += symbol_glyph(cells_[i].value());
    if ((i + 1) % dims_[0] == 0) out += '\n';
  }
  return out;
}

std::vector<Coord> scan_order(const Dims& dims) {
  const std::size_t total = cell_count(dims);
  std::vector<Coord> order;
  order.reserve(total);
  Coord c(dims.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    order.push_back(c);
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (++c[j] < dims[j]) break;
      c[j] = 0;
    }
  }
  return order;
}

std::vector<Coord> neighbors(const Coord& coord, const Dims& dims) {
  if (coord.size() != dims.size()) throw std::invalid_argument("coordinate has wrong dimension");
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (coord[j] >= dims[j]) throw std::out_of_range("coordinate outside cuboid");
  }
  std::vector<Coord> out;
  out.reserve(dims.size() + 1);
  Coord c = coord;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    c[j] = (c[j] + dims[j] - 1) % dims[j];
    out.push_back(c);
  }
  out.push_back(coord);
  return out;
}

std::vector<std::size_t> neighbor_table(const Dims& dims) {
  const std::size_t total = cell_count(dims);
  const std::size_t d = dims.size();
  std::vector<std::size_t> strides(d, 1);
  for (std::size_t j = 1; j < d; ++j) strides[j] = strides[j - 1] * dims[j - 1];

  std::vector<std::size_t> table;
  table.reserve(total * d);
  Coord c(d, 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t flat = i;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t wrapped = (c[j] + dims[j] - 1) % dims[j];
      flat = flat - c[j] * strides[j] + wrapped * strides[j];
      table.push_back(flat);
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (++c[j] < dims[j]) break;
      c[j] = 0;
    }
  }
  return table;
}

namespace {

// Largest memory under inclusion among `candidates`. With require_chain every
// pair must be comparable; otherwise only a maximum must exist. Ties on the
// maximal memory resolve to the earliest candidate.
template <class Candidates>
MemorySelection inclusion_maximum(const Candidates& candidates, std::size_t count,
                                  bool require_chain) noexcept {
  if (count == 0) return {};
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (candidates[i].memory().size() > candidates[best].memory().size()) best = i;
  }
  const SymbolSet top = candidates[best].memory();
  for (std::size_t i = 0; i < count; ++i) {
    if (!candidates[i].memory().is_subset_of(top)) return {std::nullopt, RuleFault::IncomparableMemories};
  }
  if (require_chain) {
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const SymbolSet a = candidates[i].memory();
        const SymbolSet b = candidates[j].memory();
        if (!a.is_subset_of(b) && !b.is_subset_of(a)) {
          return {std::nullopt, RuleFault::IncomparableMemories};
        }
      }
    }
  }
  return {ActiveMemory{candidates[best].counter(), top}, RuleFault::None};
}

// Small fixed buffer; neighbourhoods beyond this fall back to a vector.
class CandidateList {
 public:
  void push(Symbol s) {
    if (size_ < kInline) {
      inline_[size_] = s;
    } else {
      if (overflow_.empty()) overflow_.assign(inline_, inline_ + kInline);
      overflow_.push_back(s);
    }
    ++size_;
  }
  std::size_t size() const noexcept { return size_; }
  Symbol operator[](std::size_t i) const noexcept {
    return size_ <= kInline ? inline_[i] : overflow_[i];
  }

 private:
  static constexpr std::size_t kInline = 8;
  Symbol inline_[kInline];
  std::vector<Symbol> overflow_;
  std::size_t size_ = 0;
};

}  // namespace

MemorySelection select_memory(Symbol self, std::span<const Symbol> neighbors,
                              SelectionMode mode) noexcept {
  CandidateList candidates;
  const bool filter = mode == SelectionMode::CounterFiltered && self.is_triple();
  for (const Symbol& n : neighbors) {
    if (!n.is_triple()) continue;
    if (filter && n.counter() == self.counter()) continue;
    candidates.push(n);
  }
  if (mode == SelectionMode::CounterFiltered && self.is_base()) {
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].counter() != candidates[0].counter()) {
        return {std::nullopt, RuleFault::MixedCounters};
      }
    }
  }
  return inclusion_maximum(candidates, candidates.size(),
                           mode == SelectionMode::CounterFiltered);
}

std::optional<ActiveMemory> select_active_memory(Symbol self, std::span<const Symbol> neighbors,
                                                 SelectionMode mode) {
  const MemorySelection sel = select_memory(self, neighbors, mode);
  if (sel.fault != RuleFault::None) throw RuleError(sel.fault);
  return sel.active;
}

TransitionD evaluate_local_d(Symbol self, std::span<const Symbol> neighbors,
                             SelectionMode mode) noexcept {
  bool all_base = self.is_base();
  bool any_base = false;
  bool uniform_counter = self.is_triple();
  for (const Symbol& n : neighbors) {
    if (n.is_base()) {
      any_base = true;
      uniform_counter = false;
    } else {
      all_base = false;
      if (uniform_counter && n.counter() != self.counter()) uniform_counter = false;
    }
  }

  if (all_base) {
    for (const Symbol& n : neighbors) {
      if (n != self) {
        return {RuleCase::Kickstart, LocalResult::of(Symbol::triple(
                                         Counter::Odd, Tape::removed(), SymbolSet::single(self.value())))};
      }
    }
    return {RuleCase::FixedPoint, LocalResult::of(self)};
  }

  if (self.is_triple() && any_base) {
    int value = -1;
    for (const Symbol& n : neighbors) {
      if (!n.is_base()) continue;
      if (value >= 0 && n.value() != value) {
        return {RuleCase::Convergence, LocalResult::of(self), RuleFault::InconsistentConvergence};
      }
      value = n.value();
    }
    return {RuleCase::Convergence, LocalResult::of(Symbol::base(value))};
  }

  if (uniform_counter) {
    // Every neighbour shares the cell's counter: the cycle is complete and
    // the largest neighbouring memory is the active one.
    const MemorySelection sel =
        inclusion_maximum(neighbors, neighbors.size(), mode == SelectionMode::CounterFiltered);
    if (sel.fault != RuleFault::None) return {RuleCase::SwapReset, LocalResult::of(self), sel.fault};
    const Transition t = swap(HeadState{sel.active->counter, sel.active->memory});
    return {t.rule_case, t.result};
  }

  const MemorySelection sel = select_memory(self, neighbors, mode);
  if (sel.fault != RuleFault::None) return {RuleCase::PropKeep, LocalResult::of(self), sel.fault};
  if (!sel.active) return {RuleCase::Unreachable, LocalResult::of(self), RuleFault::NoActiveMemory};
  const Transition t = propagate(HeadState{sel.active->counter, sel.active->memory}, self);
  return {t.rule_case, t.result};
}

LocalResult apply_local_d(Symbol self, std::span<const Symbol> neighbors, int alphabet_size,
                          SelectionMode mode) {
  check_alphabet_size(alphabet_size);
  if (!is_valid(self, alphabet_size)) {
    throw std::invalid_argument("invalid cell symbol " + to_string(self));
  }
  for (const Symbol& n : neighbors) {
    if (!is_valid(n, alphabet_size)) {
      throw std::invalid_argument("invalid neighbour symbol " + to_string(n));
    }
  }
  const TransitionD t = evaluate_local_d(self, neighbors, mode);
  if (t.fault != RuleFault::None) throw RuleError(t.fault);
  return t.result;
}

RunDResult run_d(const CuboidConfiguration& initial, const RunDOptions& options) {
  if (!initial.all_base()) {
    throw std::invalid_argument("initial configuration must contain base symbols only");
  }
  if (options.max_sweeps && *options.max_sweeps < 1) {
    throw std::invalid_argument("max_sweeps must be at least 1");
  }
  const std::size_t total = initial.size();
  const std::size_t d = initial.dimension();
  const std::uint64_t budget = options.max_sweeps.value_or(default_max_sweeps_d(total));
  const std::vector<std::size_t> table = neighbor_table(initial.dims());

  std::vector<Symbol> cells(initial.cells().begin(), initial.cells().end());
  std::vector<Symbol> hood(d);

  RunDResult result{RunOutcome{}, {}, std::nullopt, initial};
  RunOutcome& outcome = result.outcome;
  if (options.capture_trace) {
    result.trace.emplace();
    result.trace->dims = initial.dims();
    result.trace->alphabet_size = initial.alphabet_size();
    result.trace->snapshots.push_back(cells);
  }

  bool halted = false;
  for (std::uint64_t k = 1; k <= budget; ++k) {
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = 0; j < d; ++j) hood[j] = cells[table[i * d + j]];
      const Symbol before = cells[i];
      const TransitionD t = evaluate_local_d(before, hood, options.mode);

      if (t.fault != RuleFault::None) {
        if (options.capture_trace) {
          result.trace->records.push_back({k, i, RuleCase::Unreachable, before, before, std::nullopt});
        }
        outcome.kind = RunOutcome::Kind::RuleError;
        outcome.fault = t.fault;
        outcome.sweeps_used = k;
        halted = true;
        break;
      }

      if (!t.result.is_tie()) cells[i] = t.result.symbol();
      const std::optional<EventKind> ev = event_for(t.rule_case);
      if (options.capture_trace) {
        result.trace->records.push_back({k, i, t.rule_case, before, cells[i], ev});
      }
      if (ev) {
        std::optional<Symbol> detail;
        if (*ev == EventKind::SwapConverge) detail = cells[i];
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
    }
    if (options.capture_trace) result.trace->snapshots.push_back(cells);
    if (halted) break;

    const Symbol first = cells[0];
    bool uniform = first.is_base();
    for (std::size_t i = 1; uniform && i < total; ++i) uniform = cells[i] == first;
    if (uniform) {
      outcome.kind = RunOutcome::Kind::Classified;
      outcome.symbol = first.value();
      outcome.sweeps_used = k;
      halted = true;
      break;
    }
  }
  if (!halted) {
    outcome.kind = RunOutcome::Kind::BudgetExceeded;
    outcome.sweeps_used = budget;
  }
  if (result.trace) result.trace->outcome = outcome;
  result.final_state = CuboidConfiguration(initial.dims(), std::move(cells), initial.alphabet_size());
  return result;
}

}  // namespace dct
