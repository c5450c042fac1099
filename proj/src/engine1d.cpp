#include "dct/engine1d.hpp"

#include "dct/error.hpp"

namespace dct {

RingConfiguration::RingConfiguration(std::vector<Symbol> cells, int alphabet_size)
    : cells_(std::move(cells)), alphabet_size_(alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (cells_.empty()) throw std::invalid_argument("configuration must have at least one cell");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!is_valid(cells_[i], alphabet_size)) {
      throw std::invalid_argument("cell " + std::to_string(i) + " holds invalid symbol " +
                                  dct::to_string(cells_[i]));
    }
  }
}

RingConfiguration RingConfiguration::parse(std::string_view digits, int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (digits.empty()) throw ParseError("empty configuration");
  std::vector<Symbol> cells;
  cells.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const int v = glyph_value(digits[i]);
    if (v < 0) {
      throw ParseError(std::string("non-digit character '") + digits[i] + "'", 1, i + 1);
    }
    if (v >= alphabet_size) {
      throw ParseError(std::string("digit '") + digits[i] + "' outside alphabet of size " +
                           std::to_string(alphabet_size),
                       1, i + 1);
    }
    cells.push_back(Symbol::base(v));
  }
  return RingConfiguration(std::move(cells), alphabet_size);
}

RingConfiguration RingConfiguration::from_index(std::uint64_t index, std::size_t n,
                                                int alphabet_size) {
  check_alphabet_size(alphabet_size);
  std::vector<Symbol> cells(n);
  const auto k = static_cast<std::uint64_t>(alphabet_size);
  for (std::size_t i = 0; i < n; ++i) {
    cells[i] = Symbol::base(static_cast<int>(index % k));
    index /= k;
  }
  return RingConfiguration(std::move(cells), alphabet_size);
}

bool RingConfiguration::all_base() const noexcept {
  for (const Symbol& s : cells_) {
    if (!s.is_base()) return false;
  }
  return true;
}

std::optional<int> RingConfiguration::uniform_value() const noexcept {
  const Symbol first = cells_.front();
  if (!first.is_base()) return std::nullopt;
  for (const Symbol& s : cells_) {
    if (s != first) return std::nullopt;
  }
  return first.value();
}

std::string RingConfiguration::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i != 0) out += ' ';
    out += dct::to_string(cells_[i]);
  }
  return out;
}

StepResult step_cell(RingConfiguration& config, std::size_t i, std::uint64_t sweep) {
  if (i >= config.size()) throw std::out_of_range("cell index " + std::to_string(i));
  const Transition t = evaluate_local(config[config.left_of(i)], config[i]);
  if (!t.result.is_tie()) config.set(i, t.result.symbol());

  StepResult out{t.rule_case, std::nullopt};
  if (const auto ev = event_for(t.rule_case)) {
    std::optional<Symbol> detail;
    if (*ev == EventKind::SwapConverge) detail = config[i];
    out.event = PhaseEvent{*ev, sweep, i, detail};
  }
  return out;
}

SweepResult sweep(RingConfiguration& config, std::uint64_t sweep_index) {
  SweepResult out;
  for (std::size_t i = 0; i < config.size(); ++i) {
    StepResult step = step_cell(config, i, sweep_index);
    if (step.event) {
      if (step.event->kind == EventKind::Tie) out.tie = true;
      out.events.push_back(*step.event);
    }
  }
  return out;
}

RingConfiguration partial(RingConfiguration config, std::uint64_t sweeps, std::size_t cells) {
  if (cells > config.size()) {
    throw std::out_of_range("partial sweep of " + std::to_string(cells) + " cells on a ring of " +
                            std::to_string(config.size()));
  }
  for (std::uint64_t k = 1; k <= sweeps; ++k) sweep(config, k);
  for (std::size_t i = 0; i < cells; ++i) step_cell(config, i, sweeps + 1);
  return config;
}

namespace detail {

void validate_run_input(const RingConfiguration& config, const RunOptions& options) {
  if (!config.all_base()) {
    throw std::invalid_argument("initial configuration must contain base symbols only");
  }
  if (options.max_sweeps && *options.max_sweeps < 1) {
    throw std::invalid_argument("max_sweeps must be at least 1");
  }
}

}  // namespace detail

RunResult run(const RingConfiguration& initial, const RunOptions& options) {
  NullObserver observer;
  return run_observed(initial, options, observer);
}

}  // namespace dct
