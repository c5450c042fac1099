#include "dct/verifier.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dct/engine1d.hpp"
#include "dct/oracle.hpp"
#include "parallel.hpp"

namespace dct {

using nlohmann::ordered_json;

std::vector<Shard> make_shards(std::uint64_t total, std::uint64_t shard_size) {
  if (shard_size == 0) throw std::invalid_argument("shard size must be positive");
  std::vector<Shard> shards;
  for (std::uint64_t lo = 0; lo < total; lo += std::min(shard_size, total - lo)) {
    shards.push_back({lo, lo + std::min(shard_size, total - lo)});
  }
  return shards;
}

namespace {

// k^n, or nullopt past 2^63.
std::optional<std::uint64_t> checked_power(std::uint64_t k, std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (out > (std::uint64_t{1} << 63) / k) return std::nullopt;
    out *= k;
  }
  return out;
}

template <class Item, class Key>
void insert_bounded(std::vector<Item>& items, Item item, std::size_t limit, Key key) {
  if (limit == 0) return;
  if (items.size() >= limit && !(key(item) < key(items.back()))) return;
  const auto pos = std::upper_bound(items.begin(), items.end(), item,
                                    [&](const Item& a, const Item& b) { return key(a) < key(b); });
  items.insert(pos, std::move(item));
  if (items.size() > limit) items.pop_back();
}

auto failure_key(const Counterexample& c) { return std::pair(c.size_key, c.index); }

std::string ring_text(std::span<const Symbol> cells) {
  std::string out;
  out.reserve(cells.size());
  for (const Symbol& s : cells) out += symbol_glyph(s.value());
  return out;
}

// Rows of the first coordinate joined by '/'.
std::string grid_text(const CuboidConfiguration& grid) {
  std::string out;
  const std::size_t row = grid.dims()[0];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i != 0 && i % row == 0) out += '/';
    out += symbol_glyph(grid.cells()[i].value());
  }
  return out;
}

std::string verdict_text(const DensityVerdict& v) {
  return v.is_tie() ? std::string("TIE") : std::string("CLASSIFIED ") + symbol_glyph(v.majority);
}

template <class InputText>
void record(VerificationReport& rep, std::uint64_t size_key, std::uint64_t index,
            const DensityVerdict& verdict, const RunOutcome& outcome, InputText input_text) {
  ++rep.checked;
  SizeStats& stats = rep.by_size[size_key];
  ++stats.checked;
  rep.max_sweeps_observed = std::max(rep.max_sweeps_observed, outcome.sweeps_used);
  stats.max_sweeps = std::max(stats.max_sweeps, outcome.sweeps_used);
  if (outcome.kind == RunOutcome::Kind::RuleError) ++rep.rule_faults[std::string(to_string(outcome.fault))];

  if (verdict.is_tie()) {
    ++rep.ties_seen;
    ++stats.ties;
    ++rep.tie_outcomes[outcome_label(outcome)];
    return;
  }
  if (outcome.kind == RunOutcome::Kind::Classified && outcome.symbol == verdict.majority) {
    ++rep.classified_correct;
    rep.max_phase_count_observed = std::max(rep.max_phase_count_observed, outcome.propagation_phases);
    stats.max_phases = std::max(stats.max_phases, outcome.propagation_phases);
    return;
  }
  if (outcome.kind == RunOutcome::Kind::BudgetExceeded) {
    ++rep.budget_exceeded;
  } else {
    ++rep.classified_wrong;
  }
  insert_bounded(rep.failures,
                 Counterexample{size_key, index, input_text(), verdict_text(verdict),
                                outcome_label(outcome)},
                 rep.failure_limit, failure_key);
}

template <class Map>
void add_counts(Map& into, const Map& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

void write_counts(std::ostringstream& out, const std::map<std::string, std::uint64_t>& counts) {
  if (counts.empty()) {
    out << " (none)";
    return;
  }
  for (const auto& [k, v] : counts) out << ' ' << k << '=' << v;
}

ordered_json counts_json(const std::map<std::string, std::uint64_t>& counts) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : counts) j[k] = v;
  return j;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(i),
                    static_cast<std::uint32_t>(i >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

std::vector<Symbol> random_cells(std::size_t n, int alphabet_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, alphabet_size - 1);
  std::vector<Symbol> cells(n);
  for (Symbol& s : cells) s = Symbol::base(pick(rng));
  return cells;
}

VerificationReport empty_report(std::string space, int alphabet_size, std::string mode,
                                const VerifyOptions& options) {
  VerificationReport rep;
  rep.space = std::move(space);
  rep.alphabet_size = alphabet_size;
  rep.mode = std::move(mode);
  rep.failure_limit = options.failure_limit;
  return rep;
}

}  // namespace

void VerificationReport::merge(const VerificationReport& other) {
  checked += other.checked;
  classified_correct += other.classified_correct;
  classified_wrong += other.classified_wrong;
  ties_seen += other.ties_seen;
  budget_exceeded += other.budget_exceeded;
  add_counts(tie_outcomes, other.tie_outcomes);
  add_counts(rule_faults, other.rule_faults);
  max_sweeps_observed = std::max(max_sweeps_observed, other.max_sweeps_observed);
  max_phase_count_observed = std::max(max_phase_count_observed, other.max_phase_count_observed);
  for (const auto& [n, s] : other.by_size) {
    SizeStats& mine = by_size[n];
    mine.checked += s.checked;
    mine.ties += s.ties;
    mine.max_sweeps = std::max(mine.max_sweeps, s.max_sweeps);
    mine.max_phases = std::max(mine.max_phases, s.max_phases);
  }
  for (const Counterexample& c : other.failures) insert_bounded(failures, c, failure_limit, failure_key);
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "space: " << space << '\n';
  out << "alphabet: " << alphabet_size << '\n';
  if (!mode.empty()) out << "mode: " << mode << '\n';
  if (seed) out << "seed: " << *seed << '\n';
  out << "checked: " << checked << '\n'
      << "classified_correct: " << classified_correct << '\n'
      << "classified_wrong: " << classified_wrong << '\n'
      << "ties_seen: " << ties_seen << '\n'
      << "budget_exceeded: " << budget_exceeded << '\n'
      << "max_sweeps_observed: " << max_sweeps_observed << '\n'
      << "max_phase_count_observed: " << max_phase_count_observed << '\n';
  out << "tie_outcomes:";
  write_counts(out, tie_outcomes);
  out << "\nrule_faults:";
  write_counts(out, rule_faults);
  out << '\n';
  if (by_size.size() > 1 || (by_size.size() == 1 && by_size.begin()->first != 0)) {
    out << "per_size:\n";
    for (const auto& [n, s] : by_size) {
      out << "  n=" << n << " checked=" << s.checked << " ties=" << s.ties
          << " max_sweeps=" << s.max_sweeps << " max_phases=" << s.max_phases << '\n';
    }
  }
  out << "failures:";
  if (failures.empty()) out << " (none)";
  out << '\n';
  for (const Counterexample& c : failures) {
    out << "  " << c.input << " expected " << c.expected << " got " << c.got << '\n';
  }
  out << "result: " << (clean() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

ordered_json VerificationReport::to_json() const {
  ordered_json j;
  j["space"] = space;
  j["alphabet"] = alphabet_size;
  j["mode"] = mode.empty() ? ordered_json(nullptr) : ordered_json(mode);
  j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  j["checked"] = checked;
  j["classified_correct"] = classified_correct;
  j["classified_wrong"] = classified_wrong;
  j["ties_seen"] = ties_seen;
  j["budget_exceeded"] = budget_exceeded;
  j["max_sweeps_observed"] = max_sweeps_observed;
  j["max_phase_count_observed"] = max_phase_count_observed;
  j["tie_outcomes"] = counts_json(tie_outcomes);
  j["rule_faults"] = counts_json(rule_faults);
  ordered_json sizes = ordered_json::array();
  for (const auto& [n, s] : by_size) {
    sizes.push_back({{"n", n}, {"checked", s.checked}, {"ties", s.ties},
                     {"max_sweeps", s.max_sweeps}, {"max_phases", s.max_phases}});
  }
  j["per_size"] = sizes;
  ordered_json fails = ordered_json::array();
  for (const Counterexample& c : failures) {
    fails.push_back({{"input", c.input}, {"expected", c.expected}, {"got", c.got}});
  }
  j["failures"] = fails;
  j["clean"] = clean();
  return j;
}

VerificationReport verify_shard(std::size_t n, Shard shard, const VerifyOptions& options,
                                int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (n == 0) throw std::invalid_argument("ring length must be at least 1");
  const auto total = checked_power(static_cast<std::uint64_t>(alphabet_size), n);
  if (!total || shard.lo > shard.hi || shard.hi > *total) {
    throw std::out_of_range("shard outside the configuration space");
  }
  VerificationReport rep = empty_report("", alphabet_size, "", options);
  const RunOptions run_options{options.max_sweeps, false};
  for (std::uint64_t idx = shard.lo; idx < shard.hi; ++idx) {
    const RingConfiguration config = RingConfiguration::from_index(idx, n, alphabet_size);
    const DensityVerdict verdict = majority(config.cells(), alphabet_size);
    const RunOutcome outcome = run(config, run_options).outcome;
    record(rep, n, idx, verdict, outcome, [&] { return ring_text(config.cells()); });
  }
  return rep;
}

VerificationReport verify_exhaustive(std::size_t n_min, std::size_t n_max, unsigned workers,
                                     const VerifyOptions& options, int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (n_min == 0 || n_min > n_max) throw std::invalid_argument("ring lengths must satisfy 1 <= n_min <= n_max");
  const auto cap = checked_power(2, options.max_exhaustive_n);
  const auto largest = checked_power(static_cast<std::uint64_t>(alphabet_size), n_max);
  if (!largest || !cap || *largest > *cap) {
    throw std::invalid_argument("exhaustive space for n=" + std::to_string(n_max) +
                                " exceeds the cap of 2^" + std::to_string(options.max_exhaustive_n) +
                                " configurations; use sampling");
  }

  struct Task {
    std::size_t n;
    Shard shard;
  };
  std::vector<Task> tasks;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const std::uint64_t total = *checked_power(static_cast<std::uint64_t>(alphabet_size), n);
    for (const Shard& s : make_shards(total, options.shard_size)) tasks.push_back({n, s});
  }

  std::string space = "ring n=" + std::to_string(n_min);
  if (n_max != n_min) space += ".." + std::to_string(n_max);
  const VerificationReport identity = empty_report(space, alphabet_size, "", options);
  return detail::parallel_reduce(tasks.size(), workers, identity,
                                 [&](std::uint64_t t, VerificationReport& acc) {
                                   acc.merge(verify_shard(tasks[t].n, tasks[t].shard, options,
                                                          alphabet_size));
                                 });
}

VerificationReport verify_sampled(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                                  unsigned workers, const VerifyOptions& options,
                                  int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (n == 0) throw std::invalid_argument("ring length must be at least 1");
  const std::vector<Shard> shards = make_shards(samples, std::max<std::uint64_t>(1, options.shard_size / std::max<std::size_t>(1, n / 16)));
  VerificationReport identity = empty_report(
      "ring n=" + std::to_string(n) + " (" + std::to_string(samples) + " samples)", alphabet_size,
      "", options);
  identity.seed = seed;
  const RunOptions run_options{options.max_sweeps, false};
  return detail::parallel_reduce(
      shards.size(), workers, identity, [&](std::uint64_t t, VerificationReport& acc) {
        for (std::uint64_t i = shards[t].lo; i < shards[t].hi; ++i) {
          const RingConfiguration config(random_cells(n, alphabet_size, sample_seed(seed, n, i)),
                                         alphabet_size);
          const DensityVerdict verdict = majority(config.cells(), alphabet_size);
          const RunOutcome outcome = run(config, run_options).outcome;
          record(acc, n, i, verdict, outcome, [&] { return ring_text(config.cells()); });
        }
      });
}

namespace {

std::string dims_text(const Dims& dims) {
  std::string out;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (j != 0) out += 'x';
    out += std::to_string(dims[j]);
  }
  return out;
}

std::uint64_t grid_space_size(const Dims& dims, int alphabet_size, const VerifyOptions& options) {
  check_alphabet_size(alphabet_size);
  const auto total = checked_power(static_cast<std::uint64_t>(alphabet_size), cell_count(dims));
  if (!total || *total > options.max_exhaustive_grids) {
    throw std::invalid_argument("grid space " + dims_text(dims) + " over " +
                                std::to_string(alphabet_size) + " symbols exceeds the cap of " +
                                std::to_string(options.max_exhaustive_grids) + " grids");
  }
  return *total;
}

}  // namespace

VerificationReport verify_exhaustive_d(const Dims& dims, int alphabet_size, SelectionMode mode,
                                       unsigned workers, const VerifyOptions& options) {
  const std::uint64_t total = grid_space_size(dims, alphabet_size, options);
  const std::vector<Shard> shards = make_shards(total, options.shard_size);
  const VerificationReport identity =
      empty_report("cuboid " + dims_text(dims), alphabet_size, std::string(to_string(mode)), options);
  const RunDOptions run_options{options.max_sweeps, mode, false};
  return detail::parallel_reduce(
      shards.size(), workers, identity, [&](std::uint64_t t, VerificationReport& acc) {
        for (std::uint64_t idx = shards[t].lo; idx < shards[t].hi; ++idx) {
          const CuboidConfiguration grid = CuboidConfiguration::from_index(idx, dims, alphabet_size);
          const DensityVerdict verdict = majority(grid.cells(), alphabet_size);
          const RunOutcome outcome = run_d(grid, run_options).outcome;
          record(acc, 0, idx, verdict, outcome, [&] { return grid_text(grid); });
        }
      });
}

void ModeComparison::merge(const ModeComparison& other) {
  checked += other.checked;
  discrepancies += other.discrepancies;
  add_counts(paper_literal_faults, other.paper_literal_faults);
  for (const ModeDiscrepancy& d : other.examples) {
    insert_bounded(examples, d, example_limit, [](const ModeDiscrepancy& x) { return x.index; });
  }
  counter_filtered.merge(other.counter_filtered);
  paper_literal.merge(other.paper_literal);
}

std::string ModeComparison::to_text() const {
  std::ostringstream out;
  out << "mode comparison: " << space << ", alphabet " << alphabet_size << '\n'
      << "checked: " << checked << '\n'
      << "discrepancies: " << discrepancies << '\n'
      << "paper_literal_faults:";
  write_counts(out, paper_literal_faults);
  out << "\ncounter_filtered: correct=" << counter_filtered.classified_correct
      << " wrong=" << counter_filtered.classified_wrong << " ties=" << counter_filtered.ties_seen
      << " budget_exceeded=" << counter_filtered.budget_exceeded << '\n'
      << "paper_literal: correct=" << paper_literal.classified_correct
      << " wrong=" << paper_literal.classified_wrong << " ties=" << paper_literal.ties_seen
      << " budget_exceeded=" << paper_literal.budget_exceeded << '\n';
  if (!examples.empty()) out << "examples (input: counter-filtered | paper-literal):\n";
  for (const ModeDiscrepancy& d : examples) {
    out << "  " << d.input << ": " << d.counter_filtered << " | " << d.paper_literal << '\n';
  }
  return out.str();
}

ordered_json ModeComparison::to_json() const {
  ordered_json j;
  j["space"] = space;
  j["alphabet"] = alphabet_size;
  j["checked"] = checked;
  j["discrepancies"] = discrepancies;
  j["paper_literal_faults"] = counts_json(paper_literal_faults);
  ordered_json ex = ordered_json::array();
  for (const ModeDiscrepancy& d : examples) {
    ex.push_back({{"input", d.input},
                  {"counter_filtered", d.counter_filtered},
                  {"paper_literal", d.paper_literal}});
  }
  j["examples"] = ex;
  j["counter_filtered"] = counter_filtered.to_json();
  j["paper_literal"] = paper_literal.to_json();
  return j;
}

ModeComparison compare_modes(const Dims& dims, int alphabet_size, unsigned workers,
                             const VerifyOptions& options) {
  const std::uint64_t total = grid_space_size(dims, alphabet_size, options);
  const std::vector<Shard> shards = make_shards(total, options.shard_size);

  ModeComparison identity;
  identity.space = "cuboid " + dims_text(dims);
  identity.alphabet_size = alphabet_size;
  identity.example_limit = options.failure_limit;
  identity.counter_filtered =
      empty_report(identity.space, alphabet_size, "counter-filtered", options);
  identity.paper_literal = empty_report(identity.space, alphabet_size, "paper-literal", options);

  return detail::parallel_reduce(
      shards.size(), workers, identity, [&](std::uint64_t t, ModeComparison& acc) {
        for (std::uint64_t idx = shards[t].lo; idx < shards[t].hi; ++idx) {
          const CuboidConfiguration grid = CuboidConfiguration::from_index(idx, dims, alphabet_size);
          const DensityVerdict verdict = majority(grid.cells(), alphabet_size);
          const RunOutcome cf =
              run_d(grid, {options.max_sweeps, SelectionMode::CounterFiltered, false}).outcome;
          const RunOutcome pl =
              run_d(grid, {options.max_sweeps, SelectionMode::PaperLiteral, false}).outcome;
          const auto text = [&] { return grid_text(grid); };
          record(acc.counter_filtered, 0, idx, verdict, cf, text);
          record(acc.paper_literal, 0, idx, verdict, pl, text);
          ++acc.checked;
          if (pl.kind == RunOutcome::Kind::RuleError) {
            ++acc.paper_literal_faults[std::string(to_string(pl.fault))];
          }
          const std::string cf_label = outcome_label(cf);
          const std::string pl_label = outcome_label(pl);
          if (cf_label != pl_label) {
            ++acc.discrepancies;
            insert_bounded(acc.examples, ModeDiscrepancy{idx, text(), cf_label, pl_label},
                           acc.example_limit, [](const ModeDiscrepancy& x) { return x.index; });
          }
        }
      });
}

// ---------------------------------------------------------------------------
// Property suite

namespace {

int tape_value(Symbol s) noexcept {
  if (s.is_base()) return s.value();
  return s.tape().is_removed() ? -1 : s.tape().value();
}

// Tracks, after every update, the per-symbol count of the configuration
// (base cells plus non-X tapes) and the active memory (memory of the cell
// just updated), and checks it against the phase bookkeeping.
class PhaseObserver {
 public:
  PhaseObserver(std::span<const Symbol> initial, int alphabet_size)
      : alphabet_size_(alphabet_size),
        initial_(static_cast<std::size_t>(alphabet_size), 0),
        counts_(static_cast<std::size_t>(alphabet_size), 0),
        baseline_(static_cast<std::size_t>(alphabet_size), 0) {
    for (const Symbol& s : initial) ++initial_[static_cast<std::size_t>(s.value())];
    counts_ = initial_;
  }

  void on_update(std::uint64_t sweep, std::size_t cell, RuleCase rule_case, Symbol before,
                 Symbol after) {
    if (const int b = tape_value(before); b >= 0) --counts_[static_cast<std::size_t>(b)];
    if (const int a = tape_value(after); a >= 0) ++counts_[static_cast<std::size_t>(a)];

    if (rule_case == RuleCase::SwapConverge || rule_case == RuleCase::SwapTie) {
      done_ = true;
      return;
    }
    if (done_) return;

    const bool phase_start = rule_case == RuleCase::Kickstart || rule_case == RuleCase::SwapReset;
    if (phase_start) ++phases_;
    if (phases_ == 0) return;

    const std::uint32_t memory = after.is_triple() ? after.memory().mask() : 0;
    ++updates_checked_;
    // Between phase starts only the symbols this update touched can change.
    std::uint32_t touched = ~std::uint32_t{0};
    if (!phase_start) {
      touched = (memory ^ memory_) | tape_bit(before) | tape_bit(after);
    }
    memory_ = memory;
    for (int b = 0; b < alphabet_size_; ++b) {
      if (!((touched >> b) & 1u)) continue;
      const auto ub = static_cast<std::size_t>(b);
      const std::int64_t held = counts_[ub] + ((memory >> b) & 1u);
      if (phase_start) {
        baseline_[ub] = held;
      } else if (held != baseline_[ub] && !conservation_failure_) {
        conservation_failure_ = describe(sweep, cell, b, held, baseline_[ub]);
      }
      const std::int64_t expected =
          std::max<std::int64_t>(initial_[ub] - static_cast<std::int64_t>(phases_ - 1), 0);
      if (held != expected && !counts_failure_) {
        counts_failure_ = describe(sweep, cell, b, held, expected);
      }
    }
  }

  std::uint64_t updates_checked() const noexcept { return updates_checked_; }
  const std::optional<std::string>& conservation_failure() const noexcept { return conservation_failure_; }
  const std::optional<std::string>& counts_failure() const noexcept { return counts_failure_; }

 private:
  static std::uint32_t tape_bit(Symbol s) noexcept {
    const int t = tape_value(s);
    return t < 0 ? 0 : std::uint32_t{1} << t;
  }

  static std::string describe(std::uint64_t sweep, std::size_t cell, int symbol, std::int64_t got,
                              std::int64_t expected) {
    return "after sweep " + std::to_string(sweep) + " cell " + std::to_string(cell) +
           ": symbol " + symbol_glyph(symbol) + " held " + std::to_string(got) + ", expected " +
           std::to_string(expected);
  }

  int alphabet_size_;
  std::vector<std::int64_t> initial_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> baseline_;
  std::uint32_t memory_ = 0;  // active memory
  std::uint64_t phases_ = 0;
  bool done_ = false;
  std::uint64_t updates_checked_ = 0;
  std::optional<std::string> conservation_failure_;
  std::optional<std::string> counts_failure_;
};

void note(PropertyReport& rep, const char* property, bool holds, const RingConfiguration& input,
          const std::string& detail) {
  ++rep.checks[property];
  if (holds) return;
  ++rep.violations[property];
  if (rep.examples.size() < rep.violation_limit) {
    rep.examples.push_back({property, ring_text(input.cells()), detail});
  }
}

PropertyReport empty_property_report(const PropertyOptions& options) {
  PropertyReport rep;
  rep.seed = options.seed;
  rep.violation_limit = options.violation_limit;
  for (const char* p : {kConservation, kPhaseCounts, kPhaseCount, kKickstartCount,
                        kUniformFixedPoint, kCleanClassification}) {
    rep.checks[p] = 0;
    rep.violations[p] = 0;
  }
  return rep;
}

void check_into(PropertyReport& rep, const RingConfiguration& input) {
  const int k = input.alphabet_size();
  const DensityVerdict verdict = majority(input.cells(), k);
  PhaseObserver observer(input.cells(), k);
  const RunResult result = run_observed(input, RunOptions{}, observer);
  ++rep.runs_checked;
  rep.updates_checked += observer.updates_checked();

  note(rep, kConservation, !observer.conservation_failure(), input,
       observer.conservation_failure().value_or(""));
  note(rep, kPhaseCounts, !observer.counts_failure(), input, observer.counts_failure().value_or(""));

  std::uint64_t kickstarts = 0;
  for (const PhaseEvent& e : result.events) kickstarts += e.kind == EventKind::Kickstart ? 1 : 0;
  const bool uniform = input.uniform_value().has_value();
  note(rep, kKickstartCount, kickstarts == (uniform ? 0u : 1u), input,
       std::to_string(kickstarts) + " kickstarts");

  if (uniform) {
    RingConfiguration once = input;
    sweep(once);
    note(rep, kUniformFixedPoint, once == input && result.outcome.propagation_phases == 0 &&
                                      result.outcome.sweeps_used == 1,
         input, summarize(result.outcome));
  }

  if (!verdict.is_tie()) {
    if (!uniform) {
      // Phases = count of the runner-up symbol + 1 (min(|x|_0, |x|_1) + 1 for binary).
      std::vector<std::uint64_t> sorted = verdict.counts;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      const std::uint64_t expected = sorted[1] + 1;
      note(rep, kPhaseCount, result.outcome.propagation_phases == expected, input,
           "phases=" + std::to_string(result.outcome.propagation_phases) + ", expected " +
               std::to_string(expected));
    }
    const auto final_value = result.final_state.uniform_value();
    note(rep, kCleanClassification,
         result.outcome.classified() && result.outcome.symbol == verdict.majority &&
             final_value == verdict.majority,
         input, summarize(result.outcome));
  }
}

}  // namespace

bool PropertyReport::ok() const noexcept {
  for (const auto& [name, count] : violations) {
    if (count != 0) return false;
  }
  return true;
}

void PropertyReport::merge(const PropertyReport& other) {
  runs_checked += other.runs_checked;
  updates_checked += other.updates_checked;
  add_counts(checks, other.checks);
  add_counts(violations, other.violations);
  for (const PropertyViolation& v : other.examples) {
    if (examples.size() >= violation_limit) break;
    examples.push_back(v);
  }
}

std::string PropertyReport::to_text() const {
  std::ostringstream out;
  out << "seed: " << seed << '\n'
      << "runs_checked: " << runs_checked << '\n'
      << "updates_checked: " << updates_checked << '\n';
  for (const auto& [name, count] : checks) {
    const auto it = violations.find(name);
    out << name << ": checked=" << count
        << " violations=" << (it == violations.end() ? 0 : it->second) << '\n';
  }
  for (const PropertyViolation& v : examples) {
    out << "  violation " << v.property << " on " << v.input << ": " << v.detail << '\n';
  }
  out << "result: " << (ok() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

ordered_json PropertyReport::to_json() const {
  ordered_json j;
  j["seed"] = seed;
  j["runs_checked"] = runs_checked;
  j["updates_checked"] = updates_checked;
  j["checks"] = counts_json(checks);
  j["violations"] = counts_json(violations);
  ordered_json ex = ordered_json::array();
  for (const PropertyViolation& v : examples) {
    ex.push_back({{"property", v.property}, {"input", v.input}, {"detail", v.detail}});
  }
  j["examples"] = ex;
  j["ok"] = ok();
  return j;
}

PropertyReport check_input(const RingConfiguration& input) {
  PropertyReport rep = empty_property_report(PropertyOptions{});
  check_into(rep, input);
  return rep;
}

PropertyReport check_properties(const PropertyOptions& options) {
  check_alphabet_size(options.alphabet_size);
  const auto k = static_cast<std::uint64_t>(options.alphabet_size);

  struct Task {
    bool sampled;
    std::size_t n;
    Shard range;
  };
  std::vector<Task> tasks;
  for (std::size_t n = 1; n <= options.n_max_exhaustive; ++n) {
    const auto total = checked_power(k, n);
    if (!total || *total > (std::uint64_t{1} << 32)) {
      throw std::invalid_argument("exhaustive property space too large at n=" + std::to_string(n));
    }
    for (const Shard& s : make_shards(*total, 4096)) tasks.push_back({false, n, s});
  }
  for (std::size_t n : options.sample_sizes) {
    if (n == 0) throw std::invalid_argument("sample sizes must be positive");
    const std::uint64_t chunk = std::max<std::uint64_t>(1, 65536 / (n * n / 64 + 1));
    for (const Shard& s : make_shards(options.samples_per_size, chunk)) tasks.push_back({true, n, s});
  }

  return detail::parallel_reduce(
      tasks.size(), options.workers, empty_property_report(options),
      [&](std::uint64_t t, PropertyReport& acc) {
        const Task& task = tasks[t];
        for (std::uint64_t i = task.range.lo; i < task.range.hi; ++i) {
          if (task.sampled) {
            check_into(acc, RingConfiguration(random_cells(task.n, options.alphabet_size,
                                                           sample_seed(options.seed, task.n, i)),
                                              options.alphabet_size));
          } else {
            check_into(acc, RingConfiguration::from_index(i, task.n, options.alphabet_size));
          }
        }
      });
}

}  // namespace dct
