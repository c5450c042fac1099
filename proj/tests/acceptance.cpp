// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: acceptance [report-dir]   (reports are archived there; default ./reports)

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dct/alphabet.hpp"
#include "dct/engine1d.hpp"
#include "dct/multidim.hpp"
#include "dct/oracle.hpp"
#include "dct/rule1d.hpp"
#include "dct/trace.hpp"
#include "dct/verifier.hpp"

using namespace dct;
namespace fs = std::filesystem;

namespace {

// Pinned thresholds.
constexpr double kFigureSeconds = 0.010;
constexpr double kRings14Seconds = 60.0;
constexpr double kRings20Seconds = 600.0;
constexpr unsigned kRings20Workers = 8;
constexpr double kGridsSeconds = 300.0;
constexpr std::size_t kPropertyExhaustiveN = 12;
constexpr std::uint64_t kPropertySamples = 100000;
constexpr std::uint64_t kPropertySeed = 1;
constexpr std::size_t kReductionN = 10;

int failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << id << ' ' << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

template <class F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << s << 's';
  return out.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const fs::path golden_dir{DCT_GOLDEN_DIR};

void ring_example(const char* id, const char* digits, const char* golden, std::size_t rows,
                  std::uint64_t phases) {
  RunResult result{RunOutcome{}, {}, std::nullopt, RingConfiguration::parse("0")};
  std::string rendered;
  const double t = seconds([&] {
    result = run(RingConfiguration::parse(digits), {std::nullopt, true});
    rendered = render_spacetime(*result.trace);
  });
  const auto last = result.trace->snapshots.back();
  const bool final_zero =
      std::all_of(last.begin(), last.end(), [](Symbol s) { return s == Symbol::base(0); });
  const bool ok = rendered == read_file(golden_dir / golden) &&
                  lines_of(rendered).size() == rows && result.outcome.classified() &&
                  result.outcome.symbol == 0 && result.outcome.propagation_phases == phases &&
                  final_zero && t < kFigureSeconds;
  report(id, ok,
         std::string(digits) + " -> " + summarize(result.outcome) + ", rows=" +
             std::to_string(lines_of(rendered).size()) + ", golden " +
             (rendered == read_file(golden_dir / golden) ? "identical" : "DIFFERS") + ", " +
             fmt_seconds(t) + " (< 10 ms)");
}

void grid_example() {
  const CuboidConfiguration grid =
      CuboidConfiguration::parse_grid(read_file(golden_dir / "grid_3x3_k3.grid"));
  RunDResult result{RunOutcome{}, {}, std::nullopt, grid};
  std::string rendered;
  const double t = seconds([&] {
    result = run_d(grid, {std::nullopt, SelectionMode::CounterFiltered, true});
    rendered = render_panels(*result.trace);
  });
  const std::vector<std::string> got = lines_of(rendered);
  const std::vector<std::string> want = lines_of(read_file(golden_dir / "grid_3x3_k3.txt"));
  // Second panel: header line plus three rows, after the first panel and a blank line.
  const bool panel2 = got.size() >= 9 && want.size() >= 9 &&
                      std::equal(got.begin() + 5, got.begin() + 9, want.begin() + 5);
  const std::string kick = to_string(result.trace->snapshots.at(1).at(grid.flat_index({1, 0})));
  const bool ok = result.outcome.classified() && result.outcome.symbol == 2 && panel2 &&
                  kick == "(o|X|1)" && rendered == read_file(golden_dir / "grid_3x3_k3.txt") &&
                  t < kFigureSeconds;
  report("AC3", ok,
         "3x3 {0,1,2} -> " + summarize(result.outcome) + ", panel 2 " +
             (panel2 ? "matches" : "DIFFERS") + ", cell (1,0) after sweep 1 = " + kick + ", " +
             fmt_seconds(t) + " (< 10 ms)");
}

void exhaustive_rings(const fs::path& reports) {
  VerificationReport r14, r20;
  const double t14 = seconds([&] { r14 = verify_exhaustive(1, 14, 1); });
  const double t20 = seconds([&] { r20 = verify_exhaustive(1, 20, kRings20Workers); });
  bool independent = true;
  for (unsigned w : {1u, 3u}) independent = independent && verify_exhaustive(1, 20, w) == r20;
  write_file(reports / "rings_1_20.json", r20.to_json().dump(2) + "\n");
  const bool ok = r14.clean() && r20.clean() && r20.consistent() && t14 < kRings14Seconds &&
                  t20 < kRings20Seconds && independent;
  report("AC4", ok,
         "n=1..20: checked=" + std::to_string(r20.checked) +
             " wrong=" + std::to_string(r20.classified_wrong) +
             " budget_exceeded=" + std::to_string(r20.budget_exceeded) + "; n=1..14 1 worker " +
             fmt_seconds(t14) + " (< 60 s); n=1..20 8 workers " + fmt_seconds(t20) +
             " (< 600 s); workers 1/3/8 " + (independent ? "identical" : "DIFFER"));
}

void alphabet_counts() {
  const std::vector<Symbol> k2 = enumerate_alphabet(2);
  const auto triples = std::count_if(k2.begin(), k2.end(), [](Symbol s) { return s.is_triple(); });
  int rejected = 0;
  for (Counter c : {Counter::Odd, Counter::Even}) {
    for (int t = -1; t < 2; ++t) {
      for (std::uint32_t m = 0; m < 4; ++m) {
        const Symbol s = Symbol::triple(c, t < 0 ? Tape::removed() : Tape::of(t), SymbolSet::from_mask(m));
        if (!is_valid(s, 2) && std::find(k2.begin(), k2.end(), s) == k2.end()) ++rejected;
      }
    }
  }
  const std::size_t k3 = enumerate_alphabet(3).size();
  report("AC5", triples == 16 && rejected == 8 && k3 == 43,
         "k=2: " + std::to_string(triples) + " triplets, " + std::to_string(rejected) +
             " forbidden rejected; k=3: " + std::to_string(k3) + " symbols");
}

void property_suites(const fs::path& reports) {
  PropertyOptions opts;
  opts.n_max_exhaustive = kPropertyExhaustiveN;
  opts.sample_sizes = {50, 200, 1000};
  opts.samples_per_size = kPropertySamples;
  opts.seed = kPropertySeed;
  opts.workers = std::max(1u, std::thread::hardware_concurrency());
  PropertyReport r;
  const double t = seconds([&] { r = check_properties(opts); });
  write_file(reports / "properties.json", r.to_json().dump(2) + "\n");
  const std::uint64_t expected_runs =
      ((std::uint64_t{1} << (kPropertyExhaustiveN + 1)) - 2) + 3 * kPropertySamples;
  std::uint64_t violations = 0;
  for (const auto& [name, count] : r.violations) violations += count;
  const bool ok = r.ok() && r.runs_checked == expected_runs && r.checks.at(kConservation) == expected_runs &&
                  r.checks.at(kPhaseCounts) == expected_runs && r.checks.at(kPhaseCount) > 0;
  report("AC6", ok,
         "runs=" + std::to_string(r.runs_checked) + " updates=" + std::to_string(r.updates_checked) +
             " phase-count checks=" + std::to_string(r.checks.at(kPhaseCount)) +
             " violations=" + std::to_string(violations) + " seed=" + std::to_string(r.seed) + ", " +
             fmt_seconds(t));
}

struct GridSpace {
  Dims dims;
  int k;
};

const std::vector<GridSpace> kGridSpaces{{{2, 2}, 2}, {{2, 3}, 2}, {{3, 3}, 2},
                                         {{3, 4}, 2}, {{4, 4}, 2}, {{3, 3}, 3}};

std::string space_name(const GridSpace& s) {
  std::string out;
  for (std::size_t j = 0; j < s.dims.size(); ++j) out += (j ? "x" : "") + std::to_string(s.dims[j]);
  return out + " k=" + std::to_string(s.k);
}

void grid_equivalence() {
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool clean = true;
  std::uint64_t checked = 0;
  std::uint64_t wrong = 0;
  const double t = seconds([&] {
    for (const GridSpace& s : kGridSpaces) {
      const VerificationReport r =
          verify_exhaustive_d(s.dims, s.k, SelectionMode::CounterFiltered, workers);
      clean = clean && r.clean();
      checked += r.checked;
      wrong += r.classified_wrong + r.budget_exceeded;
    }
  });

  bool reduction = true;
  for (std::size_t n = 1; n <= kReductionN && reduction; ++n) {
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      const RunResult ring = run(RingConfiguration::from_index(idx, n), {std::nullopt, true});
      const RunDResult line =
          run_d(CuboidConfiguration::from_index(idx, {n}, 2), {std::nullopt, SelectionMode::CounterFiltered, true});
      if (!(*line.trace == *ring.trace) || !(line.outcome == ring.outcome)) {
        reduction = false;
        break;
      }
    }
  }
  report("AC7", clean && reduction && t < kGridsSeconds,
         "grids checked=" + std::to_string(checked) + " wrong=" + std::to_string(wrong) + " in " +
             fmt_seconds(t) + " (< 300 s); 1-D reduction n<=10 " + (reduction ? "identical" : "DIFFERS"));
}

void mode_comparison(const fs::path& reports) {
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  std::string text;
  std::uint64_t discrepancies = 0;
  std::uint64_t faults = 0;
  for (const GridSpace& s : kGridSpaces) {
    const ModeComparison cmp = compare_modes(s.dims, s.k, workers);
    all.push_back(cmp.to_json());
    text += cmp.to_text() + "\n";
    discrepancies += cmp.discrepancies;
    for (const auto& [name, count] : cmp.paper_literal_faults) faults += count;
  }
  const fs::path json_path = reports / "mode_comparison.json";
  const fs::path text_path = reports / "mode_comparison.txt";
  write_file(json_path, all.dump(2) + "\n");
  write_file(text_path, text);
  const bool archived = fs::file_size(json_path) > 0 && fs::file_size(text_path) > 0;
  report("AC8", archived,
         "literal-mode discrepancies=" + std::to_string(discrepancies) +
             " faults=" + std::to_string(faults) + " over " + std::to_string(kGridSpaces.size()) +
             " spaces; archived " + text_path.string());
}

void rule_totality() {
  const std::vector<Symbol> symbols = enumerate_alphabet(2);
  std::size_t pairs = 0;
  std::size_t unreachable = 0;
  std::size_t invalid = 0;
  for (const Symbol& left : symbols) {
    for (const Symbol& current : symbols) {
      ++pairs;
      if (classify_case(left, current, 2) == RuleCase::Unreachable) ++unreachable;
      const LocalResult r = apply_local(left, current, 2);
      if (!r.is_tie() && !is_valid(r.symbol(), 2)) ++invalid;
    }
  }
  report("AC9", pairs == 324 && unreachable == 0 && invalid == 0,
         std::to_string(pairs) + " pairs, unreachable=" + std::to_string(unreachable) +
             ", invalid outputs=" + std::to_string(invalid));
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path reports = argc > 1 ? fs::path(argv[1]) : fs::path("reports");
  fs::create_directories(reports);

  ring_example("AC1", "0001010", "ring_0001010.txt", 6, 3);
  ring_example("AC2", "0001011011010", "ring_0001011011010.txt", 10, 7);
  grid_example();
  exhaustive_rings(reports);
  alphabet_counts();
  property_suites(reports);
  grid_equivalence();
  mode_comparison(reports);
  rule_totality();

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
