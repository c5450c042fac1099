#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dct/alphabet.hpp"
#include "dct/engine1d.hpp"
#include "dct/error.hpp"
#include "dct/multidim.hpp"
#include "dct/trace.hpp"
#include "dct/verifier.hpp"

namespace dct::cli {

namespace {

// Raised for bad flag values found after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t parse_size(std::string_view text, const std::string& what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid " + what + " '" + std::string(text) + "'");
  }
  return value;
}

// "N" or "A..B".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t n = parse_size(text, "ring length");
    return {n, n};
  }
  const std::size_t lo = parse_size(std::string_view(text).substr(0, dots), "ring length");
  const std::size_t hi = parse_size(std::string_view(text).substr(dots + 2), "ring length");
  if (lo == 0 || lo > hi) throw UsageError("invalid range '" + text + "'");
  return {lo, hi};
}

// "3x3", "2x3x4" or a single side.
Dims parse_dims(const std::string& text) {
  Dims dims;
  std::size_t start = 0;
  while (true) {
    const auto x = text.find_first_of("xX", start);
    dims.push_back(parse_size(std::string_view(text).substr(start, x - start), "dimension"));
    if (dims.back() == 0) throw UsageError("dimensions must be positive");
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return dims;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_size(std::string_view(text).substr(start, comma - start), "size"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "-" writes to `out`.
void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write '" + path + "'");
}

void write_json(const std::string& path, const nlohmann::ordered_json& j, std::ostream& out) {
  write_output(path, j.dump(2) + "\n", out);
}

std::optional<std::uint64_t> sweeps_limit(std::uint64_t value) {
  return value == 0 ? std::nullopt : std::optional<std::uint64_t>(value);
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential radius-1/2 cellular automaton for density classification"};
  app.name("dct");
  app.require_subcommand(1);

  int alphabet = 2;
  std::uint64_t max_sweeps = 0;
  unsigned workers = 1;
  std::string report_path;
  std::string records_path;
  std::string mode_text = "counter-filtered";
  std::uint64_t seed = 1;

  // run
  std::string config_text;
  bool trace = false;
  bool events = false;
  auto* run_cmd = app.add_subcommand("run", "Run a ring configuration to its outcome");
  run_cmd->add_option("config", config_text, "Cells 0..n-1 as digits, e.g. 0001010")->required();
  run_cmd->add_option("--alphabet,-k", alphabet, "Alphabet size")->capture_default_str();
  run_cmd->add_option("--max-sweeps", max_sweeps, "Sweep budget (0: n + 4)")->capture_default_str();
  run_cmd->add_flag("--trace", trace, "Print the space-time diagram");
  run_cmd->add_flag("--events", events, "Print phase events as JSON lines");
  run_cmd->add_option("--records", records_path, "Write per-update JSON records ('-': stdout)");

  // run-d
  std::string grid_path;
  auto* rund_cmd = app.add_subcommand("run-d", "Run a d-dimensional toroidal grid");
  rund_cmd->add_option("--file,-f", grid_path, "Grid file")->required();
  rund_cmd->add_option("--mode", mode_text, "counter-filtered | paper-literal")->capture_default_str();
  rund_cmd->add_option("--max-sweeps", max_sweeps, "Sweep budget (0: cells + 4)")->capture_default_str();
  rund_cmd->add_flag("--trace", trace, "Print one panel per sweep");
  rund_cmd->add_flag("--events", events, "Print phase events as JSON lines");
  rund_cmd->add_option("--records", records_path, "Write per-update JSON records ('-': stdout)");

  // verify
  std::string n_text;
  std::uint64_t samples = 0;
  std::size_t max_n = VerifyOptions{}.max_exhaustive_n;
  auto* verify_cmd = app.add_subcommand("verify", "Check rings against the majority oracle");
  verify_cmd->add_option("--n", n_text, "Ring length N or range A..B")->required();
  verify_cmd->add_option("--alphabet,-k", alphabet, "Alphabet size")->capture_default_str();
  verify_cmd->add_option("--workers,-w", workers, "Worker threads")->capture_default_str();
  verify_cmd->add_option("--samples", samples, "Random inputs per length (0: exhaustive)")
      ->capture_default_str();
  verify_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  verify_cmd->add_option("--max-n", max_n, "Largest exhaustive length, as log2 of the space")
      ->capture_default_str();
  verify_cmd->add_option("--max-sweeps", max_sweeps, "Sweep budget (0: n + 4)")->capture_default_str();
  verify_cmd->add_option("--report", report_path, "Write the JSON report ('-': stdout)");

  // verify-d
  std::string dims_text;
  std::uint64_t max_grids = VerifyOptions{}.max_exhaustive_grids;
  auto* verifyd_cmd = app.add_subcommand("verify-d", "Check every grid of a cuboid");
  verifyd_cmd->add_option("--dims", dims_text, "Side lengths, e.g. 3x3")->required();
  verifyd_cmd->add_option("--alphabet,-k", alphabet, "Alphabet size")->capture_default_str();
  verifyd_cmd->add_option("--mode", mode_text, "counter-filtered | paper-literal | compare")
      ->capture_default_str();
  verifyd_cmd->add_option("--workers,-w", workers, "Worker threads")->capture_default_str();
  verifyd_cmd->add_option("--max-grids", max_grids, "Largest space to enumerate")
      ->capture_default_str();
  verifyd_cmd->add_option("--report", report_path, "Write the JSON report ('-': stdout)");

  // props
  std::size_t props_n = PropertyOptions{}.n_max_exhaustive;
  std::string sizes_text = "50,200,1000";
  std::uint64_t props_samples = PropertyOptions{}.samples_per_size;
  auto* props_cmd = app.add_subcommand("props", "Check the phase invariants over many runs");
  props_cmd->add_option("--n", props_n, "Largest exhaustively checked length")->capture_default_str();
  props_cmd->add_option("--sizes", sizes_text, "Sampled lengths, comma separated (empty: none)")
      ->capture_default_str();
  props_cmd->add_option("--samples", props_samples, "Random inputs per sampled length")
      ->capture_default_str();
  props_cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  props_cmd->add_option("--workers,-w", workers, "Worker threads")->capture_default_str();
  props_cmd->add_option("--report", report_path, "Write the JSON report ('-': stdout)");

  // alphabet
  auto* alphabet_cmd = app.add_subcommand("alphabet", "List the extended alphabet");
  alphabet_cmd->add_option("--k,-k", alphabet, "Alphabet size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run_cmd->parsed()) {
      const RingConfiguration config = RingConfiguration::parse(config_text, alphabet);
      const RunResult result =
          run(config, {sweeps_limit(max_sweeps), trace || !records_path.empty()});
      if (trace) out << render_spacetime(*result.trace);
      if (!records_path.empty()) write_output(records_path, emit_records(*result.trace), out);
      if (events) out << emit_events(result.events, result.outcome);
      out << summarize(result.outcome) << '\n';
      return kOk;
    }

    if (rund_cmd->parsed()) {
      const CuboidConfiguration grid = CuboidConfiguration::parse_grid(read_file(grid_path));
      const RunDResult result = run_d(grid, {sweeps_limit(max_sweeps), parse_selection_mode(mode_text),
                                             trace || !records_path.empty()});
      if (trace) out << render_panels(*result.trace);
      if (!records_path.empty()) write_output(records_path, emit_records(*result.trace), out);
      if (events) out << emit_events(result.events, result.outcome);
      out << summarize(result.outcome) << '\n';
      return result.outcome.kind == RunOutcome::Kind::RuleError ? kFailures : kOk;
    }

    if (verify_cmd->parsed()) {
      const auto [lo, hi] = parse_range(n_text);
      if (lo == 0) throw UsageError("ring length must be at least 1");
      VerifyOptions options;
      options.max_sweeps = sweeps_limit(max_sweeps);
      options.max_exhaustive_n = max_n;
      VerificationReport report;
      if (samples == 0) {
        report = verify_exhaustive(lo, hi, workers, options, alphabet);
      } else {
        for (std::size_t n = lo; n <= hi; ++n) {
          VerificationReport one = verify_sampled(n, samples, seed, workers, options, alphabet);
          if (n == lo) {
            report = std::move(one);
          } else {
            report.merge(one);
          }
        }
        report.space = "ring n=" + n_text + " (" + std::to_string(samples) + " samples per length)";
      }
      out << report.to_text();
      if (!report_path.empty()) write_json(report_path, report.to_json(), out);
      return report.clean() ? kOk : kFailures;
    }

    if (verifyd_cmd->parsed()) {
      const Dims dims = parse_dims(dims_text);
      VerifyOptions options;
      options.max_exhaustive_grids = max_grids;
      if (mode_text == "compare") {
        const ModeComparison cmp = compare_modes(dims, alphabet, workers, options);
        out << cmp.to_text();
        if (!report_path.empty()) write_json(report_path, cmp.to_json(), out);
        return cmp.counter_filtered.clean() ? kOk : kFailures;
      }
      const VerificationReport report =
          verify_exhaustive_d(dims, alphabet, parse_selection_mode(mode_text), workers, options);
      out << report.to_text();
      if (!report_path.empty()) write_json(report_path, report.to_json(), out);
      return report.clean() ? kOk : kFailures;
    }

    if (props_cmd->parsed()) {
      PropertyOptions options;
      options.n_max_exhaustive = props_n;
      options.sample_sizes = sizes_text.empty() ? std::vector<std::size_t>{} : parse_list(sizes_text);
      options.samples_per_size = props_samples;
      options.seed = seed;
      options.workers = workers;
      const PropertyReport report = check_properties(options);
      out << report.to_text();
      if (!report_path.empty()) write_json(report_path, report.to_json(), out);
      return report.ok() ? kOk : kFailures;
    }

    if (alphabet_cmd->parsed()) {
      const std::vector<Symbol> symbols = enumerate_alphabet(alphabet);
      out << "alphabet k=" << alphabet << ": " << symbols.size() << " symbols (" << alphabet
          << " base, " << symbols.size() - static_cast<std::size_t>(alphabet)
          << " intermediate)\n";
      for (std::size_t i = 0; i < symbols.size(); ++i) {
        out << i << ' ' << to_string(symbols[i]) << '\n';
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "dct: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "dct: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "dct: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "dct: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "dct: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dct::cli
