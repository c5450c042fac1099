#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dct/engine1d.hpp"
#include "dct/multidim.hpp"
#include "json.hpp"

namespace dct {

// Half-open range of configuration indices. Configuration i of length n
// has cell j = j-th base-k digit of i (cell 0 least significant).
struct Shard {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

// Splits [0, total) into consecutive shards of at most shard_size indices.
std::vector<Shard> make_shards(std::uint64_t total, std::uint64_t shard_size);

struct Counterexample {
  std::uint64_t size_key = 0;  // ring length, or 0 for cuboids
  std::uint64_t index = 0;
  std::string input;
  std::string expected;
  std::string got;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct SizeStats {
  std::uint64_t checked = 0;
  std::uint64_t ties = 0;
  std::uint64_t max_sweeps = 0;
  std::uint64_t max_phases = 0;  // over inputs with a strict majority

  friend bool operator==(const SizeStats&, const SizeStats&) = default;
};

struct VerificationReport {
  std::string space;
  int alphabet_size = 2;
  std::string mode;  // empty for rings
  std::optional<std::uint64_t> seed;  // set for sampled runs

  std::uint64_t checked = 0;
  std::uint64_t classified_correct = 0;
  std::uint64_t classified_wrong = 0;
  std::uint64_t ties_seen = 0;
  std::uint64_t budget_exceeded = 0;
  std::map<std::string, std::uint64_t> tie_outcomes;  // outcome label -> count
  std::map<std::string, std::uint64_t> rule_faults;   // fault name -> count
  std::uint64_t max_sweeps_observed = 0;
  std::uint64_t max_phase_count_observed = 0;  // inputs with a strict majority
  std::map<std::uint64_t, SizeStats> by_size;

  // Smallest (size_key, index) failures, at most failure_limit of them.
  std::vector<Counterexample> failures;
  std::size_t failure_limit = 100;

  bool clean() const noexcept { return classified_wrong == 0 && budget_exceeded == 0; }
  bool consistent() const noexcept {
    return checked == classified_correct + classified_wrong + ties_seen + budget_exceeded;
  }

  // Associative and commutative.
  void merge(const VerificationReport& other);

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct VerifyOptions {
  std::optional<std::uint64_t> max_sweeps;  // default: cells + 4
  std::uint64_t shard_size = std::uint64_t{1} << 14;
  std::size_t failure_limit = 100;
  std::size_t max_exhaustive_n = 24;                     // rings
  std::uint64_t max_exhaustive_grids = std::uint64_t{1} << 20;  // cuboids
};

// Every configuration of length n in the shard, against the oracle.
VerificationReport verify_shard(std::size_t n, Shard shard, const VerifyOptions& options = {},
                                int alphabet_size = 2);

// All binary rings of length n_min..n_max. Throws std::invalid_argument
// when n_max exceeds options.max_exhaustive_n.
VerificationReport verify_exhaustive(std::size_t n_min, std::size_t n_max, unsigned workers,
                                     const VerifyOptions& options = {}, int alphabet_size = 2);

// `samples` seeded random rings of length n. Sample i depends only on
// (seed, n, i).
VerificationReport verify_sampled(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                                  unsigned workers, const VerifyOptions& options = {},
                                  int alphabet_size = 2);

// Every grid over the alphabet. Throws std::invalid_argument when the
// space exceeds options.max_exhaustive_grids.
VerificationReport verify_exhaustive_d(const Dims& dims, int alphabet_size, SelectionMode mode,
                                       unsigned workers = 1, const VerifyOptions& options = {});

// Counter-filtered against paper-literal selection over the same grids.
struct ModeDiscrepancy {
  std::uint64_t index = 0;
  std::string input;
  std::string counter_filtered;
  std::string paper_literal;

  friend bool operator==(const ModeDiscrepancy&, const ModeDiscrepancy&) = default;
};

struct ModeComparison {
  std::string space;
  int alphabet_size = 2;
  std::uint64_t checked = 0;
  std::uint64_t discrepancies = 0;
  std::map<std::string, std::uint64_t> paper_literal_faults;
  std::vector<ModeDiscrepancy> examples;  // smallest indices first
  std::size_t example_limit = 100;
  VerificationReport counter_filtered;
  VerificationReport paper_literal;

  void merge(const ModeComparison& other);
  std::string to_text() const;
  nlohmann::ordered_json to_json() const;
};

ModeComparison compare_modes(const Dims& dims, int alphabet_size, unsigned workers = 1,
                             const VerifyOptions& options = {});

// Instrumented property suite over rings: conservation within a phase,
// per-phase counts, phase count, kickstart count, fixed points.
struct PropertyOptions {
  std::size_t n_max_exhaustive = 12;
  std::vector<std::size_t> sample_sizes = {50, 200, 1000};
  std::uint64_t samples_per_size = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  int alphabet_size = 2;
  std::size_t violation_limit = 100;
};

struct PropertyViolation {
  std::string property;
  std::string input;
  std::string detail;

  friend bool operator==(const PropertyViolation&, const PropertyViolation&) = default;
};

struct PropertyReport {
  std::uint64_t seed = 0;
  std::uint64_t runs_checked = 0;
  std::uint64_t updates_checked = 0;
  std::map<std::string, std::uint64_t> checks;      // property -> times evaluated
  std::map<std::string, std::uint64_t> violations;  // property -> times violated
  std::vector<PropertyViolation> examples;
  std::size_t violation_limit = 100;

  bool ok() const noexcept;
  void merge(const PropertyReport& other);
  std::string to_text() const;
  nlohmann::ordered_json to_json() const;
};

// Property names used in PropertyReport.
inline constexpr const char* kConservation = "conservation_within_phase";
inline constexpr const char* kPhaseCounts = "counts_per_phase";
inline constexpr const char* kPhaseCount = "phase_count";
inline constexpr const char* kKickstartCount = "kickstart_count";
inline constexpr const char* kUniformFixedPoint = "uniform_fixed_point";
inline constexpr const char* kCleanClassification = "clean_classification";

// Checks one input; exposed for targeted tests.
PropertyReport check_input(const RingConfiguration& input);

PropertyReport check_properties(const PropertyOptions& options = {});

}  // namespace dct
