#pragma once

#include "clpb/baselines.hpp"
#include "clpb/benchmarks.hpp"
#include "clpb/clpb.hpp"
#include "clpb/lpb.hpp"
#include "clpb/types.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace clpb {

// ---------------------------------------------------------------------------
// Algorithms and experiment plans

enum class AlgorithmKind { Lpb, Clpb, Ga, Pso };

std::string_view to_string(AlgorithmKind k);
std::optional<AlgorithmKind> parse_algorithm(std::string_view s);

using AlgorithmConfig = std::variant<LpbConfig, GaConfig, PsoConfig>;

struct AlgorithmSpec {
    AlgorithmKind kind = AlgorithmKind::Lpb;
    /// Column label in tables ("LPB", "CLPB5", "GA", ...).
    std::string label;
    AlgorithmConfig config;
};

AlgorithmSpec lpb_algorithm(LpbConfig config = {});
AlgorithmSpec clpb_algorithm(ChaoticMapKind map, LpbConfig base = {});
AlgorithmSpec ga_algorithm(GaConfig config = {});
AlgorithmSpec pso_algorithm(PsoConfig config = {});

/// Runs one algorithm once with the given seed (overriding the config's).
RunResult run_algorithm(const AlgorithmSpec& algorithm, const ObjectiveSpec& spec, std::uint64_t seed);

struct FunctionRef {
    std::string id;
    std::optional<std::size_t> dim;
};

/// A group of ten CLPB variants whose summaries are averaged into one row.
struct ClpbGroup {
    std::string label;                 ///< label of the averaged row, e.g. "CLPB"
    std::vector<std::string> variants; ///< labels of the ten member algorithms
};

struct ExperimentPlan {
    std::vector<AlgorithmSpec> algorithms;
    std::vector<FunctionRef> functions;
    std::size_t runs_per_cell = 1;
    std::uint64_t base_seed = 1;
    std::filesystem::path output_dir;
    SuiteOptions suite;
    std::size_t jobs = 1;
    std::vector<ClpbGroup> clpb_groups;
};

/// Error raised for malformed experiment configuration, carrying the
/// offending key path (e.g. "algorithms[1].pop_size").
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

  private:
    std::string key_;
};

/// Parses a JSON experiment document. Unknown keys are rejected; omitted
/// fields take the library defaults.
ExperimentPlan parse_plan(std::string_view json_text);
ExperimentPlan load_plan(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Running and summarizing

/// Runs `runs` independent executions; run i uses seed base_seed + i no
/// matter which thread executes it. Results are returned in run order.
std::vector<RunResult> run_cell(const AlgorithmSpec& algorithm, const ObjectiveSpec& spec, std::size_t runs,
                                std::uint64_t base_seed, std::size_t jobs = 1);

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0; ///< sample standard deviation (n-1)
    double mean_pt = 0.0;
    std::size_t n = 0;
    /// Set for averaged CLPB rows: std is the mean of the member stds.
    bool pooled = false;
};

SummaryStats summarize(std::span<const RunResult> results);
SummaryStats summarize_values(std::span<const double> costs, std::span<const double> times = {});

/// Unweighted mean of ten variant summaries (means, PTs and stds).
SummaryStats average_clpb_variants(std::span<const SummaryStats> stats);

struct CellResult {
    std::string function;
    std::size_t dim = 0;
    Category category = Category::Unimodal;
    std::string provenance;
    std::string algorithm;
    AlgorithmKind kind = AlgorithmKind::Lpb;
    std::optional<AlgorithmConfig> config;
    std::vector<std::uint64_t> seeds;
    std::vector<RunResult> runs;
    SummaryStats stats;
    /// For averaged rows: labels of the member variants.
    std::vector<std::string> members;
};

struct ExperimentResults {
    std::uint64_t base_seed = 0;
    std::size_t runs_per_cell = 0;
    std::vector<CellResult> cells;
};

/// Raised when a run fails mid-experiment; carries the cells completed so far
/// so they can still be persisted.
class ExperimentError : public std::runtime_error {
  public:
    ExperimentError(const std::string& message, ExperimentResults partial)
        : std::runtime_error(message), partial_(std::move(partial)) {}
    const ExperimentResults& partial() const noexcept { return partial_; }

  private:
    ExperimentResults partial_;
};

/// Invoked after each finished cell (for progress output).
using CellCallback = std::function<void(const CellResult&)>;

/// Executes every (function, algorithm) cell of the plan, followed by the
/// averaged rows of any CLPB groups.
ExperimentResults run_experiment(const ExperimentPlan& plan, const CellCallback& on_cell = {});

// ---------------------------------------------------------------------------
// Ranking

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
};

struct CellStats {
    std::string function;
    std::string algorithm;
    SummaryStats stats;
};

struct RankTable {
    std::vector<std::string> algorithms;
    std::vector<std::string> functions;
    /// ranks[f][a]; empty when the cell is missing.
    std::vector<std::vector<std::optional<int>>> ranks;
    std::map<std::string, Rational> average;
    /// Per category (unimodal/multimodal/composite/cec2019) averages.
    std::map<Category, std::map<std::string, Rational>> category_average;
    std::vector<std::string> warnings;
};

/// Ranks algorithms per function by mean cost (1 = lowest). Ties share the
/// lower rank (competition ranking). A missing cell excludes that function
/// from the algorithm's averages and records a warning.
RankTable rank_table(std::span<const CellStats> cells, std::vector<std::string> algorithm_order = {},
                     std::vector<std::string> function_order = {});

// ---------------------------------------------------------------------------
// Significance testing

struct TTestResult {
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double std_a = 0.0;
    double std_b = 0.0;
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
};

/// Two-tailed Welch (unequal variance) two-sample t-test. Conventions: a
/// sample with n < 2 or zero variance with equal means gives p = 1; zero
/// variance with different means gives p = 0.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);
/// Two-tailed paired t-test on a[i] - b[i]; samples must have equal size.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);
/// p-value of welch_t_test.
double t_test(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Persistence
//
// An experiment directory holds:
//   results.json   deterministic record: configs, seeds, per-run results
//   timings.json   per-run wall-clock seconds (the only non-deterministic file)
//   summary.csv    function,algorithm,mean,std,pt_seconds
//   ranks.csv      function,rank:ALG,... plus average rows
//   convergence.csv  function,algorithm,iteration,mean_best_cost

struct PersistedFiles {
    std::filesystem::path results;
    std::filesystem::path timings;
    std::filesystem::path summary;
    std::filesystem::path ranks;
    std::filesystem::path convergence;
};

PersistedFiles persist(const ExperimentResults& results, const std::filesystem::path& dir);

/// Reads results.json (and timings.json when present). Cells stored with
/// statistics only (no runs) are accepted.
ExperimentResults load_results(const std::filesystem::path& dir_or_file);

/// Serialized forms, exposed for tests and tooling.
std::string results_to_json(const ExperimentResults& results);
std::string timings_to_json(const ExperimentResults& results);
std::string summary_csv(const ExperimentResults& results);
std::string rank_csv(const RankTable& table);
std::vector<CellStats> cell_stats(const ExperimentResults& results);

} // namespace clpb
