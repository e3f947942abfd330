#pragma once

#include "clpb/benchmarks.hpp"
#include "clpb/chaotic_maps.hpp"
#include "clpb/evolution_ops.hpp"
#include "clpb/rng.hpp"
#include "clpb/types.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>

namespace clpb {

/// How the main population is seeded.
struct Initialization {
    enum class Kind { Random, Chaotic };
    Kind kind = Kind::Random;
    ChaoticMapKind map = ChaoticMapKind::Logistic;
    double x0 = kDefaultChaoticSeed;

    static Initialization random() { return {}; }
    static Initialization chaotic(ChaoticMapKind map, double x0 = kDefaultChaoticSeed) {
        return {Kind::Chaotic, map, x0};
    }
};

/// How offspring re-enter the main population at the end of a generation.
enum class SurvivalKind {
    /// Parents and offspring compete; the best pop_size survive.
    MergeTruncate,
    /// Offspring replace the population outright (best-ever kept for reporting only).
    Generational,
};

std::string_view to_string(SurvivalKind k);
std::optional<SurvivalKind> parse_survival(std::string_view s);

inline constexpr std::size_t kUnlimitedEvaluations = std::numeric_limits<std::size_t>::max();

struct LpbConfig {
    std::size_t pop_size = 30;
    /// Fraction of M copied into the sub-population O each iteration.
    double dp = 0.5;
    /// Learners admitted per generation; defaults to pop_size.
    std::optional<std::size_t> n_learners;
    double crossover_rate = 0.9;
    /// Per-gene mutation probability; defaults to 1/dim.
    std::optional<double> mutation_rate;
    std::size_t max_iterations = 500;
    EvalBudget budget{kUnlimitedEvaluations, 0};
    std::uint64_t seed = 1;
    Initialization init;
    bool interior_crossover = false;

    CrossoverKind crossover = CrossoverKind::Arithmetic;
    MutationKind mutation = MutationKind::Gaussian;
    /// Gaussian step as a fraction of each coordinate's range.
    double mutation_sigma = 0.05;
    SelectionKind selection = SelectionKind::Roulette;
    SurvivalKind survival = SurvivalKind::MergeTruncate;

    std::size_t learners() const { return n_learners.value_or(pop_size); }
    double mutation_rate_for(std::size_t dim) const {
        return mutation_rate.value_or(1.0 / static_cast<double>(dim));
    }
    /// Throws ContractError when a field is out of range.
    void validate() const;
};

/// Evaluation callback used by the operators that need fresh costs.
/// May throw BudgetExhausted.
using Evaluator = std::function<double(std::span<const double>)>;

/// Copies max(2, round(dp*|M|)) members of M, chosen uniformly without
/// replacement. Each copy records its origin slot. Requires |M| >= 2.
Population split_subpopulation(std::span<const Individual> main, double dp, Rng& rng);

struct GoodBad {
    Population good;
    Population bad;
};

/// Splits a fitness-descending O into its upper ceil(|O|/2) and the rest.
GoodBad divide_good_bad(Population sorted);

struct LearnerPools {
    Population perfect; ///< PF: fitness above the good threshold
    Population good;    ///< GP: bad_max < fitness <= good_max
    Population bad;     ///< BP: fitness <= bad_max
};

/// Classifies every member of M against the highest fitness of the good and
/// bad halves. Requires good_max >= bad_max.
LearnerPools classify(std::span<const Individual> main, double good_max, double bad_max);

/// Admits n learners, draining PF first, then GP, then BP. Within a pool the
/// draw is fitness-proportional and without replacement.
Population fill_next(LearnerPools pools, std::size_t n_learners, Rng& rng);

/// One full LPB/CLPB run. CLPB behaviour is enabled through
/// config.init = chaotic and config.interior_crossover = true.
RunResult run_lpb(const LpbConfig& config, const ObjectiveSpec& spec);

} // namespace clpb
