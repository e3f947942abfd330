#pragma once

#include "clpb/benchmarks.hpp"
#include "clpb/evolution_ops.hpp"
#include "clpb/lpb.hpp"
#include "clpb/types.hpp"

#include <cstdint>
#include <optional>

namespace clpb {

struct GaConfig {
    std::size_t pop_size = 30;
    double crossover_rate = 0.9;
    std::optional<double> mutation_rate; ///< per gene; defaults to 1/dim
    std::size_t elitism_count = 1;
    std::size_t max_iterations = 500;
    EvalBudget budget{kUnlimitedEvaluations, 0};
    std::uint64_t seed = 1;
    CrossoverKind crossover = CrossoverKind::SinglePoint;
    MutationKind mutation = MutationKind::UniformReset;
    double mutation_sigma = 0.1;
    SelectionKind selection = SelectionKind::Roulette;

    void validate() const;
};

struct PsoConfig {
    std::size_t swarm_size = 30;
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    /// Velocity limit as a fraction of each coordinate's range.
    double vmax_fraction = 0.2;
    std::size_t max_iterations = 500;
    EvalBudget budget{kUnlimitedEvaluations, 0};
    std::uint64_t seed = 1;

    void validate() const;
};

/// Generational GA: roulette parents, crossover, per-gene mutation, and the
/// best `elitism_count` members copied unchanged into each generation.
RunResult run_ga(const GaConfig& config, const ObjectiveSpec& spec);

/// Global-best PSO with velocity clamping. Particles start at rest.
RunResult run_pso(const PsoConfig& config, const ObjectiveSpec& spec);

} // namespace clpb
