#pragma once

#include "clpb/lpb.hpp"

#include <string>

namespace clpb {

/// CLPB1..CLPB10, one variant per chaotic map in canonical order.
struct ClpbVariantId {
    ChaoticMapKind map;

    /// 1-based variant number.
    int number() const;
    /// "CLPB5" etc.
    std::string name() const;
    static ClpbVariantId from_number(int n);
};

/// Seeds a population from a single chaotic stream consumed gene by gene in
/// row-major order: gene = lower + u * (upper - lower), u = next_unit().
/// Members are returned unevaluated.
Population chaotic_init(ChaoticMapKind map, std::size_t pop_size, const ObjectiveSpec& spec,
                        double x0 = kDefaultChaoticSeed);

/// Adjacent pairs of a fitness-sorted good half (1st with 2nd, 3rd with 4th,
/// ...) recombine at `rate`; each child replaces its own parent only when
/// strictly fitter. Children are clamped to `bounds` before evaluation.
/// Returns the number of replacements; the population is re-sorted
/// afterwards. Propagates BudgetExhausted, leaving `good` valid.
std::size_t interior_crossover_in_place(Population& good, double rate, const Bounds& bounds, Rng& rng,
                                        const Evaluator& evaluate, CrossoverKind kind = CrossoverKind::Arithmetic);

Population interior_crossover_good(Population good, double rate, const Bounds& bounds, Rng& rng,
                                   const Evaluator& evaluate, CrossoverKind kind = CrossoverKind::Arithmetic);

/// Default CLPB configuration for a variant: chaotic initialization and
/// interior crossover on top of the LPB defaults.
LpbConfig clpb_config(ChaoticMapKind map, LpbConfig base = {});

/// Runs CLPB. Requires a configuration with chaotic init and interior
/// crossover unless `allow_reduced` is set, in which case any LpbConfig is
/// accepted (and behaves exactly like run_lpb).
RunResult run_clpb(const LpbConfig& config, const ObjectiveSpec& spec, bool allow_reduced = false);

} // namespace clpb
