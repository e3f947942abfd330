#include "clpb/clpb.hpp"

#include "clpb/errors.hpp"

#include <algorithm>

namespace clpb {

int ClpbVariantId::number() const {
    const auto it = std::find(kAllChaoticMaps.begin(), kAllChaoticMaps.end(), map);
    return static_cast<int>(it - kAllChaoticMaps.begin()) + 1;
}

std::string ClpbVariantId::name() const { return "CLPB" + std::to_string(number()); }

ClpbVariantId ClpbVariantId::from_number(int n) {
    detail::require(n >= 1 && n <= static_cast<int>(kAllChaoticMaps.size()), "CLPB variant must be 1..10");
    return {kAllChaoticMaps[static_cast<std::size_t>(n - 1)]};
}

Population chaotic_init(ChaoticMapKind map, std::size_t pop_size, const ObjectiveSpec& spec, double x0) {
    detail::require(pop_size >= 2, "chaotic_init: pop_size must be at least 2");
    ChaoticStream stream(map, x0);
    Population pop;
    pop.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        std::vector<double> pos(spec.dim);
        for (std::size_t j = 0; j < spec.dim; ++j) {
            const double lo = spec.bounds.lower[j];
            const double hi = spec.bounds.upper[j];
            pos[j] = std::clamp(lo + stream.next_unit() * (hi - lo), lo, hi);
        }
        pop.emplace_back(std::move(pos));
    }
    return pop;
}

std::size_t interior_crossover_in_place(Population& good, double rate, const Bounds& bounds, Rng& rng,
                                        const Evaluator& evaluate, CrossoverKind kind) {
    if (good.size() < 2) return 0;
    std::size_t replaced = 0;
    auto consider = [&](Individual& parent, Individual& child) {
        if (!child.stale) return;
        clamp_in_place(child.position, bounds);
        child.set_cost(evaluate(child.position));
        if (child.fitness > parent.fitness) {
            parent.position = std::move(child.position);
            parent.set_cost(child.cost);
            ++replaced;
        }
    };
    try {
        for (std::size_t i = 0; i + 1 < good.size(); i += 2) {
            auto [c1, c2] = crossover(good[i], good[i + 1], rate, rng, kind);
            consider(good[i], c1);
            consider(good[i + 1], c2);
        }
    } catch (const BudgetExhausted&) {
        std::stable_sort(good.begin(), good.end(),
                         [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
        throw;
    }
    std::stable_sort(good.begin(), good.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
    return replaced;
}

Population interior_crossover_good(Population good, double rate, const Bounds& bounds, Rng& rng,
                                   const Evaluator& evaluate, CrossoverKind kind) {
    interior_crossover_in_place(good, rate, bounds, rng, evaluate, kind);
    return good;
}

LpbConfig clpb_config(ChaoticMapKind map, LpbConfig base) {
    base.init = Initialization::chaotic(map, base.init.kind == Initialization::Kind::Chaotic ? base.init.x0
                                                                                             : kDefaultChaoticSeed);
    base.interior_crossover = true;
    return base;
}

RunResult run_clpb(const LpbConfig& config, const ObjectiveSpec& spec, bool allow_reduced) {
    if (!allow_reduced) {
        detail::require(config.init.kind == Initialization::Kind::Chaotic, "run_clpb: chaotic initialization required");
        detail::require(config.interior_crossover, "run_clpb: interior crossover must be enabled");
    }
    return run_lpb(config, spec);
}

} // namespace clpb
