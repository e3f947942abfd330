#include "clpb/evolution_ops.hpp"

#include "clpb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace clpb {

double fitness_from_cost(double cost) {
    detail::require(std::isfinite(cost), "fitness_from_cost: cost must be finite");
    return cost >= 0.0 ? 1.0 / (1.0 + cost) : 1.0 + std::abs(cost);
}

std::string_view to_string(CrossoverKind k) {
    switch (k) {
    case CrossoverKind::SinglePoint: return "single_point";
    case CrossoverKind::Uniform: return "uniform";
    case CrossoverKind::Arithmetic: return "arithmetic";
    }
    return "unknown";
}

std::string_view to_string(MutationKind k) {
    switch (k) {
    case MutationKind::UniformReset: return "uniform_reset";
    case MutationKind::Gaussian: return "gaussian";
    }
    return "unknown";
}

std::string_view to_string(SelectionKind k) {
    switch (k) {
    case SelectionKind::Roulette: return "roulette";
    case SelectionKind::Tournament: return "tournament";
    }
    return "unknown";
}

std::optional<CrossoverKind> parse_crossover(std::string_view s) {
    for (auto k : {CrossoverKind::SinglePoint, CrossoverKind::Uniform, CrossoverKind::Arithmetic}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

std::optional<MutationKind> parse_mutation(std::string_view s) {
    for (auto k : {MutationKind::UniformReset, MutationKind::Gaussian}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

std::optional<SelectionKind> parse_selection(std::string_view s) {
    for (auto k : {SelectionKind::Roulette, SelectionKind::Tournament}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

void sort_by_fitness_desc(Population& pop) {
    for (const Individual& ind : pop) {
        detail::require(!ind.stale, "sort_by_fitness_desc: population has unevaluated members");
    }
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
}

std::vector<std::size_t> select_indices(std::span<const Individual> pop, std::size_t k, Rng& rng,
                                        SelectionKind kind) {
    detail::require(k <= pop.size(), "select: k exceeds population size");
    std::vector<std::size_t> remaining(pop.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    std::vector<std::size_t> chosen;
    chosen.reserve(k);

    while (chosen.size() < k) {
        std::size_t slot = 0;
        if (kind == SelectionKind::Tournament) {
            const std::size_t a = rng.index(remaining.size());
            const std::size_t b = rng.index(remaining.size());
            slot = pop[remaining[b]].fitness > pop[remaining[a]].fitness ? b : a;
        } else {
            double total = 0.0;
            for (std::size_t idx : remaining) total += pop[idx].fitness;
            if (total > 0.0) {
                const double spin = rng.uniform() * total;
                double acc = 0.0;
                slot = remaining.size() - 1;
                for (std::size_t i = 0; i < remaining.size(); ++i) {
                    acc += pop[remaining[i]].fitness;
                    if (spin < acc) {
                        slot = i;
                        break;
                    }
                }
                // Rounding can land the spin on a zero-width tail slot.
                while (pop[remaining[slot]].fitness <= 0.0 && slot > 0) --slot;
            } else {
                slot = rng.index(remaining.size());
            }
        }
        chosen.push_back(remaining[slot]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
    }
    return chosen;
}

Population select(std::span<const Individual> pop, std::size_t k, Rng& rng, SelectionKind kind) {
    Population out;
    out.reserve(k);
    for (std::size_t idx : select_indices(pop, k, rng, kind)) out.push_back(pop[idx]);
    return out;
}

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, double rate, Rng& rng,
                                            CrossoverKind kind) {
    detail::require(a.position.size() == b.position.size(), "crossover: parents differ in dimension");
    Individual c1 = a;
    Individual c2 = b;
    const std::size_t dim = a.position.size();
    if (!rng.bernoulli(rate)) return {std::move(c1), std::move(c2)};

    switch (kind) {
    case CrossoverKind::SinglePoint: {
        if (dim < 2) return {std::move(c1), std::move(c2)};
        const std::size_t cut = 1 + rng.index(dim - 1);
        for (std::size_t j = cut; j < dim; ++j) std::swap(c1.position[j], c2.position[j]);
        break;
    }
    case CrossoverKind::Uniform:
        for (std::size_t j = 0; j < dim; ++j) {
            if (rng.bernoulli(0.5)) std::swap(c1.position[j], c2.position[j]);
        }
        break;
    case CrossoverKind::Arithmetic:
        for (std::size_t j = 0; j < dim; ++j) {
            const double alpha = rng.uniform();
            c1.position[j] = alpha * a.position[j] + (1.0 - alpha) * b.position[j];
            c2.position[j] = alpha * b.position[j] + (1.0 - alpha) * a.position[j];
        }
        break;
    }
    if (c1.position != a.position) c1.mark_stale();
    if (c2.position != b.position) c2.mark_stale();
    return {std::move(c1), std::move(c2)};
}

Individual mutate(Individual ind, double rate, const Bounds& bounds, Rng& rng, const MutationParams& params) {
    detail::require(ind.position.size() == bounds.dim(), "mutate: dimension mismatch with bounds");
    bool changed = false;
    for (std::size_t j = 0; j < ind.position.size(); ++j) {
        if (!rng.bernoulli(rate)) continue;
        const double lo = bounds.lower[j];
        const double hi = bounds.upper[j];
        double g = 0.0;
        if (params.kind == MutationKind::UniformReset) {
            g = rng.uniform(lo, hi);
        } else {
            g = ind.position[j] + params.sigma_fraction * (hi - lo) * rng.normal();
        }
        g = std::clamp(g, lo, hi);
        if (g != ind.position[j]) {
            ind.position[j] = g;
            changed = true;
        }
    }
    if (changed) ind.mark_stale();
    return ind;
}

void clamp_in_place(std::span<double> x, const Bounds& bounds) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], bounds.lower[j], bounds.upper[j]);
}

std::vector<double> clamp(std::vector<double> x, const Bounds& bounds) {
    detail::require(x.size() == bounds.dim(), "clamp: dimension mismatch with bounds");
    clamp_in_place(x, bounds);
    return x;
}

std::vector<double> random_position(const Bounds& bounds, Rng& rng) {
    std::vector<double> x(bounds.dim());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
    return x;
}

} // namespace clpb
