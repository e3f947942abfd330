#include "clpb/baselines.hpp"

#include "clpb/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace clpb {

void GaConfig::validate() const {
    detail::require(pop_size >= 2, "GA pop_size must be at least 2");
    detail::require(elitism_count < pop_size, "GA elitism_count must be below pop_size");
    detail::require(crossover_rate >= 0.0 && crossover_rate <= 1.0, "GA crossover_rate must lie in [0, 1]");
    if (mutation_rate) {
        detail::require(*mutation_rate >= 0.0 && *mutation_rate <= 1.0, "GA mutation_rate must lie in [0, 1]");
    }
    detail::require(budget.max_evaluations > 0, "budget must allow at least one evaluation");
}

void PsoConfig::validate() const {
    detail::require(swarm_size >= 1, "PSO swarm_size must be positive");
    detail::require(inertia >= 0.0 && inertia <= 1.0, "PSO inertia must lie in [0, 1]");
    detail::require(cognitive >= 0.0 && social >= 0.0, "PSO coefficients must be non-negative");
    detail::require(vmax_fraction > 0.0, "PSO vmax_fraction must be positive");
    detail::require(budget.max_evaluations > 0, "budget must allow at least one evaluation");
}

namespace {

// Best-ever tracking around a counted objective.
class Tracker {
  public:
    Tracker(const ObjectiveSpec& spec, EvalBudget budget, std::uint64_t seed)
        : objective_(spec, budget, mix_seed(seed ^ 0x6e6f697365ULL)) {}

    double operator()(std::span<const double> x) {
        const double c = objective_(x);
        if (c < best_cost) {
            best_cost = c;
            best_position.assign(x.begin(), x.end());
        }
        return c;
    }

    void finish(RunResult& r) const {
        r.best_cost = best_cost;
        r.best_position = best_position;
        r.evaluations = objective_.used();
    }

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> best_position;

  private:
    CountedObjective objective_;
};

template <typename Body>
RunResult timed_loop(Tracker& tracker, std::size_t max_iterations, Body&& body) {
    RunResult result;
    const auto start = std::chrono::steady_clock::now();
    std::size_t attempted = 0;
    try {
        body(0);
        result.history.push_back(tracker.best_cost);
        for (std::size_t it = 1; it <= max_iterations; ++it) {
            attempted = it;
            body(it);
            result.iterations = it;
            result.history.push_back(tracker.best_cost);
        }
    } catch (const BudgetExhausted&) {
        result.budget_exhausted = true;
        if (result.history.size() < attempted + 1) result.history.push_back(tracker.best_cost);
        result.iterations = attempted;
    }
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    tracker.finish(result);
    return result;
}

} // namespace

RunResult run_ga(const GaConfig& config, const ObjectiveSpec& spec) {
    config.validate();
    Tracker tracker(spec, config.budget, config.seed);
    Rng rng(mix_seed(config.seed));
    const double mutation_rate = config.mutation_rate.value_or(1.0 / static_cast<double>(spec.dim));
    const MutationParams mutation{config.mutation, config.mutation_sigma};
    Population pop;

    auto evaluate_stale = [&](Population& p) {
        for (Individual& ind : p) {
            if (!ind.stale) continue;
            clamp_in_place(ind.position, spec.bounds);
            ind.set_cost(tracker(ind.position));
        }
    };

    return timed_loop(tracker, config.max_iterations, [&](std::size_t it) {
        if (it == 0) {
            for (std::size_t i = 0; i < config.pop_size; ++i) pop.emplace_back(random_position(spec.bounds, rng));
            evaluate_stale(pop);
            return;
        }
        sort_by_fitness_desc(pop);
        Population next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(config.elitism_count));
        while (next.size() < config.pop_size) {
            const auto parents = select_indices(pop, 2, rng, config.selection);
            auto [c1, c2] = crossover(pop[parents[0]], pop[parents[1]], config.crossover_rate, rng, config.crossover);
            next.push_back(mutate(std::move(c1), mutation_rate, spec.bounds, rng, mutation));
            if (next.size() < config.pop_size) {
                next.push_back(mutate(std::move(c2), mutation_rate, spec.bounds, rng, mutation));
            }
        }
        evaluate_stale(next);
        pop = std::move(next);
    });
}

RunResult run_pso(const PsoConfig& config, const ObjectiveSpec& spec) {
    config.validate();
    Tracker tracker(spec, config.budget, config.seed);
    Rng rng(mix_seed(config.seed));
    const std::size_t n = config.swarm_size;
    const std::size_t dim = spec.dim;

    std::vector<double> vmax(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        vmax[j] = config.vmax_fraction * (spec.bounds.upper[j] - spec.bounds.lower[j]);
    }

    std::vector<std::vector<double>> x(n);
    std::vector<std::vector<double>> v(n, std::vector<double>(dim, 0.0));
    std::vector<std::vector<double>> pbest(n);
    std::vector<double> pbest_cost(n, std::numeric_limits<double>::infinity());
    std::vector<double> gbest;
    double gbest_cost = std::numeric_limits<double>::infinity();

    auto evaluate = [&](std::size_t i) {
        const double c = tracker(x[i]);
        if (c < pbest_cost[i]) {
            pbest_cost[i] = c;
            pbest[i] = x[i];
        }
        if (c < gbest_cost) {
            gbest_cost = c;
            gbest = x[i];
        }
    };

    return timed_loop(tracker, config.max_iterations, [&](std::size_t it) {
        if (it == 0) {
            for (std::size_t i = 0; i < n; ++i) x[i] = random_position(spec.bounds, rng);
            for (std::size_t i = 0; i < n; ++i) evaluate(i);
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                double vel = config.inertia * v[i][j] + config.cognitive * r1 * (pbest[i][j] - x[i][j]) +
                             config.social * r2 * (gbest[j] - x[i][j]);
                vel = std::clamp(vel, -vmax[j], vmax[j]);
                v[i][j] = vel;
                x[i][j] = std::clamp(x[i][j] + vel, spec.bounds.lower[j], spec.bounds.upper[j]);
            }
        }
        for (std::size_t i = 0; i < n; ++i) evaluate(i);
    });
}

} // namespace clpb
