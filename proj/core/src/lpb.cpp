#include "clpb/lpb.hpp"

#include "clpb/clpb.hpp"
#include "clpb/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace clpb {

std::string_view to_string(SurvivalKind k) {
    switch (k) {
    case SurvivalKind::MergeTruncate: return "merge_truncate";
    case SurvivalKind::Generational: return "generational";
    }
    return "unknown";
}

std::optional<SurvivalKind> parse_survival(std::string_view s) {
    for (auto k : {SurvivalKind::MergeTruncate, SurvivalKind::Generational}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

void LpbConfig::validate() const {
    detail::require(pop_size >= 2, "pop_size must be at least 2");
    detail::require(dp > 0.0 && dp <= 1.0, "dp must lie in (0, 1]");
    detail::require(learners() >= 1 && learners() <= pop_size, "n_learners must lie in [1, pop_size]");
    detail::require(crossover_rate >= 0.0 && crossover_rate <= 1.0, "crossover_rate must lie in [0, 1]");
    if (mutation_rate) {
        detail::require(*mutation_rate >= 0.0 && *mutation_rate <= 1.0, "mutation_rate must lie in [0, 1]");
    }
    detail::require(mutation_sigma > 0.0, "mutation_sigma must be positive");
    detail::require(budget.max_evaluations > 0, "budget must allow at least one evaluation");
    detail::require(budget.used <= budget.max_evaluations, "budget already overdrawn");
}

Population split_subpopulation(std::span<const Individual> main, double dp, Rng& rng) {
    detail::require(main.size() >= 2, "split_subpopulation: |M| must be at least 2");
    detail::require(dp > 0.0 && dp <= 1.0, "split_subpopulation: dp must lie in (0, 1]");
    const auto wanted = static_cast<std::size_t>(std::lround(dp * static_cast<double>(main.size())));
    const std::size_t count = std::min(main.size(), std::max<std::size_t>(2, wanted));

    std::vector<std::size_t> idx(main.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Population out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.index(idx.size() - i);
        std::swap(idx[i], idx[j]);
        Individual copy = main[idx[i]];
        copy.origin = idx[i];
        out.push_back(std::move(copy));
    }
    return out;
}

GoodBad divide_good_bad(Population sorted) {
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        detail::require(sorted[i - 1].fitness >= sorted[i].fitness,
                        "divide_good_bad: O must be sorted by descending fitness");
    }
    const std::size_t half = (sorted.size() + 1) / 2;
    GoodBad out;
    out.bad.assign(std::make_move_iterator(sorted.begin() + static_cast<std::ptrdiff_t>(half)),
                   std::make_move_iterator(sorted.end()));
    sorted.resize(half);
    out.good = std::move(sorted);
    return out;
}

LearnerPools classify(std::span<const Individual> main, double good_max, double bad_max) {
    detail::require(good_max >= bad_max, "classify: good threshold below bad threshold");
    LearnerPools pools;
    for (std::size_t i = 0; i < main.size(); ++i) {
        detail::require(!main[i].stale, "classify: population has unevaluated members");
        Individual m = main[i];
        m.origin = i;
        if (m.fitness <= bad_max) pools.bad.push_back(std::move(m));
        else if (m.fitness <= good_max) pools.good.push_back(std::move(m));
        else pools.perfect.push_back(std::move(m));
    }
    return pools;
}

Population fill_next(LearnerPools pools, std::size_t n_learners, Rng& rng) {
    Population out;
    out.reserve(n_learners);
    while (out.size() < n_learners) {
        Population* pool = !pools.perfect.empty() ? &pools.perfect : !pools.good.empty() ? &pools.good : &pools.bad;
        detail::require(!pool->empty(), "fill_next: all pools exhausted before n_learners were admitted");
        const std::size_t pick = select_indices(*pool, 1, rng).front();
        out.push_back(std::move((*pool)[pick]));
        pool->erase(pool->begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

namespace {

class LpbRun {
  public:
    LpbRun(const LpbConfig& config, const ObjectiveSpec& spec)
        : config_(config),
          spec_(spec),
          objective_(spec, config.budget, mix_seed(config.seed ^ 0x6e6f697365ULL)),
          rng_(mix_seed(config.seed)),
          mutation_{config.mutation, config.mutation_sigma},
          mutation_rate_(config.mutation_rate_for(spec.dim)) {}

    RunResult execute() {
        const auto start = std::chrono::steady_clock::now();
        std::size_t attempted = 0;
        try {
            initialize();
            result_.history.push_back(best_cost_);
            if (config_.max_iterations > 0) form_sub_population();
            for (std::size_t it = 1; it <= config_.max_iterations; ++it) {
                attempted = it;
                iterate();
                result_.iterations = it;
                result_.history.push_back(best_cost_);
            }
        } catch (const BudgetExhausted&) {
            // Close the interrupted step with the best cost evaluated so far.
            result_.budget_exhausted = true;
            if (result_.history.size() < attempted + 1) result_.history.push_back(best_cost_);
            result_.iterations = attempted;
        }
        const auto stop = std::chrono::steady_clock::now();
        result_.best_cost = best_cost_;
        result_.best_position = best_position_;
        result_.evaluations = objective_.used();
        result_.wall_time = std::chrono::duration<double>(stop - start).count();
        return std::move(result_);
    }

  private:
    void initialize() {
        if (config_.init.kind == Initialization::Kind::Chaotic) {
            main_ = chaotic_init(config_.init.map, config_.pop_size, spec_, config_.init.x0);
        } else {
            main_.reserve(config_.pop_size);
            for (std::size_t i = 0; i < config_.pop_size; ++i) {
                main_.emplace_back(random_position(spec_.bounds, rng_));
            }
        }
        evaluate_stale(main_);
    }

    void evaluate(Individual& ind) {
        clamp_in_place(ind.position, spec_.bounds);
        ind.set_cost(objective_(ind.position));
        if (ind.cost < best_cost_) {
            best_cost_ = ind.cost;
            best_position_ = ind.position;
        }
    }

    void evaluate_stale(Population& pop) {
        for (Individual& ind : pop) {
            if (ind.stale) evaluate(ind);
        }
    }

    // Evaluator handed to interior crossover; keeps best-ever bookkeeping.
    double evaluate_point(std::span<const double> x) {
        const double c = objective_(x);
        if (c < best_cost_) {
            best_cost_ = c;
            best_position_.assign(x.begin(), x.end());
        }
        return c;
    }

    // Split, sort and divide; with interior crossover the good half is
    // improved in place and improvements are written back to M.
    GoodBad form_sub_population() {
        Population sub = split_subpopulation(main_, config_.dp, rng_);
        sort_by_fitness_desc(sub);
        GoodBad halves = divide_good_bad(std::move(sub));
        if (config_.interior_crossover) {
            const Evaluator eval = [this](std::span<const double> x) { return evaluate_point(x); };
            try {
                interior_crossover_in_place(halves.good, config_.crossover_rate, spec_.bounds, rng_, eval,
                                            config_.crossover);
            } catch (const BudgetExhausted&) {
                write_back(halves.good);
                throw;
            }
            write_back(halves.good);
        }
        return halves;
    }

    void write_back(const Population& improved) {
        for (const Individual& ind : improved) {
            if (!ind.origin || ind.stale) continue;
            Individual& slot = main_[*ind.origin];
            if (ind.fitness > slot.fitness) {
                slot.position = ind.position;
                slot.set_cost(ind.cost);
            }
        }
    }

    // Pairs consecutive members and recombines them.
    Population recombine(const Population& parents) {
        Population children;
        children.reserve(parents.size());
        for (std::size_t i = 0; i + 1 < parents.size(); i += 2) {
            auto [c1, c2] = crossover(parents[i], parents[i + 1], config_.crossover_rate, rng_, config_.crossover);
            children.push_back(std::move(c1));
            children.push_back(std::move(c2));
        }
        if (parents.size() % 2 == 1) children.push_back(parents.back());
        return children;
    }

    void iterate() {
        GoodBad halves = form_sub_population();

        // Half of the good individuals are selected and recombined.
        const std::size_t half = std::min(halves.good.size(), std::max<std::size_t>(2, (halves.good.size() + 1) / 2));
        Population chosen = select(halves.good, half, rng_, config_.selection);
        Population elite_children = recombine(chosen);
        for (Individual& c : elite_children) c.origin.reset();

        Population offspring;
        if (config_.survival == SurvivalKind::Generational) {
            // Children take their parents' slots in M.
            for (std::size_t i = 0; i < elite_children.size(); ++i) {
                if (elite_children[i].stale) {
                    Individual& slot = main_[*chosen[i].origin];
                    slot.position = elite_children[i].position;
                    slot.mark_stale();
                }
            }
        } else {
            for (Individual& c : elite_children) {
                if (c.stale) offspring.push_back(std::move(c));
            }
        }
        evaluate_stale(main_);
        evaluate_stale(offspring);

        const double good_max = halves.good.front().fitness;
        const double bad_max = halves.bad.empty() ? good_max : halves.bad.front().fitness;
        LearnerPools pools = classify(main_, good_max, std::min(bad_max, good_max));
        Population learners = fill_next(std::move(pools), config_.learners(), rng_);

        Population next = recombine(learners);
        for (Individual& ind : next) {
            ind = mutate(std::move(ind), mutation_rate_, spec_.bounds, rng_, mutation_);
            ind.origin.reset();
        }

        if (config_.survival == SurvivalKind::Generational) {
            // Keep |M| constant when fewer learners than members are admitted.
            if (next.size() < main_.size()) {
                Population rest = main_;
                sort_by_fitness_desc(rest);
                for (std::size_t i = 0; next.size() < main_.size(); ++i) next.push_back(rest[i]);
            }
            evaluate_stale(next);
            main_ = std::move(next);
        } else {
            for (Individual& c : next) {
                if (c.stale) offspring.push_back(std::move(c));
            }
            evaluate_stale(offspring);
            Population merged = std::move(main_);
            for (Individual& c : offspring) merged.push_back(std::move(c));
            sort_by_fitness_desc(merged);
            merged.resize(config_.pop_size);
            main_ = std::move(merged);
        }
    }

    const LpbConfig& config_;
    const ObjectiveSpec& spec_;
    CountedObjective objective_;
    Rng rng_;
    MutationParams mutation_;
    double mutation_rate_;
    Population main_;
    double best_cost_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_position_;
    RunResult result_;
};

} // namespace

RunResult run_lpb(const LpbConfig& config, const ObjectiveSpec& spec) {
    config.validate();
    LpbRun run(config, spec);
    return run.execute();
}

} // namespace clpb
