#include "doctest.h"

#include "clpb/errors.hpp"
#include "clpb/lpb.hpp"

#include <algorithm>
#include <set>

using namespace clpb;

namespace {

Population with_fitnesses(std::initializer_list<double> fitnesses) {
    Population pop;
    for (double f : fitnesses) {
        Individual ind(std::vector<double>{f});
        ind.set_cost(1.0 / f - 1.0);
        pop.push_back(std::move(ind));
    }
    return pop;
}

bool non_increasing(const std::vector<double>& h) {
    return std::is_sorted(h.rbegin(), h.rend());
}

} // namespace

TEST_SUITE("lpb") {

TEST_CASE("sub-population size") {
    Rng rng(1);
    const auto m = with_fitnesses({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95});
    CHECK(split_subpopulation(m, 0.5, rng).size() == 5);
    CHECK(split_subpopulation(m, 0.05, rng).size() == 2);

    const auto all = split_subpopulation(m, 1.0, rng);
    REQUIRE(all.size() == m.size());
    std::set<std::size_t> origins;
    for (const auto& ind : all) {
        origins.insert(*ind.origin);
        CHECK(ind.position == m[*ind.origin].position);
    }
    CHECK(origins.size() == m.size());
}

TEST_CASE("good/bad division") {
    auto [good, bad] = divide_good_bad(with_fitnesses({0.5, 0.4, 0.3, 0.2}));
    REQUIRE(good.size() == 2);
    CHECK(good[0].fitness == 0.5);
    CHECK(good[1].fitness == 0.4);
    CHECK(bad[0].fitness == 0.3);

    auto odd = divide_good_bad(with_fitnesses({0.5, 0.4, 0.3}));
    CHECK(odd.good.size() == 2);
    CHECK(odd.bad.size() == 1);

    CHECK_THROWS_AS(divide_good_bad(with_fitnesses({0.1, 0.5})), ContractError);
}

TEST_CASE("classification thresholds are inclusive") {
    const auto m = with_fitnesses({0.2, 0.5, 0.6, 0.8, 0.9});
    const auto pools = classify(m, 0.8, 0.5);
    CHECK(pools.bad.size() == 2);     // 0.2 and 0.5 (equal to bad_max)
    CHECK(pools.good.size() == 2);    // 0.6 and 0.8 (equal to good_max)
    CHECK(pools.perfect.size() == 1); // 0.9
    CHECK(pools.perfect[0].fitness == doctest::Approx(0.9));
}

TEST_CASE("classification partitions the population") {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        Population m;
        for (int i = 0; i < 20; ++i) {
            Individual ind(std::vector<double>{0.0});
            ind.set_cost(rng.uniform(0.0, 10.0));
            m.push_back(std::move(ind));
        }
        double a = fitness_from_cost(rng.uniform(0.0, 10.0));
        double b = fitness_from_cost(rng.uniform(0.0, 10.0));
        const double good_max = std::max(a, b);
        const double bad_max = std::min(a, b);
        const auto pools = classify(m, good_max, bad_max);
        CHECK(pools.perfect.size() + pools.good.size() + pools.bad.size() == m.size());
        std::set<std::size_t> seen;
        for (const auto* pool : {&pools.perfect, &pools.good, &pools.bad}) {
            for (const auto& ind : *pool) CHECK(seen.insert(*ind.origin).second);
        }
        for (const auto& ind : pools.perfect) CHECK(ind.fitness > good_max);
        for (const auto& ind : pools.good) {
            CHECK(ind.fitness > bad_max);
            CHECK(ind.fitness <= good_max);
        }
        for (const auto& ind : pools.bad) CHECK(ind.fitness <= bad_max);
    }
}

TEST_CASE("learner admission drains pools in order") {
    Rng rng(5);
    LearnerPools full{with_fitnesses({0.9, 0.95, 0.99, 0.97}), with_fitnesses({0.5}), with_fitnesses({0.1})};
    const auto from_pf = fill_next(full, 3, rng);
    for (const auto& ind : from_pf) CHECK(ind.fitness > 0.8);

    LearnerPools only_bad{{}, {}, with_fitnesses({0.1, 0.2, 0.3})};
    CHECK(fill_next(only_bad, 3, rng).size() == 3);

    LearnerPools mixed{with_fitnesses({0.9}), with_fitnesses({0.5, 0.6, 0.7}), with_fitnesses({0.1})};
    const auto next = fill_next(mixed, 3, rng);
    REQUIRE(next.size() == 3);
    CHECK(next[0].fitness == doctest::Approx(0.9));
    CHECK(next[1].fitness >= 0.5);
    CHECK(next[1].fitness <= 0.7);
    CHECK(next[2].fitness >= 0.5);
    CHECK(next[2].fitness <= 0.7);

    LearnerPools tiny{{}, with_fitnesses({0.5}), {}};
    CHECK_THROWS_AS(fill_next(tiny, 2, rng), ContractError);
}

TEST_CASE("zero iterations returns the best of the initial population") {
    LpbConfig c;
    c.max_iterations = 0;
    c.seed = 9;
    const auto spec = make_function("TF1", 5);
    const auto r = run_lpb(c, spec);
    CHECK(r.evaluations == c.pop_size);
    CHECK(r.history.size() == 1);
    CHECK(r.history[0] == r.best_cost);
    CHECK(spec.evaluate(r.best_position) == r.best_cost);
}

TEST_CASE("runs are reproducible and keep their contract") {
    const auto spec = make_function("TF9", 6);
    for (auto survival : {SurvivalKind::MergeTruncate, SurvivalKind::Generational}) {
        LpbConfig c;
        c.max_iterations = 60;
        c.seed = 42;
        c.survival = survival;
        const auto a = run_lpb(c, spec);
        const auto b = run_lpb(c, spec);
        CHECK(a.best_cost == b.best_cost);
        CHECK(a.best_position == b.best_position);
        CHECK(a.history == b.history);
        CHECK(a.evaluations == b.evaluations);
        CHECK(a.history.size() == c.max_iterations + 1);
        CHECK(non_increasing(a.history));
        CHECK(a.history.back() == a.best_cost);
        CHECK(spec.bounds.contains(a.best_position));
        CHECK(spec.evaluate(a.best_position) == a.best_cost);

        c.seed = 43;
        CHECK(run_lpb(c, spec).history != a.history);
    }
}

TEST_CASE("evaluation budget is honoured") {
    const auto spec = make_function("TF1", 4);
    for (std::size_t budget : {1u, 29u, 30u, 31u, 97u, 500u}) {
        LpbConfig c;
        c.budget = {budget, 0};
        c.max_iterations = 1000;
        c.interior_crossover = true;
        const auto r = run_lpb(c, spec);
        CAPTURE(budget);
        CHECK(r.evaluations <= budget);
        CHECK(r.budget_exhausted);
        CHECK(non_increasing(r.history));
    }
}

TEST_CASE("n_learners below pop_size and every operator combination run") {
    const auto spec = make_function("TF10", 5);
    for (auto x : {CrossoverKind::SinglePoint, CrossoverKind::Uniform, CrossoverKind::Arithmetic}) {
        for (auto m : {MutationKind::UniformReset, MutationKind::Gaussian}) {
            for (auto s : {SelectionKind::Roulette, SelectionKind::Tournament}) {
                LpbConfig c;
                c.n_learners = 12;
                c.max_iterations = 20;
                c.crossover = x;
                c.mutation = m;
                c.selection = s;
                const auto r = run_lpb(c, spec);
                CHECK(non_increasing(r.history));
                CHECK(spec.bounds.contains(r.best_position));
            }
        }
    }
}

TEST_CASE("configuration validation") {
    const auto spec = make_function("TF1", 3);
    LpbConfig c;
    c.pop_size = 1;
    CHECK_THROWS_AS(run_lpb(c, spec), ContractError);
    c = {};
    c.dp = 0.0;
    CHECK_THROWS_AS(run_lpb(c, spec), ContractError);
    c = {};
    c.n_learners = 31;
    CHECK_THROWS_AS(run_lpb(c, spec), ContractError);
    c = {};
    c.crossover_rate = 1.5;
    CHECK_THROWS_AS(run_lpb(c, spec), ContractError);
}

} // TEST_SUITE
