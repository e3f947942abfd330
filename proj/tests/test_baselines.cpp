#include "doctest.h"

#include "clpb/baselines.hpp"
#include "clpb/errors.hpp"

#include <algorithm>

using namespace clpb;

TEST_SUITE("baselines") {

TEST_CASE("GA contract") {
    const auto spec = make_function("TF9", 5);
    GaConfig c;
    c.max_iterations = 40;
    c.seed = 3;
    const auto a = run_ga(c, spec);
    const auto b = run_ga(c, spec);
    CHECK(a.history == b.history);
    CHECK(a.best_position == b.best_position);
    CHECK(a.history.size() == 41);
    CHECK(std::is_sorted(a.history.rbegin(), a.history.rend()));
    CHECK(spec.bounds.contains(a.best_position));

    c.max_iterations = 0;
    const auto init = run_ga(c, spec);
    CHECK(init.evaluations == c.pop_size);
    CHECK(init.history.size() == 1);
}

TEST_CASE("PSO contract") {
    const auto spec = make_function("TF10", 5);
    PsoConfig c;
    c.max_iterations = 40;
    c.seed = 3;
    const auto a = run_pso(c, spec);
    CHECK(a.history == run_pso(c, spec).history);
    CHECK(std::is_sorted(a.history.rbegin(), a.history.rend()));
    CHECK(spec.bounds.contains(a.best_position));
}

TEST_CASE("a PSO swarm without forces stays frozen") {
    const auto spec = make_function("TF1", 4);
    PsoConfig c;
    c.inertia = 0.0;
    c.cognitive = 0.0;
    c.social = 0.0;
    c.max_iterations = 25;
    const auto r = run_pso(c, spec);
    CHECK(r.history.front() == r.history.back());
}

TEST_CASE("budgets are honoured by both baselines") {
    const auto spec = make_function("TF1", 3);
    for (std::size_t budget : {1u, 45u, 301u}) {
        GaConfig g;
        g.budget = {budget, 0};
        const auto rg = run_ga(g, spec);
        CHECK(rg.evaluations <= budget);
        CHECK(rg.budget_exhausted);
        PsoConfig p;
        p.budget = {budget, 0};
        const auto rp = run_pso(p, spec);
        CHECK(rp.evaluations <= budget);
        CHECK(rp.budget_exhausted);
    }
}

TEST_CASE("invalid baseline configurations") {
    const auto spec = make_function("TF1", 3);
    GaConfig g;
    g.elitism_count = g.pop_size;
    CHECK_THROWS_AS(run_ga(g, spec), ContractError);
    PsoConfig p;
    p.inertia = 1.5;
    CHECK_THROWS_AS(run_pso(p, spec), ContractError);
    p = {};
    p.social = -1.0;
    CHECK_THROWS_AS(run_pso(p, spec), ContractError);
}

} // TEST_SUITE
