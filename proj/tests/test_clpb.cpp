#include "doctest.h"

#include "clpb/clpb.hpp"
#include "clpb/errors.hpp"

#include <algorithm>
#include <numeric>

using namespace clpb;

namespace {

double total_fitness(const Population& p) {
    return std::accumulate(p.begin(), p.end(), 0.0, [](double s, const Individual& i) { return s + i.fitness; });
}

} // namespace

TEST_SUITE("clpb") {

TEST_CASE("variant numbering follows the map order") {
    CHECK(ClpbVariantId{ChaoticMapKind::Chebyshev}.name() == "CLPB1");
    CHECK(ClpbVariantId{ChaoticMapKind::Logistic}.name() == "CLPB5");
    CHECK(ClpbVariantId{ChaoticMapKind::Tent}.name() == "CLPB10");
    for (int n = 1; n <= 10; ++n) CHECK(ClpbVariantId::from_number(n).number() == n);
    CHECK_THROWS_AS(ClpbVariantId::from_number(11), ContractError);
}

TEST_CASE("chaotic initialization") {
    auto spec = make_function("TF1", 4);
    const auto pop = chaotic_init(ChaoticMapKind::Logistic, 5, spec);
    REQUIRE(pop.size() == 5);
    CHECK(pop[0].position[0] == doctest::Approx(68.0).epsilon(1e-12));
    CHECK(pop[0].position[1] == doctest::Approx(-100.0 + 0.5376 * 200.0).epsilon(1e-12));
    CHECK(pop[0].stale);

    const auto again = chaotic_init(ChaoticMapKind::Logistic, 5, spec);
    for (std::size_t i = 0; i < pop.size(); ++i) CHECK(pop[i].position == again[i].position);

    spec.bounds = Bounds::uniform(4, 2.5, 2.5);
    for (const auto& ind : chaotic_init(ChaoticMapKind::Tent, 3, spec)) {
        CHECK(std::all_of(ind.position.begin(), ind.position.end(), [](double g) { return g == 2.5; }));
    }
    CHECK_THROWS_AS(chaotic_init(ChaoticMapKind::Sine, 1, spec), ContractError);
}

TEST_CASE("chaotic initialization covers the unit interval") {
    const auto spec = make_function("TF1", 100);
    for (auto map : {ChaoticMapKind::Logistic, ChaoticMapKind::Piecewise, ChaoticMapKind::Sine, ChaoticMapKind::Tent,
                     ChaoticMapKind::Circle, ChaoticMapKind::GaussMouse}) {
        CAPTURE(to_string(map));
        const auto pop = chaotic_init(map, 100, spec);
        double lo = 1.0, hi = 0.0;
        for (const auto& ind : pop) {
            CHECK(spec.bounds.contains(ind.position));
            for (double g : ind.position) {
                const double u = (g + 100.0) / 200.0;
                lo = std::min(lo, u);
                hi = std::max(hi, u);
            }
        }
        CHECK(lo < 0.05);
        CHECK(hi > 0.95);
    }
}

TEST_CASE("interior crossover trivial cases") {
    const auto spec = make_function("TF1", 3);
    const Evaluator eval = [&](std::span<const double> x) { return spec.evaluate(x); };
    Rng rng(1);
    Population one{Individual(std::vector<double>{1.0, 2.0, 3.0})};
    one[0].set_cost(14.0);
    CHECK(interior_crossover_good(one, 1.0, spec.bounds, rng, eval)[0].position == one[0].position);

    Population pair;
    for (double v : {1.0, 2.0}) {
        Individual ind(std::vector<double>(3, v));
        ind.set_cost(spec.evaluate(ind.position));
        pair.push_back(std::move(ind));
    }
    const auto unchanged = interior_crossover_good(pair, 0.0, spec.bounds, rng, eval);
    CHECK(unchanged[0].position == pair[0].position);
    CHECK(unchanged[1].position == pair[1].position);
}

TEST_CASE("interior crossover never loses fitness") {
    const auto spec = make_function("TF9", 6);
    const Evaluator eval = [&](std::span<const double> x) { return spec.evaluate(x); };
    Rng rng(2024);
    for (int t = 0; t < 300; ++t) {
        Population good;
        const std::size_t n = 1 + rng.index(9);
        for (std::size_t i = 0; i < n; ++i) {
            Individual ind(random_position(spec.bounds, rng));
            ind.set_cost(spec.evaluate(ind.position));
            good.push_back(std::move(ind));
        }
        sort_by_fitness_desc(good);
        const double before_total = total_fitness(good);
        const double before_best = good.front().fitness;
        const auto kind = static_cast<CrossoverKind>(t % 3);
        const auto after = interior_crossover_good(good, 0.9, spec.bounds, rng, eval, kind);
        CHECK(after.size() == good.size());
        CHECK(total_fitness(after) >= before_total);
        CHECK(after.front().fitness >= before_best);
        CHECK(std::is_sorted(after.begin(), after.end(),
                             [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; }));
        for (const auto& ind : after) CHECK(spec.evaluate(ind.position) == ind.cost);
    }
}

TEST_CASE("without its two modifications CLPB is LPB") {
    for (const char* id : {"TF1", "TF10"}) {
        const auto spec = make_function(id, 8);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            LpbConfig c;
            c.max_iterations = 40;
            c.seed = seed;
            const auto a = run_clpb(c, spec, true);
            const auto b = run_lpb(c, spec);
            CHECK(a.best_cost == b.best_cost);
            CHECK(a.history == b.history);
            CHECK(a.best_position == b.best_position);
        }
    }
    CHECK_THROWS_AS(run_clpb(LpbConfig{}, make_function("TF1", 2)), ContractError);
}

TEST_CASE("chaotic runs differ by map and repeat by seed") {
    const auto spec = make_function("TF10", 6);
    LpbConfig base;
    base.max_iterations = 30;
    const auto logistic = run_clpb(clpb_config(ChaoticMapKind::Logistic, base), spec);
    const auto logistic2 = run_clpb(clpb_config(ChaoticMapKind::Logistic, base), spec);
    const auto tent = run_clpb(clpb_config(ChaoticMapKind::Tent, base), spec);
    CHECK(logistic.history == logistic2.history);
    CHECK(logistic.history != tent.history);
    CHECK(std::is_sorted(logistic.history.rbegin(), logistic.history.rend()));
}

} // TEST_SUITE
