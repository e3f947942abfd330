#include "doctest.h"

#include "clpb/chaotic_maps.hpp"
#include "clpb/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace clpb;

TEST_SUITE("chaotic_maps") {

TEST_CASE("logistic orbit from 0.7 matches hand iteration") {
    ChaoticStream s(ChaoticMapKind::Logistic, 0.7);
    CHECK(s.next_unit() == doctest::Approx(0.84).epsilon(1e-15));
    CHECK(s.next_unit() == doctest::Approx(0.5376).epsilon(1e-15));
    CHECK(s.step_index() == 2);
}

TEST_CASE("seed validation follows the native range") {
    CHECK_THROWS_AS(ChaoticStream(ChaoticMapKind::Logistic, 1.5), DomainError);
    CHECK_THROWS_AS(ChaoticStream(ChaoticMapKind::Tent, -0.1), DomainError);
    CHECK_NOTHROW(ChaoticStream(ChaoticMapKind::Chebyshev, -0.5));
    CHECK_NOTHROW(ChaoticStream(ChaoticMapKind::Iterative, -1.0));
    CHECK_THROWS_AS(ChaoticStream(ChaoticMapKind::Sine, std::nan("")), DomainError);
}

TEST_CASE("single steps from 0.7") {
    // frac(1/0.7) = 3/7
    CHECK(ChaoticStream(ChaoticMapKind::GaussMouse, 0.7).next_raw() == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(ChaoticStream(ChaoticMapKind::Sine, 0.7).next_raw() == doctest::Approx(0.8090169943749475).epsilon(1e-12));

    // (10/3)(1 - 0.7) lands on 1, which the safeguard pushes back inside.
    const double tent = ChaoticStream(ChaoticMapKind::Tent, 0.7).next_raw();
    CHECK(tent < 1.0);
    CHECK(tent == doctest::Approx(1.0 - 1e-6).epsilon(1e-12));
}

TEST_CASE("gauss/mouse escapes the reciprocal trap at the nudge point") {
    // 0.7 -> 3/7 -> 1/3 -> 0, and frac(1 / 1e-6) is 0 again.
    ChaoticStream s(ChaoticMapKind::GaussMouse, 0.7);
    s.next_raw();
    s.next_raw();
    CHECK(s.next_raw() == 1e-6);
    const double second = s.next_raw();
    CHECK(second > 1e-6);
    CHECK(s.next_raw() != second);
}

TEST_CASE("unit mapping of symmetric maps") {
    CHECK(ChaoticStream::to_unit(ChaoticMapKind::Chebyshev, -1.0) == 0.0);
    CHECK(ChaoticStream::to_unit(ChaoticMapKind::Chebyshev, 1.0) == 1.0);
    CHECK(ChaoticStream::to_unit(ChaoticMapKind::Logistic, 0.25) == 0.25);

    for (auto kind : {ChaoticMapKind::Chebyshev, ChaoticMapKind::Iterative}) {
        ChaoticStream raw(kind, 0.7);
        ChaoticStream unit(kind, 0.7);
        for (int i = 0; i < 1000; ++i) CHECK(unit.next_unit() == (raw.next_raw() + 1.0) / 2.0);
    }
}

TEST_CASE("sample_sequence examples") {
    CHECK(sample_sequence(ChaoticMapKind::Logistic, 0.7, 0).empty());
    const auto two = sample_sequence(ChaoticMapKind::Logistic, 0.7, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == doctest::Approx(0.84));
    CHECK(two[1] == doctest::Approx(0.5376));
    const auto g = sample_sequence(ChaoticMapKind::GaussMouse, 0.7, 1);
    CHECK(g.at(0) == doctest::Approx(0.4285714285714));
}

TEST_CASE("every map stays in [0,1], repeats exactly and does not collapse") {
    constexpr std::size_t n = 100000;
    for (auto kind : kAllChaoticMaps) {
        CAPTURE(to_string(kind));
        const auto a = sample_sequence(kind, kDefaultChaoticSeed, n);
        const auto b = sample_sequence(kind, kDefaultChaoticSeed, n);
        CHECK(a == b);
        CHECK(std::all_of(a.begin(), a.end(), [](double u) { return u >= 0.0 && u <= 1.0; }));
        const auto tail = a.end() - 1000;
        CHECK_FALSE(std::all_of(tail, a.end(), [&](double u) { return u == *tail; }));
    }
}

TEST_CASE("other seeds in range also stay in [0,1]") {
    for (auto kind : kAllChaoticMaps) {
        const auto range = native_range(kind);
        for (double t : {0.0, 0.13, 0.5, 0.91, 1.0}) {
            const double x0 = range.lo + t * (range.hi - range.lo);
            const auto seq = sample_sequence(kind, x0, 5000);
            CAPTURE(to_string(kind));
            CAPTURE(x0);
            CHECK(std::all_of(seq.begin(), seq.end(), [](double u) { return u >= 0.0 && u <= 1.0; }));
        }
    }
}

TEST_CASE("name parsing") {
    for (auto kind : kAllChaoticMaps) CHECK(parse_chaotic_map(to_string(kind)) == kind);
    CHECK(parse_chaotic_map("Gauss/Mouse") == ChaoticMapKind::GaussMouse);
    CHECK(parse_chaotic_map("gauss") == ChaoticMapKind::GaussMouse);
    CHECK(parse_chaotic_map("LOGISTIC") == ChaoticMapKind::Logistic);
    CHECK_FALSE(parse_chaotic_map("henon").has_value());
}

} // TEST_SUITE
