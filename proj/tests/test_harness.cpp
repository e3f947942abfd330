#include "doctest.h"

#include "clpb/errors.hpp"
#include "clpb/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace clpb;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("clpb_harness_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SummaryStats stats_with_mean(double mean, double std = 0.0, double pt = 0.0) {
    SummaryStats s;
    s.mean = mean;
    s.std = std;
    s.mean_pt = pt;
    s.n = 30;
    return s;
}

ExperimentPlan small_plan() {
    return parse_plan(R"({
        "runs": 3, "base_seed": 11,
        "functions": ["TF1", {"id": "TF10", "dim": 4}],
        "algorithms": [
            {"id": "clpb", "map": "all", "max_iterations": 10, "pop_size": 10},
            {"id": "lpb", "max_iterations": 10, "pop_size": 10},
            {"id": "ga", "max_iterations": 10},
            {"id": "pso", "max_iterations": 10}
        ]})");
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("run_cell seeds run i with base_seed + i") {
    const auto spec = make_function("TF1", 5);
    LpbConfig c;
    c.max_iterations = 15;
    const auto alg = lpb_algorithm(c);
    const auto single = run_cell(alg, spec, 1, 77);
    CHECK(single[0].history == run_algorithm(alg, spec, 77).history);

    const auto serial = run_cell(alg, spec, 6, 100, 1);
    const auto parallel = run_cell(alg, spec, 6, 100, 4);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].history == parallel[i].history);
        CHECK(serial[i].history == run_algorithm(alg, spec, 100 + i).history);
    }
    CHECK_THROWS_AS(run_cell(alg, spec, 0, 1), ContractError);
}

TEST_CASE("run errors carry cell context") {
    const auto spec = make_function("TF1", 5);
    LpbConfig bad;
    bad.pop_size = 1;
    try {
        run_cell(lpb_algorithm(bad), spec, 2, 5);
        FAIL("expected an error");
    } catch (const ContractError& e) {
        CHECK(std::string(e.what()).find("TF1/LPB run 0 (seed 5)") != std::string::npos);
    }
}

TEST_CASE("summaries") {
    const std::vector<double> one{3.0};
    CHECK(summarize_values(one).mean == 3.0);
    CHECK(summarize_values(one).std == 0.0);
    const std::vector<double> three{1.0, 2.0, 3.0};
    const auto s = summarize_values(three, three);
    CHECK(s.mean == 2.0);
    CHECK(s.std == 1.0);
    CHECK(s.mean_pt == 2.0);
    CHECK(s.n == 3);
    const std::vector<double> same{4.0, 4.0, 4.0};
    CHECK(summarize_values(same).std == 0.0);
    CHECK_THROWS_AS(summarize_values({}), ContractError);

    std::vector<RunResult> runs(2);
    runs[0].best_cost = 1.0;
    runs[0].wall_time = 0.5;
    runs[1].best_cost = 3.0;
    runs[1].wall_time = 1.5;
    const auto r = summarize(runs);
    CHECK(r.mean == 2.0);
    CHECK(r.mean_pt == 1.0);
}

TEST_CASE("averaging the ten CLPB variants") {
    std::vector<SummaryStats> v;
    for (int i = 1; i <= 10; ++i) v.push_back(stats_with_mean(i, 0.1 * i, 2.0));
    const auto avg = average_clpb_variants(v);
    CHECK(avg.mean == 5.5);
    CHECK(avg.std == doctest::Approx(0.55));
    CHECK(avg.mean_pt == 2.0);
    CHECK(avg.pooled);

    std::reverse(v.begin(), v.end());
    CHECK(average_clpb_variants(v).mean == avg.mean);
    CHECK(average_clpb_variants(v).std == avg.std);

    std::vector<SummaryStats> same(10, stats_with_mean(1.25, 0.5, 3.0));
    const auto s = average_clpb_variants(same);
    CHECK(s.mean == 1.25);
    CHECK(s.std == 0.5);
    v.pop_back();
    CHECK_THROWS_AS(average_clpb_variants(v), ContractError);
}

TEST_CASE("ranking") {
    std::vector<CellStats> cells{{"TF1", "A", stats_with_mean(2)}, {"TF1", "B", stats_with_mean(1)},
                                 {"TF1", "C", stats_with_mean(3)}};
    auto t = rank_table(cells);
    CHECK(t.algorithms == std::vector<std::string>{"A", "B", "C"});
    CHECK(t.ranks[0][0] == 2);
    CHECK(t.ranks[0][1] == 1);
    CHECK(t.ranks[0][2] == 3);

    std::vector<CellStats> ties{{"TF1", "A", stats_with_mean(5)}, {"TF1", "B", stats_with_mean(5)},
                                {"TF1", "C", stats_with_mean(5)}};
    const auto tied = rank_table(ties);
    for (const auto& r : tied.ranks[0]) CHECK(r == 1);

    std::vector<CellStats> partial{{"TF1", "A", stats_with_mean(5)}, {"TF1", "B", stats_with_mean(4)},
                                   {"TF2", "A", stats_with_mean(1)}};
    auto p = rank_table(partial);
    CHECK(p.warnings.size() == 1);
    CHECK(p.average["B"].num == 1);
    CHECK(p.average["B"].den == 1);
    CHECK(p.average["A"].num == 3);
    CHECK(p.average["A"].den == 2);
}

TEST_CASE("ranks ignore per-function scaling") {
    Rng rng(4);
    std::vector<CellStats> cells;
    for (const char* f : {"TF1", "TF2", "TF3"}) {
        for (const char* a : {"A", "B", "C", "D"}) cells.push_back({f, a, stats_with_mean(rng.uniform(0, 10))});
    }
    const auto before = rank_table(cells);
    for (auto& c : cells) {
        if (c.function == "TF2") c.stats.mean *= 1234.5;
    }
    CHECK(rank_table(cells).ranks == before.ranks);
}

TEST_CASE("rank fixture averages") {
    const auto results = load_results(std::filesystem::path(CLPB_FIXTURE_DIR) / "table1");
    const auto t = rank_table(cell_stats(results));
    const Rational overall = t.average.at("CLPB");
    CHECK(overall.num == 42);
    CHECK(overall.den == 17);
    CHECK(overall.value() == doctest::Approx(2.4705).epsilon(1e-4));
    CHECK(t.category_average.at(Category::Unimodal).at("CLPB").value() == doctest::Approx(3.1428).epsilon(1e-4));
    CHECK(t.category_average.at(Category::Multimodal).at("CLPB").value() == doctest::Approx(2.1667).epsilon(1e-4));
    CHECK(t.category_average.at(Category::Composite).at("CLPB").value() == doctest::Approx(1.75).epsilon(1e-4));
}

TEST_CASE("t-tests") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{2, 3, 4, 5, 6};
    const auto w = welch_t_test(a, b);
    CHECK(w.t == doctest::Approx(-1.0));
    CHECK(w.df == doctest::Approx(8.0));
    CHECK(w.p == doctest::Approx(0.34659350708733416).epsilon(1e-9));
    CHECK(t_test(b, a) == t_test(a, b));
    CHECK(t_test(a, a) == 1.0);

    const std::vector<double> zeros{0, 0, 0, 0};
    const std::vector<double> hundreds{100, 100, 100, 100};
    CHECK(t_test(zeros, hundreds) == 0.0);
    CHECK(t_test(zeros, zeros) == 1.0);
    const std::vector<double> single{1.0};
    CHECK(t_test(single, a) == 1.0);

    const std::vector<double> u{1.5, 2.25, 3, 8};
    const std::vector<double> v{0.5, 1, 9, 10, 12};
    const auto uv = welch_t_test(u, v);
    CHECK(uv.df == doctest::Approx(6.371067436533383).epsilon(1e-9));
    CHECK(uv.p == doctest::Approx(0.3537651999087906).epsilon(1e-9));

    const std::vector<double> c{2, 3, 4, 5, 7};
    const auto paired = paired_t_test(a, c);
    CHECK(paired.t == doctest::Approx(-6.0));
    CHECK(paired.p == doctest::Approx(0.003882537046960512).epsilon(1e-9));
    CHECK_THROWS_AS(paired_t_test(a, u), ContractError);
}

TEST_CASE("plan parsing") {
    const auto plan = small_plan();
    CHECK(plan.runs_per_cell == 3);
    CHECK(plan.base_seed == 11);
    REQUIRE(plan.functions.size() == 2);
    CHECK(plan.functions[1].dim == 4u);
    CHECK(plan.algorithms.size() == 13);
    CHECK(plan.algorithms[0].label == "CLPB1");
    CHECK(plan.algorithms[9].label == "CLPB10");
    REQUIRE(plan.clpb_groups.size() == 1);
    CHECK(plan.clpb_groups[0].label == "CLPB");
    CHECK(std::get<LpbConfig>(plan.algorithms[4].config).init.map == ChaoticMapKind::Logistic);

    const auto cat = parse_plan(R"({"functions": ["unimodal"], "algorithms": ["lpb"]})");
    CHECK(cat.functions.size() == 7);
    CHECK(cat.runs_per_cell == 1);

    auto error_key = [](std::string_view text) -> std::string {
        try {
            parse_plan(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return "<no error>";
    };
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": ["lpb"], "rnus": 3})") == "rnus");
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": [{"id": "lpb", "dp": 2}]})") == "algorithms[0]");
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": [{"id": "da"}]})") == "algorithms[0].id");
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": [{"id": "clpb", "map": "henon"}]})") ==
          "algorithms[0].map");
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": [{"id": "clpb", "x0": 3}]})") == "algorithms[0].x0");
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": [{"id": "ga", "pop_size": "big"}]})") ==
          "algorithms[0].pop_size");
    CHECK(error_key(R"({"functions": [{"id": "TF1", "dims": 3}], "algorithms": ["lpb"]})") == "functions[0].dims");
    CHECK(error_key(R"({"functions": ["TF77"], "algorithms": ["lpb"]})") == "functions[0]");
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": ["lpb", "lpb"]})") == "algorithms[1]");
    CHECK(error_key(R"({"functions": ["TF1"]})") == "algorithms");
    CHECK(error_key(R"({"functions": ["TF1"], "algorithms": ["lpb"], "runs": 0})") == "runs");
    CHECK_THROWS_WITH_AS(parse_plan("{\n  \"runs\": 1,\n  oops\n}"), doctest::Contains("line 3"), ConfigError);
}

TEST_CASE("experiments run, group CLPB variants and persist deterministically") {
    auto plan = small_plan();
    std::vector<std::string> seen;
    const auto results = run_experiment(plan, [&](const CellResult& c) { seen.push_back(c.algorithm); });
    CHECK(results.cells.size() == 2 * 14);
    CHECK(seen.size() == results.cells.size());
    const auto& group = results.cells[13];
    CHECK(group.algorithm == "CLPB");
    CHECK(group.members.size() == 10);
    CHECK(group.stats.pooled);
    std::vector<SummaryStats> members(10);
    for (std::size_t i = 0; i < 10; ++i) members[i] = results.cells[i].stats;
    CHECK(group.stats.mean == average_clpb_variants(members).mean);
    for (const auto& c : results.cells) {
        for (const auto& r : c.runs) CHECK(std::is_sorted(r.history.rbegin(), r.history.rend()));
    }

    const auto d1 = scratch_dir("a");
    const auto d2 = scratch_dir("b");
    persist(results, d1);
    plan.jobs = 3;
    persist(run_experiment(plan), d2);
    CHECK(slurp(d1 / "results.json") == slurp(d2 / "results.json"));
    CHECK(slurp(d1 / "ranks.csv") == slurp(d2 / "ranks.csv"));
    CHECK(slurp(d1 / "convergence.csv") == slurp(d2 / "convergence.csv"));
    CHECK(slurp(d1 / "summary.csv").rfind("function,algorithm,mean,std,pt_seconds\n", 0) == 0);
    CHECK(slurp(d1 / "ranks.csv").rfind("function,rank:CLPB1,", 0) == 0);

    const std::string json = slurp(d1 / "results.json");
    CHECK(json.find("\"map\": \"logistic\"") != std::string::npos);
    CHECK(json.find("\"provenance\"") != std::string::npos);
    CHECK(json.find("\"mutation_rate\"") != std::string::npos);
    CHECK(json.find("\"std_method\": \"mean_of_member_stds\"") != std::string::npos);

    const auto loaded = load_results(d1);
    REQUIRE(loaded.cells.size() == results.cells.size());
    for (std::size_t i = 0; i < loaded.cells.size(); ++i) {
        CHECK(loaded.cells[i].stats.mean == results.cells[i].stats.mean);
        CHECK(loaded.cells[i].stats.std == results.cells[i].stats.std);
        CHECK(loaded.cells[i].stats.mean_pt == results.cells[i].stats.mean_pt);
        CHECK(loaded.cells[i].runs.size() == results.cells[i].runs.size());
    }
    CHECK(results_to_json(loaded) == results_to_json(results));
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
}

TEST_CASE("a failing run still reports completed cells") {
    ExperimentPlan plan;
    plan.functions = {{"TF1", 3}};
    LpbConfig ok;
    ok.max_iterations = 5;
    LpbConfig broken;
    broken.pop_size = 0;
    plan.algorithms = {lpb_algorithm(ok), {AlgorithmKind::Lpb, "BROKEN", broken}};
    try {
        run_experiment(plan);
        FAIL("expected ExperimentError");
    } catch (const ExperimentError& e) {
        CHECK(e.partial().cells.size() == 1);
        CHECK(e.partial().cells[0].algorithm == "LPB");
    }
}

TEST_CASE("persist reports unwritable paths") {
    ExperimentResults r;
    CHECK_THROWS_WITH(persist(r, "/proc/clpb-cannot-write"), doctest::Contains("/proc/clpb-cannot-write"));
}

} // TEST_SUITE
