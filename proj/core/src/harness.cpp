#include "clpb/harness.hpp"

#include "clpb/errors.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace clpb {

std::string_view to_string(AlgorithmKind k) {
    switch (k) {
    case AlgorithmKind::Lpb: return "lpb";
    case AlgorithmKind::Clpb: return "clpb";
    case AlgorithmKind::Ga: return "ga";
    case AlgorithmKind::Pso: return "pso";
    }
    return "unknown";
}

std::optional<AlgorithmKind> parse_algorithm(std::string_view s) {
    for (auto k : {AlgorithmKind::Lpb, AlgorithmKind::Clpb, AlgorithmKind::Ga, AlgorithmKind::Pso}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

AlgorithmSpec lpb_algorithm(LpbConfig config) { return {AlgorithmKind::Lpb, "LPB", std::move(config)}; }

AlgorithmSpec clpb_algorithm(ChaoticMapKind map, LpbConfig base) {
    return {AlgorithmKind::Clpb, ClpbVariantId{map}.name(), clpb_config(map, std::move(base))};
}

AlgorithmSpec ga_algorithm(GaConfig config) { return {AlgorithmKind::Ga, "GA", std::move(config)}; }

AlgorithmSpec pso_algorithm(PsoConfig config) { return {AlgorithmKind::Pso, "PSO", std::move(config)}; }

RunResult run_algorithm(const AlgorithmSpec& algorithm, const ObjectiveSpec& spec, std::uint64_t seed) {
    switch (algorithm.kind) {
    case AlgorithmKind::Lpb:
    case AlgorithmKind::Clpb: {
        LpbConfig c = std::get<LpbConfig>(algorithm.config);
        c.seed = seed;
        return algorithm.kind == AlgorithmKind::Clpb ? run_clpb(c, spec) : run_lpb(c, spec);
    }
    case AlgorithmKind::Ga: {
        GaConfig c = std::get<GaConfig>(algorithm.config);
        c.seed = seed;
        return run_ga(c, spec);
    }
    case AlgorithmKind::Pso: {
        PsoConfig c = std::get<PsoConfig>(algorithm.config);
        c.seed = seed;
        return run_pso(c, spec);
    }
    }
    throw ContractError("run_algorithm: unknown algorithm kind");
}

std::vector<RunResult> run_cell(const AlgorithmSpec& algorithm, const ObjectiveSpec& spec, std::size_t runs,
                                std::uint64_t base_seed, std::size_t jobs) {
    detail::require(runs >= 1, "run_cell: runs must be at least 1");
    std::vector<RunResult> results(runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failed_run = 0;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < runs; i = next++) {
            try {
                results[i] = run_algorithm(algorithm, spec, base_seed + i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure || i < failed_run) {
                    failure = std::current_exception();
                    failed_run = i;
                }
                next = runs;
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(jobs, 1, runs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    if (failure) {
        const std::string where = spec.id + "/" + algorithm.label + " run " + std::to_string(failed_run) + " (seed " +
                                  std::to_string(base_seed + failed_run) + ")";
        try {
            std::rethrow_exception(failure);
        } catch (const ContractError& e) {
            throw ContractError(where + ": " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
    }
    return results;
}

SummaryStats summarize_values(std::span<const double> costs, std::span<const double> times) {
    detail::require(!costs.empty(), "summarize: no results");
    SummaryStats s;
    s.n = costs.size();
    s.mean = std::accumulate(costs.begin(), costs.end(), 0.0) / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double c : costs) ss += (c - s.mean) * (c - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    if (!times.empty()) {
        s.mean_pt = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
    }
    return s;
}

SummaryStats summarize(std::span<const RunResult> results) {
    std::vector<double> costs;
    std::vector<double> times;
    for (const RunResult& r : results) {
        costs.push_back(r.best_cost);
        times.push_back(r.wall_time);
    }
    return summarize_values(costs, times);
}

SummaryStats average_clpb_variants(std::span<const SummaryStats> stats) {
    detail::require(stats.size() == kAllChaoticMaps.size(), "average_clpb_variants: exactly ten variants required");
    // Sorting first makes the floating-point sums independent of input order.
    auto mean_of = [&](auto field) {
        std::vector<double> v;
        for (const SummaryStats& s : stats) v.push_back(field(s));
        std::sort(v.begin(), v.end());
        return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    SummaryStats out;
    out.mean = mean_of([](const SummaryStats& s) { return s.mean; });
    out.std = mean_of([](const SummaryStats& s) { return s.std; });
    out.mean_pt = mean_of([](const SummaryStats& s) { return s.mean_pt; });
    out.n = std::accumulate(stats.begin(), stats.end(), std::size_t{0},
                            [](std::size_t acc, const SummaryStats& s) { return acc + s.n; });
    out.pooled = true;
    return out;
}

ExperimentResults run_experiment(const ExperimentPlan& plan, const CellCallback& on_cell) {
    detail::require(plan.runs_per_cell >= 1, "runs_per_cell must be at least 1");
    ExperimentResults out;
    out.base_seed = plan.base_seed;
    out.runs_per_cell = plan.runs_per_cell;

    for (const FunctionRef& ref : plan.functions) {
        const ObjectiveSpec spec = make_function(ref.id, ref.dim, plan.suite);
        std::map<std::string, SummaryStats> by_label;
        for (const AlgorithmSpec& alg : plan.algorithms) {
            CellResult cell;
            cell.function = spec.id;
            cell.dim = spec.dim;
            cell.category = spec.category;
            cell.provenance = spec.provenance;
            cell.algorithm = alg.label;
            cell.kind = alg.kind;
            cell.config = alg.config;
            for (std::size_t i = 0; i < plan.runs_per_cell; ++i) cell.seeds.push_back(plan.base_seed + i);
            try {
                cell.runs = run_cell(alg, spec, plan.runs_per_cell, plan.base_seed, plan.jobs);
            } catch (const std::exception& e) {
                throw ExperimentError(e.what(), std::move(out));
            }
            cell.stats = summarize(cell.runs);
            by_label[cell.algorithm] = cell.stats;
            out.cells.push_back(std::move(cell));
            if (on_cell) on_cell(out.cells.back());
        }
        for (const ClpbGroup& group : plan.clpb_groups) {
            std::vector<SummaryStats> members;
            for (const std::string& label : group.variants) members.push_back(by_label.at(label));
            CellResult cell;
            cell.function = spec.id;
            cell.dim = spec.dim;
            cell.category = spec.category;
            cell.provenance = spec.provenance;
            cell.algorithm = group.label;
            cell.kind = AlgorithmKind::Clpb;
            cell.stats = average_clpb_variants(members);
            cell.members = group.variants;
            out.cells.push_back(std::move(cell));
            if (on_cell) on_cell(out.cells.back());
        }
    }
    return out;
}

RankTable rank_table(std::span<const CellStats> cells, std::vector<std::string> algorithm_order,
                     std::vector<std::string> function_order) {
    RankTable table;
    auto add_unique = [](std::vector<std::string>& v, const std::string& s) {
        if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
    };
    for (const CellStats& c : cells) {
        add_unique(algorithm_order, c.algorithm);
        add_unique(function_order, c.function);
    }
    table.algorithms = std::move(algorithm_order);
    table.functions = std::move(function_order);

    std::map<std::pair<std::string, std::string>, double> means;
    for (const CellStats& c : cells) means[{c.function, c.algorithm}] = c.stats.mean;

    std::map<std::string, Rational> totals;
    std::map<Category, std::map<std::string, Rational>> by_category;
    for (const std::string& a : table.algorithms) totals[a] = {0, 0};

    for (const std::string& f : table.functions) {
        std::vector<std::optional<int>> row(table.algorithms.size());
        std::vector<double> present;
        for (const std::string& a : table.algorithms) {
            if (auto it = means.find({f, a}); it != means.end()) present.push_back(it->second);
        }
        const auto category = category_of(f);
        for (std::size_t k = 0; k < table.algorithms.size(); ++k) {
            const std::string& a = table.algorithms[k];
            const auto it = means.find({f, a});
            if (it == means.end()) {
                table.warnings.push_back(f + ": no result for " + a + "; excluded from its averages");
                continue;
            }
            const auto better = std::count_if(present.begin(), present.end(),
                                              [&](double m) { return m < it->second; });
            const int rank = static_cast<int>(better) + 1;
            row[k] = rank;
            totals[a].num += rank;
            totals[a].den += 1;
            if (category) {
                Rational& r = by_category[*category].try_emplace(a, Rational{0, 0}).first->second;
                r.num += rank;
                r.den += 1;
            }
        }
        table.ranks.push_back(std::move(row));
    }
    const auto reduce = [](Rational& r) {
        if (const long long g = std::gcd(r.num, r.den); g > 1) {
            r.num /= g;
            r.den /= g;
        }
    };
    for (auto& [name, r] : totals) reduce(r);
    for (auto& [category, averages] : by_category) {
        for (auto& [name, r] : averages) reduce(r);
    }
    table.average = std::move(totals);
    table.category_average = std::move(by_category);
    return table;
}

namespace {

double sample_variance(std::span<const double> x, double mean) {
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(x.size() - 1);
}

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double two_tailed_p(double t, double df) {
    boost::math::students_t dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0, 1.0);
}

} // namespace

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    TTestResult r;
    r.n_a = a.size();
    r.n_b = b.size();
    if (!a.empty()) r.mean_a = mean_of(a);
    if (!b.empty()) r.mean_b = mean_of(b);
    if (a.size() < 2 || b.size() < 2) return r;

    const double va = sample_variance(a, r.mean_a);
    const double vb = sample_variance(b, r.mean_b);
    r.std_a = std::sqrt(va);
    r.std_b = std::sqrt(vb);
    const double sa = va / static_cast<double>(a.size());
    const double sb = vb / static_cast<double>(b.size());
    const double se2 = sa + sb;
    if (se2 == 0.0) {
        r.p = r.mean_a == r.mean_b ? 1.0 : 0.0;
        r.t = r.mean_a == r.mean_b ? 0.0 : std::copysign(INFINITY, r.mean_a - r.mean_b);
        return r;
    }
    r.t = (r.mean_a - r.mean_b) / std::sqrt(se2);
    r.df = se2 * se2 / (sa * sa / static_cast<double>(a.size() - 1) + sb * sb / static_cast<double>(b.size() - 1));
    r.p = r.t == 0.0 ? 1.0 : two_tailed_p(r.t, r.df);
    return r;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    detail::require(a.size() == b.size(), "paired t-test: samples must have equal size");
    TTestResult r;
    r.n_a = a.size();
    r.n_b = b.size();
    if (a.empty()) return r;
    r.mean_a = mean_of(a);
    r.mean_b = mean_of(b);
    if (a.size() < 2) return r;
    r.std_a = std::sqrt(sample_variance(a, r.mean_a));
    r.std_b = std::sqrt(sample_variance(b, r.mean_b));

    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double md = mean_of(d);
    const double vd = sample_variance(d, md);
    r.df = static_cast<double>(d.size() - 1);
    if (vd == 0.0) {
        r.p = md == 0.0 ? 1.0 : 0.0;
        r.t = md == 0.0 ? 0.0 : std::copysign(INFINITY, md);
        return r;
    }
    r.t = md / std::sqrt(vd / static_cast<double>(d.size()));
    r.p = r.t == 0.0 ? 1.0 : two_tailed_p(r.t, r.df);
    return r;
}

double t_test(std::span<const double> a, std::span<const double> b) { return welch_t_test(a, b).p; }

std::vector<CellStats> cell_stats(const ExperimentResults& results) {
    std::vector<CellStats> out;
    out.reserve(results.cells.size());
    for (const CellResult& c : results.cells) out.push_back({c.function, c.algorithm, c.stats});
    return out;
}

} // namespace clpb
