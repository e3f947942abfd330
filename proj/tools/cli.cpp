#include "cli.hpp"

#include "clpb/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace clpb::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::vector<std::vector<std::string>> split_csv(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(csv);
    for (std::string line; std::getline(lines, line);) {
        std::vector<std::string> cells;
        std::istringstream fields(line);
        for (std::string f; std::getline(fields, f, ',');) cells.push_back(f);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(std::move(cells));
    }
    return rows;
}

// Writes CSV as-is, or as left-aligned columns with --pretty.
void emit(std::ostream& out, const std::string& csv, bool pretty) {
    if (!pretty) {
        out << csv;
        return;
    }
    const auto rows = split_csv(csv);
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

std::string valid_maps() {
    std::string s;
    for (auto m : kAllChaoticMaps) s += (s.empty() ? "" : ", ") + std::string(to_string(m));
    return s;
}

int cmd_list(bool functions, bool maps, bool algorithms, const std::string& category, std::ostream& out) {
    if (functions + maps + algorithms != 1) throw UsageError("list: choose exactly one of --functions, --maps, --algorithms");
    if (!category.empty() && !functions) throw UsageError("list: --category applies to --functions only");
    if (functions) {
        std::optional<Category> filter;
        if (!category.empty()) {
            filter = parse_category(category);
            if (!filter) throw UsageError("list: unknown category '" + category + "' (expected unimodal, multimodal, composite, cec2019)");
        }
        for (const std::string& id : function_ids()) {
            if (!filter || category_of(id) == filter) out << id << '\n';
        }
    } else if (maps) {
        for (auto m : kAllChaoticMaps) out << to_string(m) << '\n';
    } else {
        for (auto k : {AlgorithmKind::Lpb, AlgorithmKind::Clpb, AlgorithmKind::Ga, AlgorithmKind::Pso}) {
            out << to_string(k) << '\n';
        }
    }
    return kExitOk;
}

int cmd_maps(const std::string& name, std::size_t n, double x0, std::ostream& out) {
    const auto map = parse_chaotic_map(name);
    if (!map) throw UsageError("maps: unknown map '" + name + "' (valid: " + valid_maps() + ")");
    if (n < 1) throw UsageError("maps: -n must be at least 1");
    std::unique_ptr<ChaoticStream> stream;
    try {
        stream = std::make_unique<ChaoticStream>(*map, x0);
    } catch (const std::domain_error& e) {
        throw UsageError(std::string("maps: ") + e.what());
    }
    out << "step,raw,unit\n";
    for (std::size_t i = 1; i <= n; ++i) {
        const double raw = stream->next_raw();
        out << i << ',' << fmt(raw) << ',' << fmt(ChaoticStream::to_unit(*map, raw)) << '\n';
    }
    return kExitOk;
}

int cmd_run(const std::string& config, std::optional<std::size_t> jobs, const std::string& output, bool pretty,
            bool quiet, std::ostream& out, std::ostream& err) {
    ExperimentPlan plan;
    try {
        plan = load_plan(config);
    } catch (const ConfigError& e) {
        throw UsageError(config + ": " + e.what());
    }
    if (jobs) plan.jobs = std::max<std::size_t>(1, *jobs);
    if (!output.empty()) plan.output_dir = output;

    auto progress = [&](const CellResult& c) {
        if (!quiet) err << c.function << ' ' << c.algorithm << " mean=" << fmt(c.stats.mean) << '\n';
    };
    ExperimentResults results;
    try {
        results = run_experiment(plan, progress);
    } catch (const ExperimentError& e) {
        persist(e.partial(), plan.output_dir);
        err << "error: " << e.what() << "\n(completed cells saved to " << plan.output_dir.string() << ")\n";
        return kExitRuntime;
    }
    const PersistedFiles files = persist(results, plan.output_dir);
    emit(out, summary_csv(results), pretty);
    if (!quiet) err << "results written to " << files.results.parent_path().string() << '\n';
    return kExitOk;
}

int cmd_rank(const std::string& dir, bool pretty, std::ostream& out, std::ostream& err) {
    const ExperimentResults results = load_results(dir);
    const RankTable table = rank_table(cell_stats(results));
    std::size_t shared = 0;
    for (const auto& row : table.ranks) {
        if (std::count_if(row.begin(), row.end(), [](const auto& r) { return r.has_value(); }) >= 2) ++shared;
    }
    if (table.algorithms.size() < 2 || shared == 0) {
        err << "error: ranking needs at least two algorithms sharing a function\n";
        return kExitRuntime;
    }
    for (const std::string& w : table.warnings) err << "warning: " << w << '\n';
    emit(out, rank_csv(table), pretty);
    return kExitOk;
}

std::vector<double> read_sample(const std::string& path, const std::string& function, const std::string& algorithm) {
    if (!std::filesystem::exists(path)) throw std::runtime_error("no such file: " + path);
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    const std::string body = text.str();
    const auto first = body.find_first_not_of(" \t\r\n");
    const bool is_json = std::filesystem::is_directory(path) || (first != std::string::npos && body[first] == '{');
    if (!is_json) {
        std::vector<double> v;
        std::string token;
        std::istringstream tokens(body);
        while (tokens >> token) {
            std::istringstream parts(token);
            for (std::string p; std::getline(parts, p, ',');) {
                if (p.empty()) continue;
                try {
                    std::size_t used = 0;
                    v.push_back(std::stod(p, &used));
                    if (used != p.size()) throw std::invalid_argument(p);
                } catch (const std::exception&) {
                    throw std::runtime_error(path + ": not a number: '" + p + "'");
                }
            }
        }
        return v;
    }
    const ExperimentResults results = load_results(path);
    std::vector<const CellResult*> matches;
    for (const CellResult& c : results.cells) {
        if (c.runs.empty()) continue;
        if (!function.empty() && c.function != function) continue;
        if (!algorithm.empty() && c.algorithm != algorithm) continue;
        matches.push_back(&c);
    }
    if (matches.size() != 1) {
        throw std::runtime_error(path + ": expected exactly one cell with per-run results, found " +
                                 std::to_string(matches.size()) + " (narrow with --function/--algorithm)");
    }
    std::vector<double> v;
    for (const RunResult& r : matches.front()->runs) v.push_back(r.best_cost);
    return v;
}

int cmd_ttest(const std::string& a, const std::string& b, bool paired, const std::string& function,
              const std::string& algorithm, bool pretty, std::ostream& out, std::ostream& err) {
    const auto sa = read_sample(a, function, algorithm);
    const auto sb = read_sample(b, function, algorithm);
    if (sa.size() < 2 || sb.size() < 2) {
        err << "error: each sample needs at least two values (got " << sa.size() << " and " << sb.size() << ")\n";
        return kExitRuntime;
    }
    if (paired && sa.size() != sb.size()) throw UsageError("ttest: --paired needs samples of equal size");
    const TTestResult r = paired ? paired_t_test(sa, sb) : welch_t_test(sa, sb);
    std::ostringstream csv;
    csv << "n_a,n_b,mean_a,mean_b,std_a,std_b,t,df,p\n"
        << r.n_a << ',' << r.n_b << ',' << fmt(r.mean_a) << ',' << fmt(r.mean_b) << ',' << fmt(r.std_a) << ','
        << fmt(r.std_b) << ',' << fmt(r.t) << ',' << fmt(r.df) << ',' << fmt(r.p) << '\n';
    emit(out, csv.str(), pretty);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chaotic learner performance-based behavior optimizer"};
    app.require_subcommand(1);

    bool list_functions = false, list_maps = false, list_algorithms = false;
    std::string category;
    auto* list = app.add_subcommand("list", "List benchmark functions, chaotic maps or algorithms");
    list->add_flag("--functions", list_functions, "Benchmark function ids");
    list->add_flag("--maps", list_maps, "Chaotic map names in variant order");
    list->add_flag("--algorithms", list_algorithms, "Algorithm ids");
    list->add_option("--category", category, "Filter functions: unimodal, multimodal, composite, cec2019");

    std::string map_name;
    std::size_t count = 10;
    double x0 = kDefaultChaoticSeed;
    auto* maps = app.add_subcommand("maps", "Print a chaotic sequence as step,raw,unit CSV");
    maps->add_option("map", map_name, "Map name")->required();
    maps->add_option("-n", count, "Number of steps");
    maps->add_option("--x0", x0, "Initial state");

    std::string config, output;
    std::optional<std::size_t> jobs;
    bool pretty = false, quiet = false;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
    run_cmd->add_option("config", config, "Experiment config file")->required();
    run_cmd->add_option("--jobs", jobs, "Concurrent runs per cell");
    run_cmd->add_option("--output", output, "Output directory (overrides the config)");
    run_cmd->add_flag("--pretty", pretty, "Aligned text instead of CSV");
    run_cmd->add_flag("--quiet", quiet, "No progress output");

    std::string results_dir;
    auto* rank = app.add_subcommand("rank", "Rank algorithms from persisted results");
    rank->add_option("results", results_dir, "Results directory or results.json")->required();
    rank->add_flag("--pretty", pretty, "Aligned text instead of CSV");

    std::string sample_a, sample_b, function, algorithm;
    bool paired = false;
    auto* ttest = app.add_subcommand("ttest", "Two-sample t-test on per-run best costs");
    ttest->add_option("a", sample_a, "First sample: results.json/directory or a list of numbers")->required();
    ttest->add_option("b", sample_b, "Second sample")->required();
    ttest->add_flag("--paired", paired, "Paired test instead of Welch");
    ttest->add_option("--function", function, "Cell selector for results files");
    ttest->add_option("--algorithm", algorithm, "Cell selector for results files");
    ttest->add_flag("--pretty", pretty, "Aligned text instead of CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (list->parsed()) return cmd_list(list_functions, list_maps, list_algorithms, category, out);
        if (maps->parsed()) return cmd_maps(map_name, count, x0, out);
        if (run_cmd->parsed()) return cmd_run(config, jobs, output, pretty, quiet, out, err);
        if (rank->parsed()) return cmd_rank(results_dir, pretty, out, err);
        if (ttest->parsed()) return cmd_ttest(sample_a, sample_b, paired, function, algorithm, pretty, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace clpb::cli
