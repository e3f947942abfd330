#include "clpb/harness.hpp"

#include "clpb/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace clpb {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr std::string_view kResultsFile = "results.json";
constexpr std::string_view kTimingsFile = "timings.json";
constexpr int kFormatVersion = 1;

// JSON has no infinity; non-finite costs are written as null.
ordered number(double v) { return std::isfinite(v) ? ordered(v) : ordered(nullptr); }

double number_from(const json& v) {
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    return v.get<double>();
}

ordered numbers(std::span<const double> v) {
    ordered a = ordered::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

ordered budget_json(const EvalBudget& b) {
    return b.max_evaluations == kUnlimitedEvaluations ? ordered(nullptr) : ordered(b.max_evaluations);
}

ordered config_json(const AlgorithmConfig& config, std::size_t dim) {
    ordered j;
    if (const auto* c = std::get_if<LpbConfig>(&config)) {
        j["pop_size"] = c->pop_size;
        j["dp"] = c->dp;
        j["n_learners"] = c->learners();
        j["crossover_rate"] = c->crossover_rate;
        j["mutation_rate"] = c->mutation_rate_for(dim);
        j["max_iterations"] = c->max_iterations;
        j["max_evaluations"] = budget_json(c->budget);
        j["init"] = c->init.kind == Initialization::Kind::Chaotic ? "chaotic" : "random";
        if (c->init.kind == Initialization::Kind::Chaotic) {
            j["map"] = to_string(c->init.map);
            j["x0"] = c->init.x0;
        }
        j["interior_crossover"] = c->interior_crossover;
        j["crossover"] = to_string(c->crossover);
        j["mutation"] = to_string(c->mutation);
        j["mutation_sigma"] = c->mutation_sigma;
        j["selection"] = to_string(c->selection);
        j["survival"] = to_string(c->survival);
    } else if (const auto* g = std::get_if<GaConfig>(&config)) {
        j["pop_size"] = g->pop_size;
        j["crossover_rate"] = g->crossover_rate;
        j["mutation_rate"] = g->mutation_rate.value_or(1.0 / static_cast<double>(dim));
        j["elitism_count"] = g->elitism_count;
        j["max_iterations"] = g->max_iterations;
        j["max_evaluations"] = budget_json(g->budget);
        j["crossover"] = to_string(g->crossover);
        j["mutation"] = to_string(g->mutation);
        j["mutation_sigma"] = g->mutation_sigma;
        j["selection"] = to_string(g->selection);
    } else if (const auto* p = std::get_if<PsoConfig>(&config)) {
        j["swarm_size"] = p->swarm_size;
        j["inertia"] = p->inertia;
        j["cognitive"] = p->cognitive;
        j["social"] = p->social;
        j["vmax_fraction"] = p->vmax_fraction;
        j["max_iterations"] = p->max_iterations;
        j["max_evaluations"] = budget_json(p->budget);
    }
    return j;
}

template <typename T>
T parsed(std::optional<T> v, const json& j, const char* key) {
    if (!v) throw std::invalid_argument(std::string("config.") + key + ": unrecognised value " + j.dump());
    return *v;
}

EvalBudget budget_from(const json& j) {
    EvalBudget b{kUnlimitedEvaluations, 0};
    if (j.contains("max_evaluations") && !j["max_evaluations"].is_null()) {
        b.max_evaluations = j["max_evaluations"].get<std::size_t>();
    }
    return b;
}

AlgorithmConfig config_from(const json& j, AlgorithmKind kind) {
    switch (kind) {
    case AlgorithmKind::Lpb:
    case AlgorithmKind::Clpb: {
        LpbConfig c;
        c.pop_size = j.at("pop_size").get<std::size_t>();
        c.dp = j.at("dp").get<double>();
        c.n_learners = j.at("n_learners").get<std::size_t>();
        c.crossover_rate = j.at("crossover_rate").get<double>();
        c.mutation_rate = j.at("mutation_rate").get<double>();
        c.max_iterations = j.at("max_iterations").get<std::size_t>();
        c.budget = budget_from(j);
        if (j.value("init", std::string{"random"}) == "chaotic") {
            c.init.kind = Initialization::Kind::Chaotic;
            c.init.map = parsed(parse_chaotic_map(j.at("map").get<std::string>()), j["map"], "map");
            c.init.x0 = j.at("x0").get<double>();
        }
        c.interior_crossover = j.at("interior_crossover").get<bool>();
        c.crossover = parsed(parse_crossover(j.at("crossover").get<std::string>()), j["crossover"], "crossover");
        c.mutation = parsed(parse_mutation(j.at("mutation").get<std::string>()), j["mutation"], "mutation");
        c.mutation_sigma = j.at("mutation_sigma").get<double>();
        c.selection = parsed(parse_selection(j.at("selection").get<std::string>()), j["selection"], "selection");
        c.survival = parsed(parse_survival(j.at("survival").get<std::string>()), j["survival"], "survival");
        return c;
    }
    case AlgorithmKind::Ga: {
        GaConfig g;
        g.pop_size = j.at("pop_size").get<std::size_t>();
        g.crossover_rate = j.at("crossover_rate").get<double>();
        g.mutation_rate = j.at("mutation_rate").get<double>();
        g.elitism_count = j.at("elitism_count").get<std::size_t>();
        g.max_iterations = j.at("max_iterations").get<std::size_t>();
        g.budget = budget_from(j);
        g.crossover = parsed(parse_crossover(j.at("crossover").get<std::string>()), j["crossover"], "crossover");
        g.mutation = parsed(parse_mutation(j.at("mutation").get<std::string>()), j["mutation"], "mutation");
        g.mutation_sigma = j.at("mutation_sigma").get<double>();
        g.selection = parsed(parse_selection(j.at("selection").get<std::string>()), j["selection"], "selection");
        return g;
    }
    case AlgorithmKind::Pso: {
        PsoConfig p;
        p.swarm_size = j.at("swarm_size").get<std::size_t>();
        p.inertia = j.at("inertia").get<double>();
        p.cognitive = j.at("cognitive").get<double>();
        p.social = j.at("social").get<double>();
        p.vmax_fraction = j.at("vmax_fraction").get<double>();
        p.max_iterations = j.at("max_iterations").get<std::size_t>();
        p.budget = budget_from(j);
        return p;
    }
    }
    throw std::invalid_argument("unknown algorithm kind");
}

ordered stats_json(const SummaryStats& s) {
    ordered j;
    j["mean"] = number(s.mean);
    j["std"] = number(s.std);
    j["n"] = s.n;
    if (s.pooled) j["std_method"] = "mean_of_member_stds";
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

std::string fmt(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::string results_to_json(const ExperimentResults& results) {
    ordered doc;
    doc["format"] = "clpb-results";
    doc["version"] = kFormatVersion;
    doc["base_seed"] = results.base_seed;
    doc["runs_per_cell"] = results.runs_per_cell;
    doc["seed_rule"] = "base_seed + run_index";
    ordered cells = ordered::array();
    for (const CellResult& c : results.cells) {
        ordered cell;
        cell["function"] = c.function;
        cell["dim"] = c.dim;
        cell["category"] = to_string(c.category);
        cell["provenance"] = c.provenance;
        cell["algorithm"] = c.algorithm;
        cell["kind"] = to_string(c.kind);
        if (c.config) cell["config"] = config_json(*c.config, c.dim);
        if (!c.members.empty()) cell["members"] = c.members;
        cell["stats"] = stats_json(c.stats);
        if (!c.runs.empty()) {
            ordered runs = ordered::array();
            for (std::size_t i = 0; i < c.runs.size(); ++i) {
                const RunResult& r = c.runs[i];
                ordered run;
                run["seed"] = i < c.seeds.size() ? c.seeds[i] : results.base_seed + i;
                run["best_cost"] = number(r.best_cost);
                run["evaluations"] = r.evaluations;
                run["iterations"] = r.iterations;
                run["budget_exhausted"] = r.budget_exhausted;
                run["best_position"] = numbers(r.best_position);
                run["history"] = numbers(r.history);
                runs.push_back(std::move(run));
            }
            cell["runs"] = std::move(runs);
        }
        cells.push_back(std::move(cell));
    }
    doc["cells"] = std::move(cells);
    return doc.dump(1) + "\n";
}

std::string timings_to_json(const ExperimentResults& results) {
    ordered doc;
    doc["format"] = "clpb-timings";
    doc["version"] = kFormatVersion;
    ordered cells = ordered::array();
    for (const CellResult& c : results.cells) {
        ordered cell;
        cell["function"] = c.function;
        cell["algorithm"] = c.algorithm;
        cell["mean_pt_seconds"] = c.stats.mean_pt;
        ordered times = ordered::array();
        for (const RunResult& r : c.runs) times.push_back(r.wall_time);
        cell["wall_time_seconds"] = std::move(times);
        cells.push_back(std::move(cell));
    }
    doc["cells"] = std::move(cells);
    return doc.dump(1) + "\n";
}

std::string summary_csv(const ExperimentResults& results) {
    std::ostringstream out;
    out << "function,algorithm,mean,std,pt_seconds\n";
    for (const CellResult& c : results.cells) {
        out << c.function << ',' << c.algorithm << ',' << fmt(c.stats.mean) << ',' << fmt(c.stats.std) << ','
            << fmt(c.stats.mean_pt) << '\n';
    }
    return out.str();
}

std::string rank_csv(const RankTable& table) {
    std::ostringstream out;
    out << "function";
    for (const std::string& a : table.algorithms) out << ",rank:" << a;
    out << '\n';
    for (std::size_t f = 0; f < table.functions.size(); ++f) {
        out << table.functions[f];
        for (const auto& r : table.ranks[f]) {
            out << ',';
            if (r) out << *r;
        }
        out << '\n';
    }
    auto average_rows = [&](const std::string& name, const std::map<std::string, Rational>& avg) {
        out << name;
        for (const std::string& a : table.algorithms) {
            out << ',';
            if (auto it = avg.find(a); it != avg.end() && it->second.den > 0) out << fmt_fixed(it->second.value());
        }
        out << '\n' << name << "_exact";
        for (const std::string& a : table.algorithms) {
            out << ',';
            if (auto it = avg.find(a); it != avg.end() && it->second.den > 0) {
                out << it->second.num << '/' << it->second.den;
            }
        }
        out << '\n';
    };
    average_rows("average", table.average);
    for (const auto& [category, avg] : table.category_average) {
        average_rows("average:" + std::string(to_string(category)), avg);
    }
    return out.str();
}

namespace {

std::string convergence_csv(const ExperimentResults& results) {
    std::ostringstream out;
    out << "function,algorithm,iteration,mean_best_cost\n";
    for (const CellResult& c : results.cells) {
        std::size_t length = 0;
        for (const RunResult& r : c.runs) length = std::max(length, r.history.size());
        for (std::size_t it = 0; it < length; ++it) {
            double sum = 0.0;
            for (const RunResult& r : c.runs) {
                // Runs stopped early by their budget hold their final best-ever cost.
                sum += it < r.history.size() ? r.history[it] : r.history.back();
            }
            out << c.function << ',' << c.algorithm << ',' << it << ','
                << fmt(sum / static_cast<double>(c.runs.size())) << '\n';
        }
    }
    return out.str();
}

} // namespace

PersistedFiles persist(const ExperimentResults& results, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    PersistedFiles files{dir / kResultsFile, dir / kTimingsFile, dir / "summary.csv", dir / "ranks.csv",
                         dir / "convergence.csv"};
    write_file(files.results, results_to_json(results));
    write_file(files.timings, timings_to_json(results));
    write_file(files.summary, summary_csv(results));
    write_file(files.ranks, rank_csv(rank_table(cell_stats(results))));
    write_file(files.convergence, convergence_csv(results));
    return files;
}

ExperimentResults load_results(const std::filesystem::path& dir_or_file) {
    const bool is_dir = std::filesystem::is_directory(dir_or_file);
    const std::filesystem::path results_path = is_dir ? dir_or_file / kResultsFile : dir_or_file;
    const json doc = read_json(results_path);

    ExperimentResults out;
    try {
        out.base_seed = doc.value("base_seed", std::uint64_t{0});
        out.runs_per_cell = doc.value("runs_per_cell", std::size_t{0});
        for (const json& c : doc.at("cells")) {
            CellResult cell;
            cell.function = c.at("function").get<std::string>();
            cell.algorithm = c.at("algorithm").get<std::string>();
            cell.dim = c.value("dim", std::size_t{0});
            if (const auto cat = parse_category(c.value("category", std::string{}))) {
                cell.category = *cat;
            } else if (const auto known = category_of(cell.function)) {
                cell.category = *known;
            }
            cell.provenance = c.value("provenance", std::string{});
            cell.kind = parse_algorithm(c.value("kind", std::string{"lpb"})).value_or(AlgorithmKind::Lpb);
            if (c.contains("config") && c["config"].is_object()) cell.config = config_from(c["config"], cell.kind);
            if (c.contains("members")) cell.members = c["members"].get<std::vector<std::string>>();
            if (c.contains("runs")) {
                for (const json& r : c["runs"]) {
                    RunResult run;
                    run.best_cost = number_from(r.at("best_cost"));
                    run.evaluations = r.value("evaluations", std::size_t{0});
                    run.iterations = r.value("iterations", std::size_t{0});
                    run.budget_exhausted = r.value("budget_exhausted", false);
                    if (r.contains("best_position")) {
                        for (const json& x : r["best_position"]) run.best_position.push_back(number_from(x));
                    }
                    if (r.contains("history")) {
                        for (const json& x : r["history"]) run.history.push_back(number_from(x));
                    }
                    cell.seeds.push_back(r.value("seed", out.base_seed + cell.runs.size()));
                    cell.runs.push_back(std::move(run));
                }
            }
            if (c.contains("stats")) {
                const json& s = c["stats"];
                cell.stats.mean = number_from(s.at("mean"));
                cell.stats.std = s.contains("std") ? number_from(s["std"]) : 0.0;
                cell.stats.n = s.value("n", cell.runs.size());
                cell.stats.pooled = s.contains("std_method");
            } else if (!cell.runs.empty()) {
                cell.stats = summarize(cell.runs);
            } else {
                throw std::runtime_error("cell " + cell.function + "/" + cell.algorithm + " has neither stats nor runs");
            }
            out.cells.push_back(std::move(cell));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(results_path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(results_path.string() + ": " + e.what());
    }

    const std::filesystem::path timings_path = results_path.parent_path() / kTimingsFile;
    if (std::filesystem::exists(timings_path)) {
        const json timings = read_json(timings_path);
        const json& cells = timings.at("cells");
        for (std::size_t i = 0; i < out.cells.size() && i < cells.size(); ++i) {
            CellResult& cell = out.cells[i];
            const json& t = cells[i];
            if (t.value("function", "") != cell.function || t.value("algorithm", "") != cell.algorithm) continue;
            cell.stats.mean_pt = t.value("mean_pt_seconds", 0.0);
            const auto times = t.value("wall_time_seconds", std::vector<double>{});
            for (std::size_t k = 0; k < times.size() && k < cell.runs.size(); ++k) cell.runs[k].wall_time = times[k];
        }
    }
    return out;
}

} // namespace clpb
