#include "clpb/harness.hpp"

#include "clpb/errors.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace clpb {

namespace {

using nlohmann::json;

// Typed accessors over one JSON object that remember which keys were read,
// so leftovers can be reported as unknown.
class ObjectReader {
  public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
    }

    std::string key_path(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    const json* get(std::string_view key) {
        seen_.emplace(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    template <typename T>
    void read(std::string_view key, T& out) {
        if (const json* v = get(key)) out = as<T>(*v, key_path(key));
    }

    template <typename T>
    void read(std::string_view key, std::optional<T>& out) {
        if (const json* v = get(key); v && !v->is_null()) out = as<T>(*v, key_path(key));
    }

    template <typename Enum, typename Parser>
    void read_enum(std::string_view key, Enum& out, Parser parse, std::string_view choices) {
        if (const json* v = get(key)) {
            const auto name = as<std::string>(*v, key_path(key));
            const auto parsed = parse(name);
            if (!parsed) throw ConfigError(key_path(key), "unknown value '" + name + "' (expected " + std::string(choices) + ")");
            out = *parsed;
        }
    }

    void reject_unknown() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.contains(key)) throw ConfigError(key_path(key), "unknown key");
        }
    }

    template <typename T>
    static T as(const json& v, const std::string& path) {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw ConfigError(path, "expected a boolean");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
                throw ConfigError(path, "expected a non-negative integer");
            }
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw ConfigError(path, "expected a number");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ConfigError(path, "expected a string");
        }
        return v.get<T>();
    }

  private:
    const json& obj_;
    std::string path_;
    std::set<std::string, std::less<>> seen_;
};

void read_budget(ObjectReader& r, EvalBudget& budget) {
    std::optional<std::size_t> max_evals;
    r.read("max_evaluations", max_evals);
    if (max_evals) budget = {*max_evals, 0};
}

void read_lpb_fields(ObjectReader& r, LpbConfig& c) {
    r.read("pop_size", c.pop_size);
    r.read("dp", c.dp);
    r.read("n_learners", c.n_learners);
    r.read("crossover_rate", c.crossover_rate);
    r.read("mutation_rate", c.mutation_rate);
    r.read("max_iterations", c.max_iterations);
    read_budget(r, c.budget);
    r.read("mutation_sigma", c.mutation_sigma);
    r.read_enum("crossover", c.crossover, parse_crossover, "single_point, uniform, arithmetic");
    r.read_enum("mutation", c.mutation, parse_mutation, "uniform_reset, gaussian");
    r.read_enum("selection", c.selection, parse_selection, "roulette, tournament");
    r.read_enum("survival", c.survival, parse_survival, "merge_truncate, generational");
}

std::string map_choices() {
    std::string s;
    for (auto m : kAllChaoticMaps) s += (s.empty() ? "" : ", ") + std::string(to_string(m));
    return s + ", all";
}

void validated(const std::string& path, auto&& check) {
    try {
        check();
    } catch (const std::logic_error& e) {
        throw ConfigError(path, e.what());
    }
}

void parse_algorithm_entry(const json& entry, const std::string& path, ExperimentPlan& plan) {
    ObjectReader r(entry, path);
    std::string id;
    if (const json* v = r.get("id")) {
        id = ObjectReader::as<std::string>(*v, r.key_path("id"));
    } else {
        throw ConfigError(r.key_path("id"), "missing algorithm id (lpb, clpb, ga, pso)");
    }
    const auto kind = parse_algorithm(id);
    if (!kind) throw ConfigError(r.key_path("id"), "unknown algorithm '" + id + "' (expected lpb, clpb, ga, pso)");
    std::optional<std::string> label;
    r.read("label", label);

    std::vector<AlgorithmSpec> produced;
    std::optional<ClpbGroup> group;

    switch (*kind) {
    case AlgorithmKind::Lpb: {
        LpbConfig c;
        read_lpb_fields(r, c);
        validated(path, [&] { c.validate(); });
        produced.push_back(lpb_algorithm(c));
        break;
    }
    case AlgorithmKind::Clpb: {
        LpbConfig c;
        read_lpb_fields(r, c);
        std::string map_name = "logistic";
        double x0 = kDefaultChaoticSeed;
        r.read("map", map_name);
        r.read("x0", x0);
        validated(path, [&] { c.validate(); });
        std::vector<ChaoticMapKind> maps;
        if (map_name == "all") {
            maps.assign(kAllChaoticMaps.begin(), kAllChaoticMaps.end());
            group = ClpbGroup{label.value_or("CLPB"), {}};
        } else if (const auto m = parse_chaotic_map(map_name)) {
            maps.push_back(*m);
        } else {
            throw ConfigError(r.key_path("map"), "unknown chaotic map '" + map_name + "' (expected " + map_choices() + ")");
        }
        for (ChaoticMapKind m : maps) {
            validated(r.key_path("x0"), [&] { ChaoticStream probe(m, x0); });
            c.init = Initialization::chaotic(m, x0);
            AlgorithmSpec spec = clpb_algorithm(m, c);
            if (group) {
                group->variants.push_back(spec.label);
            } else if (label) {
                spec.label = *label;
            }
            produced.push_back(std::move(spec));
        }
        break;
    }
    case AlgorithmKind::Ga: {
        GaConfig c;
        r.read("pop_size", c.pop_size);
        r.read("crossover_rate", c.crossover_rate);
        r.read("mutation_rate", c.mutation_rate);
        r.read("elitism_count", c.elitism_count);
        r.read("max_iterations", c.max_iterations);
        read_budget(r, c.budget);
        r.read("mutation_sigma", c.mutation_sigma);
        r.read_enum("crossover", c.crossover, parse_crossover, "single_point, uniform, arithmetic");
        r.read_enum("mutation", c.mutation, parse_mutation, "uniform_reset, gaussian");
        r.read_enum("selection", c.selection, parse_selection, "roulette, tournament");
        validated(path, [&] { c.validate(); });
        produced.push_back(ga_algorithm(c));
        break;
    }
    case AlgorithmKind::Pso: {
        PsoConfig c;
        r.read("swarm_size", c.swarm_size);
        r.read("inertia", c.inertia);
        r.read("cognitive", c.cognitive);
        r.read("social", c.social);
        r.read("vmax_fraction", c.vmax_fraction);
        r.read("max_iterations", c.max_iterations);
        read_budget(r, c.budget);
        validated(path, [&] { c.validate(); });
        produced.push_back(pso_algorithm(c));
        break;
    }
    }
    r.reject_unknown();

    if (label && !group) produced.front().label = *label;
    for (AlgorithmSpec& a : produced) {
        for (const AlgorithmSpec& existing : plan.algorithms) {
            if (existing.label == a.label) throw ConfigError(path, "duplicate algorithm label '" + a.label + "'");
        }
        plan.algorithms.push_back(std::move(a));
    }
    if (group) plan.clpb_groups.push_back(std::move(*group));
}

void add_function(const std::string& id, std::optional<std::size_t> dim, const std::string& path,
                  ExperimentPlan& plan) {
    if (id == "all") {
        for (const std::string& f : function_ids()) plan.functions.push_back({f, std::nullopt});
        return;
    }
    if (const auto cat = parse_category(id)) {
        for (const std::string& f : function_ids()) {
            if (category_of(f) == cat) plan.functions.push_back({f, std::nullopt});
        }
        return;
    }
    validated(path, [&] { (void)make_function(id, dim, plan.suite); });
    plan.functions.push_back({make_function(id, dim, plan.suite).id, dim});
}

} // namespace

ExperimentPlan parse_plan(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // The library message already carries line and column.
        throw ConfigError("", e.what());
    }

    ExperimentPlan plan;
    ObjectReader r(doc, "");
    r.read("runs", plan.runs_per_cell);
    if (plan.runs_per_cell < 1) throw ConfigError("runs", "must be at least 1");
    r.read("base_seed", plan.base_seed);
    r.read("jobs", plan.jobs);
    if (plan.jobs < 1) throw ConfigError("jobs", "must be at least 1");

    std::optional<std::string> output;
    r.read("output", output);
    if (output) {
        plan.output_dir = *output;
    } else if (const char* env = std::getenv("CLPB_OUTPUT_DIR"); env && *env) {
        plan.output_dir = env;
    } else {
        plan.output_dir = "clpb-results";
    }

    std::optional<std::string> data_dir;
    r.read("data_dir", data_dir);
    if (data_dir) plan.suite.data_dir = std::filesystem::path(*data_dir);

    const json* functions = r.get("functions");
    if (!functions || !functions->is_array() || functions->empty()) {
        throw ConfigError("functions", "expected a non-empty array of function ids");
    }
    for (std::size_t i = 0; i < functions->size(); ++i) {
        const json& f = (*functions)[i];
        const std::string path = "functions[" + std::to_string(i) + "]";
        if (f.is_string()) {
            add_function(f.get<std::string>(), std::nullopt, path, plan);
        } else {
            ObjectReader fr(f, path);
            std::string id;
            std::optional<std::size_t> dim;
            if (const json* v = fr.get("id")) {
                id = ObjectReader::as<std::string>(*v, fr.key_path("id"));
            } else {
                throw ConfigError(fr.key_path("id"), "missing function id");
            }
            fr.read("dim", dim);
            fr.reject_unknown();
            add_function(id, dim, path, plan);
        }
    }

    const json* algorithms = r.get("algorithms");
    if (!algorithms || !algorithms->is_array() || algorithms->empty()) {
        throw ConfigError("algorithms", "expected a non-empty array of algorithm entries");
    }
    for (std::size_t i = 0; i < algorithms->size(); ++i) {
        const json& a = (*algorithms)[i];
        const std::string path = "algorithms[" + std::to_string(i) + "]";
        if (a.is_string()) {
            parse_algorithm_entry(json{{"id", a}}, path, plan);
        } else {
            parse_algorithm_entry(a, path, plan);
        }
    }
    r.reject_unknown();
    return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_plan(text.str());
}

} // namespace clpb
