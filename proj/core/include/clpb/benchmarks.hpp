#pragma once

#include "clpb/rng.hpp"
#include "clpb/types.hpp"

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clpb {

enum class Category { Unimodal, Multimodal, Composite, Cec2019 };

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view name);

/// A benchmark objective: identity, domain and the function itself.
///
/// Copies are cheap and share the (immutable) function data.
struct ObjectiveSpec {
    std::string id;
    std::size_t dim = 0;
    Bounds bounds;
    Category category = Category::Unimodal;
    /// Global minimum value, where one is known.
    std::optional<double> known_best;
    /// A point attaining known_best, where one is known in closed form.
    std::optional<std::vector<double>> known_argmin;
    /// TF7 only: the evaluation adds U[0,1) noise.
    bool noisy = false;
    /// Free-form description of shift/rotation data in use.
    std::string provenance;
    std::function<double(std::span<const double>)> fn;

    /// Deterministic part of the function. Throws ContractError on a
    /// dimension mismatch or out-of-bounds input.
    double evaluate(std::span<const double> x) const;
    /// Full evaluation; noisy functions draw their noise from `noise`.
    double evaluate(std::span<const double> x, Rng& noise) const;
};

/// Where optional shift/rotation data files live. Files are plain text, one
/// vector or matrix row per line, whitespace separated:
///   shift_<ID>.txt     CEC04..CEC10: one row of `dim` values;
///                      TF14..TF19: ten rows (one optimum per component).
///   rotation_<ID>.txt  CEC04..CEC10: `dim` rows of `dim` values.
/// Missing files fall back to the built-in defaults.
struct SuiteOptions {
    std::optional<std::filesystem::path> data_dir;
};

/// Identifiers in the documented order: TF1..TF19 then CEC01..CEC10.
const std::vector<std::string>& function_ids();

/// Builds a benchmark. `dim` overrides the default where the function is
/// scalable (CEC01..CEC03 have fixed dimensions). Throws ContractError for an
/// unknown id or an unsupported dimension.
ObjectiveSpec make_function(std::string_view id, std::optional<std::size_t> dim = std::nullopt,
                            const SuiteOptions& options = {});

/// All benchmarks at default dimension, optionally filtered by category.
std::vector<ObjectiveSpec> list_functions(std::optional<Category> filter = std::nullopt,
                                          const SuiteOptions& options = {});

/// Category of a known id without building the function.
std::optional<Category> category_of(std::string_view id);

struct EvalBudget {
    std::size_t max_evaluations = 0;
    std::size_t used = 0;
};

/// An objective wrapped with evaluation accounting.
///
/// Each call consumes one evaluation; a call made after the budget is spent
/// throws BudgetExhausted without evaluating. Noise for TF7 comes from a
/// generator seeded by `noise_seed`, so whole runs stay reproducible.
class CountedObjective {
  public:
    CountedObjective(ObjectiveSpec spec, EvalBudget budget, std::uint64_t noise_seed = 0);

    double operator()(std::span<const double> x);

    const ObjectiveSpec& spec() const noexcept { return spec_; }
    std::size_t used() const noexcept { return used_.load(); }
    std::size_t max_evaluations() const noexcept { return max_; }
    bool exhausted() const noexcept { return used_.load() >= max_; }

  private:
    ObjectiveSpec spec_;
    std::size_t max_;
    std::atomic<std::size_t> used_;
    Rng noise_;
};

CountedObjective wrap_with_budget(const ObjectiveSpec& spec, EvalBudget budget,
                                  std::uint64_t noise_seed = 0);

/// Reads whitespace-separated rows from a text file.
std::vector<std::vector<double>> read_matrix_file(const std::filesystem::path& path);

namespace functions {
// Basic landscapes, exposed for reuse in tests and composites.
double sphere(std::span<const double> x);
double rastrigin(std::span<const double> x);
double ackley(std::span<const double> x);
double griewank(std::span<const double> x);
double weierstrass(std::span<const double> x);
double lennard_jones_energy(std::span<const double> x);
} // namespace functions

} // namespace clpb
