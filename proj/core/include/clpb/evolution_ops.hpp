#pragma once

#include "clpb/rng.hpp"
#include "clpb/types.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace clpb {

/// Maps a minimized cost onto a positive, maximized fitness:
/// 1/(1+cost) for cost >= 0 and 1+|cost| below zero.
double fitness_from_cost(double cost);

struct Individual {
    std::vector<double> position;
    double cost = std::numeric_limits<double>::infinity();
    double fitness = 0.0;
    /// True until the current position has been evaluated.
    bool stale = true;
    /// Slot in the main population this individual was copied from, if any.
    std::optional<std::size_t> origin;

    Individual() = default;
    explicit Individual(std::vector<double> pos) : position(std::move(pos)) {}

    void set_cost(double c) {
        cost = c;
        fitness = fitness_from_cost(c);
        stale = false;
    }
    void mark_stale() { stale = true; }
};

using Population = std::vector<Individual>;

enum class CrossoverKind { SinglePoint, Uniform, Arithmetic };
enum class MutationKind { UniformReset, Gaussian };
enum class SelectionKind { Roulette, Tournament };

std::string_view to_string(CrossoverKind k);
std::string_view to_string(MutationKind k);
std::string_view to_string(SelectionKind k);
std::optional<CrossoverKind> parse_crossover(std::string_view s);
std::optional<MutationKind> parse_mutation(std::string_view s);
std::optional<SelectionKind> parse_selection(std::string_view s);

/// Stable sort, highest fitness first. Throws ContractError on stale members.
void sort_by_fitness_desc(Population& pop);

/// Indices of k members drawn without replacement, fitness-proportionally
/// (roulette) or by binary tournament. Throws ContractError if k > size.
std::vector<std::size_t> select_indices(std::span<const Individual> pop, std::size_t k, Rng& rng,
                                        SelectionKind kind = SelectionKind::Roulette);

/// Copies of the members chosen by select_indices, in selection order.
Population select(std::span<const Individual> pop, std::size_t k, Rng& rng,
                  SelectionKind kind = SelectionKind::Roulette);

/// With probability `rate`, recombines two parents; otherwise returns
/// copies. Single-point crossover cuts at c in [1, dim-1] and swaps tails;
/// it falls back to copies when dim < 2. Recombined children are stale.
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, double rate, Rng& rng,
                                            CrossoverKind kind = CrossoverKind::SinglePoint);

struct MutationParams {
    MutationKind kind = MutationKind::UniformReset;
    /// Gaussian step as a fraction of each coordinate's range.
    double sigma_fraction = 0.1;
};

/// Each gene independently, with probability `rate`, is redrawn (uniform
/// reset) or perturbed (Gaussian); the result is clamped to `bounds`.
/// The individual is marked stale only if a gene changed.
Individual mutate(Individual ind, double rate, const Bounds& bounds, Rng& rng, const MutationParams& params = {});

/// Coordinate-wise clamp into the box.
std::vector<double> clamp(std::vector<double> x, const Bounds& bounds);
void clamp_in_place(std::span<double> x, const Bounds& bounds);

/// A uniformly random point in the box.
std::vector<double> random_position(const Bounds& bounds, Rng& rng);

} // namespace clpb
