#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace clpb {

/// Per-coordinate box constraints.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds uniform(std::size_t dim, double lo, double hi) {
        return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
    }

    std::size_t dim() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const;
};

/// Outcome of a single optimizer run.
struct RunResult {
    double best_cost = 0.0;
    std::vector<double> best_position;
    /// Best-ever cost after initialization (index 0) and after every iteration.
    std::vector<double> history;
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
    double wall_time = 0.0; ///< seconds spent inside the optimizer loop
    bool budget_exhausted = false;
};

} // namespace clpb
