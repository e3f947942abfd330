#include "clpb/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace clpb::functions {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
} // namespace

double sphere(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum;
}

double rastrigin(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
    return sum;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * kPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + kE;
}

double griewank(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double weierstrass(std::span<const double> x) {
    constexpr double a = 0.5;
    constexpr double b = 3.0;
    constexpr int kmax = 20;
    double offset = 0.0;
    for (int k = 0; k <= kmax; ++k) offset += std::pow(a, k) * std::cos(kPi * std::pow(b, k));
    double sum = 0.0;
    for (double v : x) {
        for (int k = 0; k <= kmax; ++k) {
            sum += std::pow(a, k) * std::cos(2.0 * kPi * std::pow(b, k) * (v + 0.5));
        }
    }
    return sum - static_cast<double>(x.size()) * offset;
}

double lennard_jones_energy(std::span<const double> x) {
    // Atoms are consecutive (x, y, z) triples; pair potential r^-12 - 2 r^-6.
    const std::size_t atoms = x.size() / 3;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < atoms; ++i) {
        for (std::size_t j = i + 1; j < atoms; ++j) {
            const double dx = x[3 * i] - x[3 * j];
            const double dy = x[3 * i + 1] - x[3 * j + 1];
            const double dz = x[3 * i + 2] - x[3 * j + 2];
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double r6 = r2 * r2 * r2;
            if (r6 > 1.0e-10) {
                sum += (1.0 / r6 - 2.0) / r6;
            } else {
                sum += 1.0e20;
            }
        }
    }
    return sum;
}

} // namespace clpb::functions
