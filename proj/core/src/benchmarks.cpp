#include "clpb/benchmarks.hpp"

#include "clpb/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace clpb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSchwefelArgmin = 420.9687462275036;
constexpr double kSchwefelDepth = 418.9828872724338;
constexpr double kLennardJonesOffset = 12.7120622568;

using Fn = std::function<double(std::span<const double>)>;

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

// ---------------------------------------------------------------------------
// Classical TF1..TF13

double schwefel_222(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (double v : x) {
        sum += std::abs(v);
        prod *= std::abs(v);
    }
    return sum + prod;
}

double schwefel_12(std::span<const double> x) {
    double sum = 0.0;
    double running = 0.0;
    for (double v : x) {
        running += v;
        sum += running * running;
    }
    return sum;
}

double schwefel_221(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double rosenbrock(std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double step(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) {
        const double f = std::floor(v + 0.5);
        sum += f * f;
    }
    return sum;
}

double quartic(std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v2 = x[i] * x[i];
        sum += static_cast<double>(i + 1) * v2 * v2;
    }
    return sum;
}

double schwefel_226(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum -= v * std::sin(std::sqrt(std::abs(v)));
    return sum;
}

double penalty_u(double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
}

double penalized1(std::span<const double> x) {
    const std::size_t n = x.size();
    auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
    const double s1 = std::sin(kPi * y(0));
    double sum = 10.0 * s1 * s1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = std::sin(kPi * y(i + 1));
        sum += (y(i) - 1.0) * (y(i) - 1.0) * (1.0 + 10.0 * s * s);
    }
    sum += (y(n - 1) - 1.0) * (y(n - 1) - 1.0);
    double pen = 0.0;
    for (double v : x) pen += penalty_u(v, 10.0, 100.0, 4.0);
    return kPi / static_cast<double>(n) * sum + pen;
}

double penalized2(std::span<const double> x) {
    const std::size_t n = x.size();
    const double s1 = std::sin(3.0 * kPi * x[0]);
    double sum = s1 * s1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = std::sin(3.0 * kPi * x[i + 1]);
        sum += (x[i] - 1.0) * (x[i] - 1.0) * (1.0 + s * s);
    }
    const double sn = std::sin(2.0 * kPi * x[n - 1]);
    sum += (x[n - 1] - 1.0) * (x[n - 1] - 1.0) * (1.0 + sn * sn);
    double pen = 0.0;
    for (double v : x) pen += penalty_u(v, 5.0, 100.0, 4.0);
    return 0.1 * sum + pen;
}

// ---------------------------------------------------------------------------
// Composite TF14..TF19: ten shifted basic functions mixed by distance weights.

struct CompositeDef {
    std::array<Fn, 10> parts;
    std::array<double, 10> sigma;
    std::array<double, 10> lambda;
};

CompositeDef composite_def(int index) {
    using namespace functions;
    const Fn sph = sphere;
    const Fn gri = griewank;
    const Fn ras = rastrigin;
    const Fn ack = ackley;
    const Fn wei = weierstrass;
    CompositeDef d;
    d.sigma.fill(1.0);
    switch (index) {
    case 1:
        d.parts.fill(sph);
        d.lambda.fill(5.0 / 100.0);
        break;
    case 2:
        d.parts.fill(gri);
        d.lambda.fill(5.0 / 100.0);
        break;
    case 3:
        d.parts.fill(gri);
        d.lambda.fill(1.0);
        break;
    case 4:
        d.parts = {ack, ack, ras, ras, wei, wei, gri, gri, sph, sph};
        d.lambda = {5.0 / 32, 5.0 / 32, 1.0, 1.0, 5.0 / 0.5, 5.0 / 0.5, 5.0 / 100, 5.0 / 100, 5.0 / 100,
                    5.0 / 100};
        break;
    case 5:
    case 6:
        d.parts = {ras, ras, wei, wei, gri, gri, ack, ack, sph, sph};
        d.lambda = {1.0 / 5, 1.0 / 5, 5.0 / 0.5, 5.0 / 0.5, 5.0 / 100, 5.0 / 100, 5.0 / 32, 5.0 / 32, 5.0 / 100,
                    5.0 / 100};
        if (index == 6) {
            for (int i = 0; i < 10; ++i) {
                d.sigma[static_cast<std::size_t>(i)] = 0.1 * (i + 1);
                d.lambda[static_cast<std::size_t>(i)] *= 0.1 * (i + 1);
            }
        }
        break;
    default:
        throw ContractError("composite index out of range");
    }
    return d;
}

// Default optima: a fixed SplitMix64 stream per function, uniform in [-5,5).
std::vector<std::vector<double>> default_composite_shifts(int index, std::size_t dim) {
    std::uint64_t state = 0xC0FFEE00ULL + static_cast<std::uint64_t>(index);
    std::vector<std::vector<double>> shifts(10, std::vector<double>(dim));
    for (auto& row : shifts) {
        for (double& v : row) {
            state = mix_seed(state);
            v = -5.0 + 10.0 * static_cast<double>(state >> 11) * 0x1.0p-53;
        }
    }
    return shifts;
}

Fn make_composite(int index, std::vector<std::vector<double>> shifts) {
    constexpr double kScale = 2000.0;
    const CompositeDef def = composite_def(index);
    const std::size_t dim = shifts.front().size();
    std::array<double, 10> fmax{};
    std::vector<double> probe(dim);
    for (std::size_t i = 0; i < 10; ++i) {
        std::fill(probe.begin(), probe.end(), 5.0 / def.lambda[i]);
        fmax[i] = std::abs(def.parts[i](probe));
    }
    return [def, fmax, shifts = std::move(shifts), dim](std::span<const double> x) {
        std::array<double, 10> w{};
        double wmax = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                const double d = x[j] - shifts[i][j];
                d2 += d * d;
            }
            w[i] = std::exp(-d2 / (2.0 * static_cast<double>(dim) * def.sigma[i] * def.sigma[i]));
            wmax = std::max(wmax, w[i]);
        }
        double wsum = 0.0;
        for (double& wi : w) {
            if (wi != wmax) wi *= 1.0 - std::pow(wmax, 10.0);
            wsum += wi;
        }
        std::vector<double> z(dim);
        double total = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            const double weight = wsum > 0.0 ? w[i] / wsum : 0.1;
            if (weight == 0.0) continue;
            for (std::size_t j = 0; j < dim; ++j) z[j] = (x[j] - shifts[i][j]) / def.lambda[i];
            const double fit = kScale * def.parts[i](z) / fmax[i];
            total += weight * (fit + 100.0 * static_cast<double>(i));
        }
        return total;
    };
}

// ---------------------------------------------------------------------------
// CEC-C06 2019

double cec_chebyshev(std::span<const double> x) {
    const std::size_t n = x.size();
    // d = T_{n-1}(1.2)
    double a = 1.0;
    double b = 1.2;
    double d = b;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        d = 2.4 * b - a;
        a = b;
        b = d;
    }
    auto horner = [&](double y) {
        double p = x[0];
        for (std::size_t j = 1; j < n; ++j) p = y * p + x[j];
        return p;
    };
    double sum = 0.0;
    const std::size_t m = 32 * n;
    for (std::size_t k = 0; k <= m; ++k) {
        const double y = 2.0 * static_cast<double>(k) / static_cast<double>(m) - 1.0;
        const double w = horner(y);
        if (w > 1.0) sum += (w - 1.0) * (w - 1.0);
        else if (w < -1.0) sum += (w + 1.0) * (w + 1.0);
    }
    for (double y : {1.2, -1.2}) {
        const double p = horner(y);
        if (p < d) sum += (p - d) * (p - d);
    }
    return sum;
}

double cec_hilbert(std::span<const double> x) {
    const auto b = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(x.size()))));
    double sum = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t k = 0; k < b; ++k) {
            double y = 0.0;
            for (std::size_t j = 0; j < b; ++j) y += x[k + b * j] / static_cast<double>(i + j + 1);
            sum += i == k ? std::abs(y - 1.0) : std::abs(y);
        }
    }
    return sum;
}

double cec_schwefel(std::span<const double> z) {
    const double n = static_cast<double>(z.size());
    double f = 0.0;
    for (double zi : z) {
        const double v = zi + kSchwefelArgmin;
        if (v > 500.0) {
            const double r = 500.0 - std::fmod(v, 500.0);
            f -= r * std::sin(std::sqrt(r));
            const double t = (v - 500.0) / 100.0;
            f += t * t / n;
        } else if (v < -500.0) {
            const double r = -500.0 + std::fmod(std::abs(v), 500.0);
            f -= r * std::sin(std::sqrt(500.0 - std::fmod(std::abs(v), 500.0)));
            const double t = (v + 500.0) / 100.0;
            f += t * t / n;
        } else {
            f -= v * std::sin(std::sqrt(std::abs(v)));
        }
    }
    return f + kSchwefelDepth * n;
}

double cec_expanded_schaffer(std::span<const double> z) {
    auto g = [](double a, double b) {
        const double r2 = a * a + b * b;
        const double s = std::sin(std::sqrt(r2));
        const double den = 1.0 + 0.001 * r2;
        return 0.5 + (s * s - 0.5) / (den * den);
    };
    const std::size_t n = z.size();
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) f += g(z[i], z[(i + 1) % n]);
    return f;
}

double cec_happycat(std::span<const double> z) {
    constexpr double alpha = 1.0 / 8.0;
    const double n = static_cast<double>(z.size());
    double r2 = 0.0;
    double sum = 0.0;
    for (double zi : z) {
        const double v = zi - 1.0;
        r2 += v * v;
        sum += v;
    }
    return std::pow(std::abs(r2 - n), 2.0 * alpha) + (0.5 * r2 + sum) / n + 0.5;
}

struct ShiftRotate {
    std::vector<double> shift;
    std::vector<double> rotation; // row-major, empty = identity
    double scale = 1.0;

    void apply(std::span<const double> x, std::vector<double>& y, std::vector<double>& z) const {
        const std::size_t n = x.size();
        for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - shift[i]) * scale;
        if (rotation.empty()) {
            z.assign(y.begin(), y.end());
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += rotation[i * n + j] * y[j];
            z[i] = acc;
        }
    }
};

Fn shifted_rotated(ShiftRotate sr, Fn inner) {
    return [sr = std::move(sr), inner = std::move(inner)](std::span<const double> x) {
        std::vector<double> y(x.size());
        std::vector<double> z(x.size());
        sr.apply(x, y, z);
        return inner(z);
    };
}

// ---------------------------------------------------------------------------

struct Entry {
    const char* id;
    Category category;
    std::size_t default_dim;
    bool scalable;
    double lo;
    double hi;
};

const std::array<Entry, 29>& registry() {
    static const std::array<Entry, 29> table = {{
        {"TF1", Category::Unimodal, 30, true, -100, 100},
        {"TF2", Category::Unimodal, 30, true, -10, 10},
        {"TF3", Category::Unimodal, 30, true, -100, 100},
        {"TF4", Category::Unimodal, 30, true, -100, 100},
        {"TF5", Category::Unimodal, 30, true, -30, 30},
        {"TF6", Category::Unimodal, 30, true, -100, 100},
        {"TF7", Category::Unimodal, 30, true, -1.28, 1.28},
        {"TF8", Category::Multimodal, 30, true, -500, 500},
        {"TF9", Category::Multimodal, 30, true, -5.12, 5.12},
        {"TF10", Category::Multimodal, 30, true, -32, 32},
        {"TF11", Category::Multimodal, 30, true, -600, 600},
        {"TF12", Category::Multimodal, 30, true, -50, 50},
        {"TF13", Category::Multimodal, 30, true, -50, 50},
        {"TF14", Category::Composite, 10, true, -5, 5},
        {"TF15", Category::Composite, 10, true, -5, 5},
        {"TF16", Category::Composite, 10, true, -5, 5},
        {"TF17", Category::Composite, 10, true, -5, 5},
        {"TF18", Category::Composite, 10, true, -5, 5},
        {"TF19", Category::Composite, 10, true, -5, 5},
        {"CEC01", Category::Cec2019, 9, false, -8192, 8192},
        {"CEC02", Category::Cec2019, 16, false, -16384, 16384},
        {"CEC03", Category::Cec2019, 18, false, -4, 4},
        {"CEC04", Category::Cec2019, 10, true, -100, 100},
        {"CEC05", Category::Cec2019, 10, true, -100, 100},
        {"CEC06", Category::Cec2019, 10, true, -100, 100},
        {"CEC07", Category::Cec2019, 10, true, -100, 100},
        {"CEC08", Category::Cec2019, 10, true, -100, 100},
        {"CEC09", Category::Cec2019, 10, true, -100, 100},
        {"CEC10", Category::Cec2019, 10, true, -100, 100},
    }};
    return table;
}

const Entry* find_entry(std::string_view id) {
    const std::string key = upper(id);
    for (const Entry& e : registry()) {
        if (key == e.id) return &e;
    }
    return nullptr;
}

std::optional<std::filesystem::path> data_file(const SuiteOptions& options, const std::string& name) {
    if (!options.data_dir) return std::nullopt;
    auto path = *options.data_dir / name;
    if (!std::filesystem::exists(path)) return std::nullopt;
    return path;
}

// Octahedral 6-atom cluster at the pair-potential optimum edge length.
std::vector<double> lennard_jones_octahedron() {
    // Edge a minimizes 12 V(a) + 3 V(a*sqrt2), V(r) = r^-12 - 2 r^-6.
    const double a = std::pow((12.0 + 3.0 / 64.0) / (12.0 + 3.0 / 8.0), 1.0 / 6.0);
    const double h = a / std::sqrt(2.0);
    return {h, 0, 0, -h, 0, 0, 0, h, 0, 0, -h, 0, 0, 0, h, 0, 0, -h};
}

std::vector<double> inverse_hilbert4() {
    return {16,   -120, 240,   -140,  -120, 1200,  -2700, 1680,
            240,  -2700, 6480, -4200, -140, 1680,  -4200, 2800};
}

void build_classical(ObjectiveSpec& spec, int n) {
    const std::size_t dim = spec.dim;
    auto at = [dim](double v) { return std::vector<double>(dim, v); };
    spec.known_best = 0.0;
    switch (n) {
    case 1: spec.fn = functions::sphere; spec.known_argmin = at(0); break;
    case 2: spec.fn = schwefel_222; spec.known_argmin = at(0); break;
    case 3: spec.fn = schwefel_12; spec.known_argmin = at(0); break;
    case 4: spec.fn = schwefel_221; spec.known_argmin = at(0); break;
    case 5: spec.fn = rosenbrock; spec.known_argmin = at(1); break;
    case 6: spec.fn = step; spec.known_argmin = at(0); break;
    case 7:
        spec.fn = quartic;
        spec.known_argmin = at(0);
        spec.noisy = true;
        break;
    case 8:
        spec.fn = schwefel_226;
        spec.known_argmin = at(kSchwefelArgmin);
        spec.known_best = -kSchwefelDepth * static_cast<double>(dim);
        break;
    case 9: spec.fn = functions::rastrigin; spec.known_argmin = at(0); break;
    case 10: spec.fn = functions::ackley; spec.known_argmin = at(0); break;
    case 11: spec.fn = functions::griewank; spec.known_argmin = at(0); break;
    case 12: spec.fn = penalized1; spec.known_argmin = at(-1); break;
    case 13: spec.fn = penalized2; spec.known_argmin = at(1); break;
    default: break;
    }
    spec.provenance = "analytic";
}

void build_composite(ObjectiveSpec& spec, int index, const SuiteOptions& options) {
    const std::string file = "shift_" + spec.id + ".txt";
    std::vector<std::vector<double>> shifts;
    if (auto path = data_file(options, file)) {
        shifts = read_matrix_file(*path);
        if (shifts.size() < 10) throw ContractError(path->string() + ": expected 10 shift rows");
        shifts.resize(10);
        for (auto& row : shifts) {
            if (row.size() < spec.dim) throw ContractError(path->string() + ": shift row shorter than dim");
            row.resize(spec.dim);
        }
        spec.provenance = "shift:" + path->string();
    } else {
        shifts = default_composite_shifts(index, spec.dim);
        spec.provenance = "shift:builtin-splitmix64";
    }
    spec.known_argmin = shifts.front();
    spec.known_best = 0.0;
    spec.fn = make_composite(index, std::move(shifts));
}

void build_cec(ObjectiveSpec& spec, int n, const SuiteOptions& options) {
    const std::size_t dim = spec.dim;
    spec.known_best = 0.0;
    switch (n) {
    case 1: {
        spec.fn = cec_chebyshev;
        std::vector<double> coeffs(dim, 0.0);
        // Coefficients of T_{dim-1}, highest power first.
        std::vector<double> prev{1.0};
        std::vector<double> cur{1.0, 0.0};
        for (std::size_t k = 2; k < dim; ++k) {
            std::vector<double> next(cur.size() + 1, 0.0);
            for (std::size_t i = 0; i < cur.size(); ++i) next[i] += 2.0 * cur[i];
            for (std::size_t i = 0; i < prev.size(); ++i) next[i + 2] -= prev[i];
            prev = std::move(cur);
            cur = std::move(next);
        }
        spec.known_argmin = cur;
        spec.provenance = "unshifted";
        return;
    }
    case 2:
        spec.fn = cec_hilbert;
        spec.known_argmin = inverse_hilbert4();
        spec.provenance = "unshifted";
        return;
    case 3:
        spec.fn = [](std::span<const double> x) {
            return functions::lennard_jones_energy(x) + kLennardJonesOffset;
        };
        spec.known_argmin = lennard_jones_octahedron();
        spec.known_best = functions::lennard_jones_energy(*spec.known_argmin) + kLennardJonesOffset;
        spec.provenance = "unshifted";
        return;
    default: break;
    }

    ShiftRotate sr;
    sr.shift.assign(dim, 0.0);
    std::string provenance = "shift:zero";
    if (auto path = data_file(options, "shift_" + spec.id + ".txt")) {
        auto rows = read_matrix_file(*path);
        std::vector<double> flat;
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        if (flat.size() < dim) throw ContractError(path->string() + ": shift vector shorter than dim");
        sr.shift.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(dim));
        provenance = "shift:" + path->string();
    }
    provenance += ";rotation:identity";
    if (auto path = data_file(options, "rotation_" + spec.id + ".txt")) {
        auto rows = read_matrix_file(*path);
        if (rows.size() < dim) throw ContractError(path->string() + ": rotation needs dim rows");
        for (std::size_t i = 0; i < dim; ++i) {
            if (rows[i].size() < dim) throw ContractError(path->string() + ": rotation row shorter than dim");
            sr.rotation.insert(sr.rotation.end(), rows[i].begin(),
                               rows[i].begin() + static_cast<std::ptrdiff_t>(dim));
        }
        provenance.resize(provenance.size() - std::string_view("identity").size());
        provenance += path->string();
    }
    spec.known_argmin = sr.shift;
    spec.provenance = provenance;

    Fn inner;
    switch (n) {
    case 4: sr.scale = 5.12 / 100.0; inner = functions::rastrigin; break;
    case 5: sr.scale = 600.0 / 100.0; inner = functions::griewank; break;
    case 6: sr.scale = 0.5 / 100.0; inner = functions::weierstrass; break;
    case 7: sr.scale = 1000.0 / 100.0; inner = cec_schwefel; break;
    case 8: sr.scale = 1.0; inner = cec_expanded_schaffer; break;
    case 9: sr.scale = 5.0 / 100.0; inner = cec_happycat; break;
    case 10: sr.scale = 1.0; inner = functions::ackley; break;
    default: throw ContractError("unknown CEC function");
    }
    spec.fn = shifted_rotated(std::move(sr), std::move(inner));
}

} // namespace

bool Bounds::contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
}

std::string_view to_string(Category c) {
    switch (c) {
    case Category::Unimodal: return "unimodal";
    case Category::Multimodal: return "multimodal";
    case Category::Composite: return "composite";
    case Category::Cec2019: return "cec2019";
    }
    return "unknown";
}

std::optional<Category> parse_category(std::string_view name) {
    for (Category c : {Category::Unimodal, Category::Multimodal, Category::Composite, Category::Cec2019}) {
        if (name == to_string(c)) return c;
    }
    return std::nullopt;
}

double ObjectiveSpec::evaluate(std::span<const double> x) const {
    if (x.size() != dim) {
        throw ContractError(id + ": expected " + std::to_string(dim) + " coordinates, got " +
                            std::to_string(x.size()));
    }
    if (!bounds.contains(x)) throw ContractError(id + ": input outside bounds (clamp before evaluating)");
    return fn(x);
}

double ObjectiveSpec::evaluate(std::span<const double> x, Rng& noise) const {
    const double value = evaluate(x);
    return noisy ? value + noise.uniform() : value;
}

const std::vector<std::string>& function_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const Entry& e : registry()) out.emplace_back(e.id);
        return out;
    }();
    return ids;
}

std::optional<Category> category_of(std::string_view id) {
    const Entry* e = find_entry(id);
    if (e == nullptr) return std::nullopt;
    return e->category;
}

ObjectiveSpec make_function(std::string_view id, std::optional<std::size_t> dim, const SuiteOptions& options) {
    const Entry* e = find_entry(id);
    if (e == nullptr) throw ContractError("unknown benchmark function '" + std::string(id) + "'");
    ObjectiveSpec spec;
    spec.id = e->id;
    spec.category = e->category;
    spec.dim = dim.value_or(e->default_dim);
    if (!e->scalable && spec.dim != e->default_dim) {
        throw ContractError(spec.id + " has fixed dimension " + std::to_string(e->default_dim));
    }
    if (spec.dim < 2) throw ContractError(spec.id + ": dimension must be at least 2");
    spec.bounds = Bounds::uniform(spec.dim, e->lo, e->hi);

    const std::string sid = spec.id;
    if (sid.starts_with("TF")) {
        const int n = std::stoi(sid.substr(2));
        if (n <= 13) build_classical(spec, n);
        else build_composite(spec, n - 13, options);
    } else {
        build_cec(spec, std::stoi(sid.substr(3)), options);
    }
    return spec;
}

std::vector<ObjectiveSpec> list_functions(std::optional<Category> filter, const SuiteOptions& options) {
    std::vector<ObjectiveSpec> out;
    for (const Entry& e : registry()) {
        if (filter && e.category != *filter) continue;
        out.push_back(make_function(e.id, std::nullopt, options));
    }
    return out;
}

CountedObjective::CountedObjective(ObjectiveSpec spec, EvalBudget budget, std::uint64_t noise_seed)
    : spec_(std::move(spec)), max_(budget.max_evaluations), used_(budget.used), noise_(mix_seed(noise_seed)) {
    detail::require(budget.used <= budget.max_evaluations, "budget already overdrawn");
}

double CountedObjective::operator()(std::span<const double> x) {
    std::size_t current = used_.load();
    do {
        if (current >= max_) {
            throw BudgetExhausted(spec_.id + ": evaluation budget of " + std::to_string(max_) + " exhausted");
        }
    } while (!used_.compare_exchange_weak(current, current + 1));
    return spec_.evaluate(x, noise_);
}

CountedObjective wrap_with_budget(const ObjectiveSpec& spec, EvalBudget budget, std::uint64_t noise_seed) {
    return CountedObjective(spec, budget, noise_seed);
}

std::vector<std::vector<double>> read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<double> row;
        std::string tok;
        while (ss >> tok) {
            try {
                row.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad number '" + tok + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace clpb
