#include "clpb/chaotic_maps.hpp"

#include "clpb/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace clpb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAbsorbTolerance = 1e-12;
constexpr double kNudge = 1e-6;

// Map parameters.
constexpr double kCircleA = 0.5;
constexpr double kCircleB = 0.2;
constexpr double kIterativeA = 0.7;
constexpr double kPiecewiseP = 0.4;
constexpr double kSingerMu = 1.07;
constexpr double kSinusoidalA = 2.3;
constexpr double kTentBreak = 0.7;

double frac(double v) { return v - std::floor(v); }

double step_map(ChaoticMapKind kind, double x, std::size_t k) {
    switch (kind) {
    case ChaoticMapKind::Chebyshev:
        return std::cos(static_cast<double>(k) * std::acos(x));
    case ChaoticMapKind::Circle:
        return frac(x + kCircleB - (kCircleA / (2.0 * kPi)) * std::sin(2.0 * kPi * x));
    case ChaoticMapKind::GaussMouse:
        return x == 0.0 ? 1.0 : frac(1.0 / x);
    case ChaoticMapKind::Iterative:
        return std::sin(kIterativeA * kPi / x);
    case ChaoticMapKind::Logistic:
        return 4.0 * x * (1.0 - x);
    case ChaoticMapKind::Piecewise:
        if (x < kPiecewiseP) return x / kPiecewiseP;
        if (x < 0.5) return (x - kPiecewiseP) / (0.5 - kPiecewiseP);
        if (x < 1.0 - kPiecewiseP) return (1.0 - kPiecewiseP - x) / (0.5 - kPiecewiseP);
        return (1.0 - x) / kPiecewiseP;
    case ChaoticMapKind::Sine:
        return std::sin(kPi * x);
    case ChaoticMapKind::Singer: {
        const double x2 = x * x;
        return kSingerMu * (7.86 * x - 23.31 * x2 + 28.75 * x2 * x - 13.302875 * x2 * x2);
    }
    case ChaoticMapKind::Sinusoidal:
        return kSinusoidalA * x * x * std::sin(kPi * x);
    case ChaoticMapKind::Tent:
        return x < kTentBreak ? x / kTentBreak : (10.0 / 3.0) * (1.0 - x);
    }
    return x;
}

// Keeps the orbit away from absorbing points and inside the native range.
// Consecutive firings widen the nudge by an irrational step so the orbit cannot
// cycle through a pre-image of the absorbing point (e.g. Gauss/mouse at 1e-6).
double safeguard(ChaoticMapKind kind, double x, std::size_t& streak) {
    const NativeRange r = native_range(kind);
    if (!std::isfinite(x)) x = 0.0;
    x = std::clamp(x, r.lo, r.hi);
    const double nudge = kNudge * (1.0 + (std::numbers::phi - 1.0) * static_cast<double>(streak));
    double out = x;
    if (std::abs(x) < kAbsorbTolerance) out = nudge;
    else if (std::abs(x - 1.0) < kAbsorbTolerance) out = 1.0 - nudge;
    else if (r.lo < 0.0 && std::abs(x + 1.0) < kAbsorbTolerance) out = -1.0 + nudge;
    streak = (out == x) ? 0 : streak + 1;
    return out;
}

std::string lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '/' || c == '-' || c == '_' || c == ' ') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

} // namespace

std::string_view to_string(ChaoticMapKind kind) {
    switch (kind) {
    case ChaoticMapKind::Chebyshev: return "chebyshev";
    case ChaoticMapKind::Circle: return "circle";
    case ChaoticMapKind::GaussMouse: return "gaussmouse";
    case ChaoticMapKind::Iterative: return "iterative";
    case ChaoticMapKind::Logistic: return "logistic";
    case ChaoticMapKind::Piecewise: return "piecewise";
    case ChaoticMapKind::Sine: return "sine";
    case ChaoticMapKind::Singer: return "singer";
    case ChaoticMapKind::Sinusoidal: return "sinusoidal";
    case ChaoticMapKind::Tent: return "tent";
    }
    return "unknown";
}

std::string_view display_name(ChaoticMapKind kind) {
    switch (kind) {
    case ChaoticMapKind::Chebyshev: return "Chebyshev";
    case ChaoticMapKind::Circle: return "Circle";
    case ChaoticMapKind::GaussMouse: return "Gauss/mouse";
    case ChaoticMapKind::Iterative: return "Iterative";
    case ChaoticMapKind::Logistic: return "Logistic";
    case ChaoticMapKind::Piecewise: return "Piecewise";
    case ChaoticMapKind::Sine: return "Sine";
    case ChaoticMapKind::Singer: return "Singer";
    case ChaoticMapKind::Sinusoidal: return "Sinusoidal";
    case ChaoticMapKind::Tent: return "Tent";
    }
    return "Unknown";
}

std::optional<ChaoticMapKind> parse_chaotic_map(std::string_view name) {
    const std::string key = lower(name);
    if (key == "gauss" || key == "mouse") return ChaoticMapKind::GaussMouse;
    for (ChaoticMapKind kind : kAllChaoticMaps) {
        if (key == to_string(kind)) return kind;
    }
    return std::nullopt;
}

NativeRange native_range(ChaoticMapKind kind) {
    if (kind == ChaoticMapKind::Chebyshev || kind == ChaoticMapKind::Iterative) return {-1.0, 1.0};
    return {0.0, 1.0};
}

ChaoticStream::ChaoticStream(ChaoticMapKind kind, double x0) : kind_(kind), x0_(x0), state_(x0) {
    const NativeRange r = native_range(kind);
    if (!(x0 >= r.lo && x0 <= r.hi)) {
        std::ostringstream msg;
        msg << display_name(kind) << " map: initial point " << x0 << " outside native range [" << r.lo
            << ", " << r.hi << "]";
        throw DomainError(msg.str());
    }
}

double ChaoticStream::next_raw() {
    ++step_;
    // Chebyshev's order is the 1-based index of the value being produced.
    state_ = safeguard(kind_, step_map(kind_, state_, step_), guard_streak_);
    return state_;
}

double ChaoticStream::next_unit() { return to_unit(kind_, next_raw()); }

double ChaoticStream::to_unit(ChaoticMapKind kind, double raw) {
    if (native_range(kind).lo < 0.0) return (raw + 1.0) / 2.0;
    return raw;
}

std::vector<double> sample_sequence(ChaoticMapKind kind, double x0, std::size_t n) {
    ChaoticStream stream(kind, x0);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(stream.next_unit());
    return out;
}

} // namespace clpb
