#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clpb {

/// The ten one-dimensional chaotic maps used to seed CLPB populations.
/// Enumeration order is the canonical listing order; CLPB1..CLPB10 follow it.
enum class ChaoticMapKind {
    Chebyshev,
    Circle,
    GaussMouse,
    Iterative,
    Logistic,
    Piecewise,
    Sine,
    Singer,
    Sinusoidal,
    Tent,
};

inline constexpr std::array<ChaoticMapKind, 10> kAllChaoticMaps = {
    ChaoticMapKind::Chebyshev, ChaoticMapKind::Circle,   ChaoticMapKind::GaussMouse,
    ChaoticMapKind::Iterative, ChaoticMapKind::Logistic, ChaoticMapKind::Piecewise,
    ChaoticMapKind::Sine,      ChaoticMapKind::Singer,   ChaoticMapKind::Sinusoidal,
    ChaoticMapKind::Tent,
};

inline constexpr double kDefaultChaoticSeed = 0.7;

/// Lower-case identifier ("gaussmouse", "logistic", ...).
std::string_view to_string(ChaoticMapKind kind);
/// Human-readable name ("Gauss/mouse").
std::string_view display_name(ChaoticMapKind kind);
/// Case-insensitive lookup; accepts "gauss", "gauss/mouse" and "gaussmouse".
std::optional<ChaoticMapKind> parse_chaotic_map(std::string_view name);

struct NativeRange {
    double lo;
    double hi;
};

/// [0,1] for most maps, [-1,1] for Chebyshev and Iterative.
NativeRange native_range(ChaoticMapKind kind);

/// Deterministic iterator over a chaotic map's orbit.
///
/// After every recurrence step the state is clamped to the native range and,
/// if it lands within 1e-12 of an absorbing point (0, 1, or -1 for the
/// symmetric maps), nudged 1e-6 into the interior so that no orbit collapses.
class ChaoticStream {
  public:
    /// Throws DomainError when x0 lies outside the map's native range.
    explicit ChaoticStream(ChaoticMapKind kind, double x0 = kDefaultChaoticSeed);

    /// Advances one step and returns the new state in the native range.
    double next_raw();
    /// Advances one step and returns the state mapped onto [0,1].
    double next_unit();

    ChaoticMapKind kind() const noexcept { return kind_; }
    double state() const noexcept { return state_; }
    double x0() const noexcept { return x0_; }
    std::size_t step_index() const noexcept { return step_; }

    /// Maps a native-range value to [0,1] ((x+1)/2 for [-1,1] maps).
    static double to_unit(ChaoticMapKind kind, double raw);

  private:
    ChaoticMapKind kind_;
    double x0_;
    double state_;
    std::size_t step_ = 0;
    std::size_t guard_streak_ = 0;
};

/// n successive next_unit() values from a fresh stream.
std::vector<double> sample_sequence(ChaoticMapKind kind, double x0, std::size_t n);

} // namespace clpb
