#pragma once

#include "quadyn/types.hpp"

namespace quadyn::reference {

// Published values, truncated to double. Used as classification targets and
// as the yardstick of the verification suite.

/// Attracting fixed point of the trapezoid submap c(a) = a.
inline constexpr double kTrapezoidFixedPoint = 1.48342158769377952440379165224;

/// Angles (alpha, beta, gamma, delta) of one member of the general 2-cycle.
inline constexpr Quad kGeneralCycle = {
    1.54819305248669225152933985324,
    1.82405188512759300508614890573,
    1.41515953031350909799654144250,
    1.49578083925179212231325656509,
};

/// Leading digits of the displayed trapezoid 2-cycle,
/// (p, p, q, q) <-> (r, pi/2, r, pi/2 + s).
inline constexpr double kTrapezoidCycleP = 1.48342;
inline constexpr double kTrapezoidCycleQ = 1.65817;
inline constexpr double kTrapezoidCycleR = 1.44472;
inline constexpr double kTrapezoidCycleS = 0.25214;

/// Approximate slope of c(a) at the attracting fixed point.
inline constexpr double kTrapezoidSlope = 0.8;

}  // namespace quadyn::reference
