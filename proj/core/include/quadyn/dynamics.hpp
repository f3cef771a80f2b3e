#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "quadyn/types.hpp"

namespace quadyn {

/// Longest cycle the iterator looks for.
inline constexpr int kMaxPeriod = 8;
/// Consecutive recurrences required before a period is accepted.
inline constexpr int kCycleConfirmations = 3;
/// Default recurrence tolerance for cycle detection.
inline constexpr double kDefaultCycleTolerance = 1e-12;
/// Recurrence tolerance for trapezoid seeds. The trapezoid 2-cycle attracts
/// inside its family but repels across it, so rounding carries exact-family
/// orbits away once they are within ~1e-9 of the cycle.
inline constexpr double kTrapezoidCycleTolerance = 1e-8;
/// Dihedral distance within which a cycle member matches a known limit set.
inline constexpr double kClassificationTolerance = 1e-6;

/// The map f: the new angles at (A, B, C, D) are the balanced edge lengths
/// (x1, x2, x3, x4) of q.
AngleTuple step(const AngleTuple& q);

enum class CycleClass {
  SquareFixed,
  Trapezoid2Cycle,
  General2Cycle,
  OtherCycle,
  NoConvergence,
};

std::string_view to_string(CycleClass c) noexcept;

struct CycleInfo {
  int period = 0;  // 0 when no recurrence was detected
  std::vector<AngleTuple> representative_states;
  CycleClass classification = CycleClass::NoConvergence;
  double residual = 0.0;        // recurrence error of the representatives
  double match_distance = 0.0;  // dihedral distance to the matched limit set
};

struct Trajectory {
  std::vector<AngleTuple> states;
  std::vector<double> residuals;  // sup-norm between consecutive states
  CycleInfo cycle;

  int iterations() const noexcept { return static_cast<int>(states.size()) - 1; }
};

/// Applies step() until a cycle of period <= kMaxPeriod recurs for
/// kCycleConfirmations consecutive iterates, or max_iter steps are done.
///
/// Recurrence is measured modulo cyclic relabeling (rotation_distance). f
/// commutes with rotations, and the general 2-cycle returns to itself only up
/// to a rotation of the labels, so the labeled orbit is longer than the
/// geometric one.
Trajectory iterate(const AngleTuple& q0, int max_iter, double tol = kDefaultCycleTolerance);

/// Classifies the period-many representatives against the square, the
/// trapezoid pair and the general pair, in that order.
CycleInfo classify_cycle(std::vector<AngleTuple> representatives, int period, double residual);

/// Minimum sup-norm distance between p and the four rotations of q.
double rotation_distance(const AngleTuple& p, const AngleTuple& q);

/// Minimum sup-norm distance between p and the eight dihedral relabelings of q.
double dihedral_distance(const AngleTuple& p, const AngleTuple& q);

/// Same distances on raw tuples, e.g. truncated published values.
double rotation_distance(const Quad& p, const Quad& q) noexcept;
double dihedral_distance(const Quad& p, const Quad& q) noexcept;

// Trapezoid submap.

struct TrapezoidParam {
  double a = 0.0;  // base angle in (0, pi/2]
  double c = 0.0;  // image under the double step
};

/// c(a) = pi / (1 + sin(p) + cos(p)), p = pi / (2 + 2 cos a). Throws
/// Error{DomainError} outside (0, pi/2].
double c_map(double a);

/// One-sided limit of c(a) as a -> 0+, pi / (sqrt(2) + 1).
double c_map_limit_at_zero() noexcept;

TrapezoidParam trapezoid_param(double a);

/// Central-difference slope of c_map. Requires a +/- h inside (0, pi/2].
double c_map_derivative(double a, double h = 1e-6);

/// Edges of the double image of a quadrangle with two equal opposite edges.
/// Sums to 2*pi.
EdgeTuple trapezoid_edges(double a);

/// The isosceles trapezoid angle tuple (a, pi - a, pi - a, a).
AngleTuple trapezoid_angles(double a);

/// Reference limit sets used by the classifier.
struct LimitSets {
  AngleTuple square;
  AngleTuple trapezoid_first;   // (a*, pi - a*, pi - a*, a*)
  AngleTuple trapezoid_second;  // step(trapezoid_first)
  AngleTuple general_first;     // published 2-cycle angles
  AngleTuple general_second;    // step(general_first)
};

const LimitSets& limit_sets();

}  // namespace quadyn
