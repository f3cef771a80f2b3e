#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quadyn/types.hpp"

namespace quadyn {

struct SolveResult {
  std::vector<double> solution;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string provenance;  // bracket or initial guess the solve started from
};

using ScalarFn = std::function<double(double)>;

/// Bisection on [lo, hi]; stops once the bracket is no wider than tol. Running
/// out of iterations is reported through converged == false, not thrown.
/// Throws Error{NoSignChange} or Error{NonFinite}.
SolveResult bisect(const ScalarFn& fn, double lo, double hi, double tol, int max_iter = 200);

/// Newton iteration with a central-difference derivative (h = 1e-7); converged
/// once |fn(x)| <= tol. Throws Error{DerivativeVanishes} or Error{MaxIterations}.
SolveResult newton_1d(const ScalarFn& fn, double x0, double tol, int max_iter = 50);

struct TrapezoidFixedPoints {
  SolveResult attracting;  // a* from bisection + Newton
  double bisection_estimate = 0.0;
  double repelling = kHalfPi;  // the square, exact
};

/// Solves c(a) = a on [lo, hi] (default [1.4, 1.5]).
TrapezoidFixedPoints solve_trapezoid_fixed_point(double tol, double lo = 1.4, double hi = 1.5);

// Reduced chart: beta is eliminated through the angle-sum constraint.

struct ChartPoint {
  double alpha = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  double beta() const noexcept { return kTwoPi - alpha - gamma - delta; }
  std::array<double, 3> as_array() const noexcept { return {alpha, gamma, delta}; }
  static ChartPoint from_array(const std::array<double, 3>& v) noexcept { return {v[0], v[1], v[2]}; }
};

ChartPoint to_chart(const AngleTuple& q) noexcept;
/// Throws on an implied tuple that is not a valid angle tuple.
AngleTuple from_chart(const ChartPoint& p);

using Matrix3 = std::array<std::array<double, 3>, 3>;
using ChartMap = std::function<ChartPoint(const ChartPoint&)>;

/// Residual of the three 2-cycle relations, right-hand side minus unknown, in
/// the order (alpha, delta, gamma) the relations are written.
std::array<double, 3> cycle_system_residual(const ChartPoint& p);

/// Right-hand sides of the 2-cycle relations as a chart map (alpha, gamma, delta).
ChartPoint cycle_system_rhs(const ChartPoint& p);

/// Damped Newton on the 2-cycle relations. Without an initial point, the
/// start comes from 50 iterates of the seed (1.2, 2.1, 1.5, 2*pi - 4.8),
/// relabeled to whichever of its dihedral images has the smallest residual.
/// solution = (alpha, beta, gamma, delta). Throws Error{MaxIterations} or
/// Error{StepCollapse}.
SolveResult solve_cycle_system(std::optional<ChartPoint> initial, double tol, int max_iter = 100);

/// Central differences of map at p, one chart coordinate at a time.
/// Throws Error{DomainError} for h outside [1e-8, 1e-4] and
/// Error{BoundaryTooClose} when p is within h of the chart boundary.
Matrix3 fd_jacobian(const ChartMap& map, const ChartPoint& p, double h);

/// Moduli of the eigenvalues from the closed-form roots of the characteristic
/// cubic, sorted descending.
std::array<double, 3> eigenvalue_moduli_3x3(const Matrix3& m);

/// f (order 1) or f o f (order 2) followed by rotate_labels(., relabel),
/// expressed on the chart.
ChartMap chart_step_map(int order, int relabel = 0);

/// The label rotation r that brings step^map_order(q) closest to q. Cycle
/// points come back only up to a rotation of their labels (the general 2-cycle
/// returns with r = 1), so the return map is the rotated power of f.
int return_rotation(const AngleTuple& q, int map_order);

struct StabilityReport {
  ChartPoint point;
  int map_order = 1;
  int relabel = 0;  // rotation applied after the map, see return_rotation
  Matrix3 jacobian{};
  std::array<double, 3> eigenvalue_moduli{};
  double spectral_radius = 0.0;
  double fd_step = 0.0;
};

/// Spectrum of the return map at q: the chart Jacobian of
/// chart_step_map(map_order, return_rotation(q, map_order)).
StabilityReport stability_report(const AngleTuple& q, int map_order, double h = 1e-6);

}  // namespace quadyn
