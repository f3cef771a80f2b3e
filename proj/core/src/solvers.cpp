#include "quadyn/solvers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "quadyn/dynamics.hpp"
#include "quadyn/format.hpp"
#include "quadyn/geometry.hpp"

namespace quadyn {

namespace {

constexpr double kNewtonDiffStep = 1e-7;
constexpr int kMaxHalvings = 20;

double eval_finite(const ScalarFn& fn, double x) {
  const double v = fn(x);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFinite, "function value at x = " + format_real(x) + " is not finite");
  }
  return v;
}

double sup_norm(const std::array<double, 3>& v) noexcept {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

bool chart_point_valid(const ChartPoint& p) noexcept {
  const std::array<double, 4> angles{p.alpha, p.beta(), p.gamma, p.delta};
  return std::all_of(angles.begin(), angles.end(), [](double a) { return a > 0.0 && a < kPi; });
}

}  // namespace

SolveResult bisect(const ScalarFn& fn, double lo, double hi, double tol, int max_iter) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw Error(ErrorCode::DomainError, "bisect needs lo < hi and tol > 0");
  }
  double f_lo = eval_finite(fn, lo);
  const double f_hi = eval_finite(fn, hi);
  SolveResult out;
  out.provenance = "bracket [" + format_compact(lo) + ", " + format_compact(hi) + "]";
  if (f_lo == 0.0 || f_hi == 0.0) {
    out.solution = {f_lo == 0.0 ? lo : hi};
    out.converged = true;
    return out;
  }
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw Error(ErrorCode::NoSignChange, "no sign change on " + out.provenance);
  }
  int iter = 0;
  while (hi - lo > tol && iter < max_iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = eval_finite(fn, mid);
    ++iter;
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  out.solution = {0.5 * (lo + hi)};
  // For bisection the residual is the final bracket width.
  out.residual_norm = hi - lo;
  out.iterations = iter;
  out.converged = hi - lo <= tol;
  return out;
}

SolveResult newton_1d(const ScalarFn& fn, double x0, double tol, int max_iter) {
  SolveResult out;
  out.provenance = "initial guess " + format_compact(x0);
  double x = x0;
  for (int iter = 0; iter <= max_iter; ++iter) {
    const double fx = eval_finite(fn, x);
    if (std::abs(fx) <= tol) {
      out.solution = {x};
      out.residual_norm = std::abs(fx);
      out.iterations = iter;
      out.converged = true;
      return out;
    }
    if (iter == max_iter) {
      break;
    }
    const double slope =
        (eval_finite(fn, x + kNewtonDiffStep) - eval_finite(fn, x - kNewtonDiffStep)) / (2.0 * kNewtonDiffStep);
    if (!(std::abs(slope) > 1e-14)) {
      throw Error(ErrorCode::DerivativeVanishes, "derivative vanishes at x = " + format_real(x));
    }
    x -= fx / slope;
  }
  throw Error(ErrorCode::MaxIterations, "newton_1d did not reach |f| <= " + format_compact(tol) + " from " +
                                            out.provenance);
}

TrapezoidFixedPoints solve_trapezoid_fixed_point(double tol, double lo, double hi) {
  if (!(tol >= 1e-14)) {
    throw Error(ErrorCode::DomainError, "trapezoid fixed point tolerance must be >= 1e-14");
  }
  const ScalarFn gap = [](double a) { return c_map(a) - a; };
  const SolveResult coarse = bisect(gap, lo, hi, tol);
  TrapezoidFixedPoints out;
  out.bisection_estimate = coarse.solution.front();
  out.attracting = newton_1d(gap, out.bisection_estimate, tol);
  out.attracting.provenance = coarse.provenance + " then newton";
  return out;
}

ChartPoint to_chart(const AngleTuple& q) noexcept { return {q.alpha(), q.gamma(), q.delta()}; }

AngleTuple from_chart(const ChartPoint& p) {
  return validate_angles(Quad{p.alpha, p.beta(), p.gamma, p.delta});
}

namespace {

struct CycleTerms {
  double first_scale;   // pi / (sin a + sin d + sin(a + d))
  double second_scale;  // pi / (sin g + sin d + sin(g + d))
};

CycleTerms cycle_terms(const ChartPoint& p) noexcept {
  const double sd = std::sin(p.delta);
  return {kPi / (std::sin(p.alpha) + sd + std::sin(p.alpha + p.delta)),
          kPi / (std::sin(p.gamma) + sd + std::sin(p.gamma + p.delta))};
}

}  // namespace

ChartPoint cycle_system_rhs(const ChartPoint& p) {
  const CycleTerms t = cycle_terms(p);
  const double sd = std::sin(p.delta);
  return {t.first_scale * std::sin(p.alpha + p.delta) + t.second_scale * std::sin(p.gamma),
          t.second_scale * sd, t.first_scale * sd};
}

std::array<double, 3> cycle_system_residual(const ChartPoint& p) {
  const ChartPoint rhs = cycle_system_rhs(p);
  return {rhs.alpha - p.alpha, rhs.delta - p.delta, rhs.gamma - p.gamma};
}

namespace {

ChartPoint default_cycle_start(std::string& provenance) {
  AngleTuple q = validate_angles(Quad{1.2, 2.1, 1.5, kTwoPi - 4.8});
  for (int i = 0; i < 50; ++i) {
    q = step(q);
  }
  // The iterate sits near the cycle in some labeling; pick the relabeling
  // under which the relations hold best.
  ChartPoint best{};
  double best_norm = std::numeric_limits<double>::infinity();
  const Quad mirrored{q[0], q[3], q[2], q[1]};
  for (const Quad& base : {q.values(), mirrored}) {
    for (int k = 0; k < 4; ++k) {
      const Quad t = rotate_labels(base, k);
      const ChartPoint c{t[0], t[2], t[3]};
      const double n = sup_norm(cycle_system_residual(c));
      if (n < best_norm) {
        best_norm = n;
        best = c;
      }
    }
  }
  provenance = "iterate 50 of (1.2, 2.1, 1.5, 2*pi - 4.8), best dihedral relabeling";
  return best;
}

}  // namespace

SolveResult solve_cycle_system(std::optional<ChartPoint> initial, double tol, int max_iter) {
  if (!(tol >= 1e-13)) {
    throw Error(ErrorCode::DomainError, "cycle system tolerance must be >= 1e-13");
  }
  SolveResult out;
  ChartPoint x{};
  if (initial) {
    x = *initial;
    out.provenance = "initial (" + format_compact(x.alpha) + ", " + format_compact(x.gamma) + ", " +
                     format_compact(x.delta) + ")";
  } else {
    x = default_cycle_start(out.provenance);
  }
  if (!chart_point_valid(x)) {
    throw Error(ErrorCode::DomainError, "initial chart point is not a valid angle tuple");
  }

  const ChartMap residual_map = [](const ChartPoint& p) {
    const auto r = cycle_system_residual(p);
    return ChartPoint{r[0], r[1], r[2]};
  };

  for (int iter = 0; iter <= max_iter; ++iter) {
    const auto g = cycle_system_residual(x);
    const double norm = sup_norm(g);
    if (norm <= tol) {
      out.solution = {x.alpha, x.beta(), x.gamma, x.delta};
      out.residual_norm = norm;
      out.iterations = iter;
      out.converged = true;
      return out;
    }
    if (iter == max_iter) {
      break;
    }
    const Matrix3 jac = fd_jacobian(residual_map, x, kNewtonDiffStep);
    Eigen::Matrix3d j;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        j(r, c) = jac[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      }
    }
    const Eigen::Vector3d dx = j.fullPivLu().solve(-Eigen::Vector3d(g[0], g[1], g[2]));

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, lambda *= 0.5) {
      const ChartPoint trial{x.alpha + lambda * dx(0), x.gamma + lambda * dx(1), x.delta + lambda * dx(2)};
      if (chart_point_valid(trial) && sup_norm(cycle_system_residual(trial)) < norm) {
        x = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw Error(ErrorCode::StepCollapse, "damping fell below 2^-20 at residual " + format_real(norm));
    }
  }
  throw Error(ErrorCode::MaxIterations, "cycle system did not converge from " + out.provenance);
}

Matrix3 fd_jacobian(const ChartMap& map, const ChartPoint& p, double h) {
  if (!(h >= 1e-8 && h <= 1e-4)) {
    throw Error(ErrorCode::DomainError, "finite-difference step must lie in [1e-8, 1e-4]");
  }
  for (double a : {p.alpha, p.beta(), p.gamma, p.delta}) {
    if (!(a > h && a < kPi - h)) {
      throw Error(ErrorCode::BoundaryTooClose, "chart point within h of the boundary");
    }
  }
  Matrix3 jac{};
  const auto base = p.as_array();
  for (std::size_t c = 0; c < 3; ++c) {
    auto plus = base;
    auto minus = base;
    plus[c] += h;
    minus[c] -= h;
    const auto hi = map(ChartPoint::from_array(plus)).as_array();
    const auto lo = map(ChartPoint::from_array(minus)).as_array();
    for (std::size_t r = 0; r < 3; ++r) {
      jac[r][c] = (hi[r] - lo[r]) / (2.0 * h);
      if (!std::isfinite(jac[r][c])) {
        throw Error(ErrorCode::NonFinite, "non-finite Jacobian entry");
      }
    }
  }
  return jac;
}

ChartMap chart_step_map(int order, int relabel) {
  if (order != 1 && order != 2) {
    throw Error(ErrorCode::DomainError, "map order must be 1 or 2");
  }
  return [order, relabel](const ChartPoint& p) {
    Quad q = from_chart(p).values();
    for (int i = 0; i < order; ++i) {
      q = step(validate_angles(q)).values();
    }
    return to_chart(validate_angles(rotate_labels(q, relabel)));
  };
}

int return_rotation(const AngleTuple& q, int map_order) {
  AngleTuple image = q;
  for (int i = 0; i < map_order; ++i) {
    image = step(image);
  }
  int best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int r = 0; r < 4; ++r) {
    const Quad t = rotate_labels(image.values(), r);
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      d = std::max(d, std::abs(t[i] - q[i]));
    }
    if (d < best_distance) {
      best_distance = d;
      best = r;
    }
  }
  return best;
}

StabilityReport stability_report(const AngleTuple& q, int map_order, double h) {
  StabilityReport report;
  report.point = to_chart(q);
  report.map_order = map_order;
  report.fd_step = h;
  report.relabel = return_rotation(q, map_order);
  report.jacobian = fd_jacobian(chart_step_map(map_order, report.relabel), report.point, h);
  report.eigenvalue_moduli = eigenvalue_moduli_3x3(report.jacobian);
  report.spectral_radius = report.eigenvalue_moduli[0];
  return report;
}

}  // namespace quadyn
