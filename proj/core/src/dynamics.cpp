#include "quadyn/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "quadyn/constants.hpp"
#include "quadyn/format.hpp"
#include "quadyn/geometry.hpp"

namespace quadyn {

AngleTuple step(const AngleTuple& q) { return validate_angles(balanced_edges(q).values()); }

std::string_view to_string(CycleClass c) noexcept {
  switch (c) {
    case CycleClass::SquareFixed: return "square_fixed";
    case CycleClass::Trapezoid2Cycle: return "trapezoid_2cycle";
    case CycleClass::General2Cycle: return "general_2cycle";
    case CycleClass::OtherCycle: return "other_cycle";
    case CycleClass::NoConvergence: return "no_convergence";
  }
  return "unknown";
}

namespace {

double sup_distance(const Quad& a, const Quad& b) noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

}  // namespace

double rotation_distance(const Quad& p, const Quad& q) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    best = std::min(best, sup_distance(p, rotate_labels(q, k)));
  }
  return best;
}

double dihedral_distance(const Quad& p, const Quad& q) noexcept {
  const Quad mirrored{q[0], q[3], q[2], q[1]};
  return std::min(rotation_distance(p, q), rotation_distance(p, mirrored));
}

double rotation_distance(const AngleTuple& p, const AngleTuple& q) {
  return rotation_distance(p.values(), q.values());
}

double dihedral_distance(const AngleTuple& p, const AngleTuple& q) {
  return dihedral_distance(p.values(), q.values());
}

const LimitSets& limit_sets() {
  static const LimitSets sets = [] {
    const AngleTuple square = validate_angles(Quad{kHalfPi, kHalfPi, kHalfPi, kHalfPi});
    const AngleTuple trap = trapezoid_angles(reference::kTrapezoidFixedPoint);
    const AngleTuple general = validate_angles(reference::kGeneralCycle);
    return LimitSets{square, trap, step(trap), general, step(general)};
  }();
  return sets;
}

CycleInfo classify_cycle(std::vector<AngleTuple> representatives, int period, double residual) {
  const LimitSets& ls = limit_sets();
  CycleInfo info;
  info.period = period;
  info.residual = residual;

  auto nearest = [&](const AngleTuple& s) {
    return std::min({dihedral_distance(s, ls.square), dihedral_distance(s, ls.trapezoid_first),
                     dihedral_distance(s, ls.trapezoid_second), dihedral_distance(s, ls.general_first)});
  };

  double fallback = 0.0;
  for (const AngleTuple& s : representatives) {
    fallback = std::max(fallback, nearest(s));
  }
  info.match_distance = fallback;
  info.classification = period == 0 ? CycleClass::NoConvergence : CycleClass::OtherCycle;

  if (period == 1) {
    const double d = dihedral_distance(representatives[0], ls.square);
    if (d <= kClassificationTolerance) {
      info.classification = CycleClass::SquareFixed;
      info.match_distance = d;
    }
  } else if (period == 2) {
    const AngleTuple& r0 = representatives[0];
    const AngleTuple& r1 = representatives[1];
    const double trap = std::min(
        std::max(dihedral_distance(r0, ls.trapezoid_first), dihedral_distance(r1, ls.trapezoid_second)),
        std::max(dihedral_distance(r0, ls.trapezoid_second), dihedral_distance(r1, ls.trapezoid_first)));
    // The two members of the general cycle are mirror images, so one dihedral
    // class covers both.
    const double general =
        std::max(dihedral_distance(r0, ls.general_first), dihedral_distance(r1, ls.general_first));
    if (trap <= kClassificationTolerance) {
      info.classification = CycleClass::Trapezoid2Cycle;
      info.match_distance = trap;
    } else if (general <= kClassificationTolerance) {
      info.classification = CycleClass::General2Cycle;
      info.match_distance = general;
    }
  }
  info.representative_states = std::move(representatives);
  return info;
}

Trajectory iterate(const AngleTuple& q0, int max_iter, double tol) {
  if (max_iter < 1 || !(tol > 0.0)) {
    throw Error(ErrorCode::DomainError, "iterate needs max_iter >= 1 and tol > 0");
  }
  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(std::min(max_iter, 100000)) + 1);
  traj.states.push_back(q0);

  std::array<int, kMaxPeriod + 1> streak{};
  for (int n = 1; n <= max_iter; ++n) {
    const AngleTuple next = step(traj.states.back());
    traj.residuals.push_back(sup_distance(next.values(), traj.states.back().values()));
    traj.states.push_back(next);

    const auto last = traj.states.size() - 1;
    int found = 0;
    for (int p = 1; p <= kMaxPeriod && static_cast<std::size_t>(p) <= last; ++p) {
      const double d = rotation_distance(traj.states[last], traj.states[last - static_cast<std::size_t>(p)]);
      streak[static_cast<std::size_t>(p)] = d < tol ? streak[static_cast<std::size_t>(p)] + 1 : 0;
      if (found == 0 && streak[static_cast<std::size_t>(p)] >= kCycleConfirmations) {
        found = p;
      }
    }
    if (found > 0) {
      const auto p = static_cast<std::size_t>(found);
      double residual = 0.0;
      std::vector<AngleTuple> reps(traj.states.end() - static_cast<std::ptrdiff_t>(p), traj.states.end());
      for (std::size_t i = 0; i < p; ++i) {
        residual = std::max(residual, rotation_distance(traj.states[last - i], traj.states[last - i - p]));
      }
      traj.cycle = classify_cycle(std::move(reps), found, residual);
      return traj;
    }
  }
  traj.cycle = classify_cycle({traj.states.back()}, 0, traj.residuals.back());
  return traj;
}

double c_map(double a) {
  if (!(a > 0.0 && a <= kHalfPi)) {
    throw Error(ErrorCode::DomainError, "c_map needs a in (0, pi/2], got " + format_compact(a));
  }
  const double p = kPi / (2.0 + 2.0 * std::cos(a));
  return kPi / (1.0 + std::sin(p) + std::cos(p));
}

double c_map_limit_at_zero() noexcept { return kPi / (std::numbers::sqrt2 + 1.0); }

TrapezoidParam trapezoid_param(double a) { return {a, c_map(a)}; }

double c_map_derivative(double a, double h) {
  if (!(h > 0.0) || !(a - h > 0.0) || !(a + h <= kHalfPi)) {
    throw Error(ErrorCode::DomainError, "central difference leaves (0, pi/2] at a = " + format_compact(a));
  }
  return (c_map(a + h) - c_map(a - h)) / (2.0 * h);
}

EdgeTuple trapezoid_edges(double a) {
  if (!(a > 0.0 && a <= kHalfPi)) {
    throw Error(ErrorCode::DomainError, "trapezoid_edges needs a in (0, pi/2], got " + format_compact(a));
  }
  const double cos_a = std::cos(a);
  const double side = kPi / (2.0 + 2.0 * cos_a);
  return validate_edges(Quad{side, kHalfPi, side, kHalfPi + kPi * cos_a / (1.0 + cos_a)});
}

AngleTuple trapezoid_angles(double a) {
  if (!(a > 0.0 && a <= kHalfPi)) {
    throw Error(ErrorCode::DomainError, "trapezoid_angles needs a in (0, pi/2], got " + format_compact(a));
  }
  return validate_angles(Quad{a, kPi - a, kPi - a, a});
}

}  // namespace quadyn
