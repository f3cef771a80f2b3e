#include "quadyn/closure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace quadyn {

namespace {

// Headings of DA, AB, BC, CD when the boundary is walked counter-clockwise
// starting along DA with heading 0.
std::array<double, 4> edge_headings(const AngleTuple& q) noexcept {
  std::array<double, 4> theta{};
  theta[0] = 0.0;
  for (std::size_t i = 1; i < 4; ++i) {
    theta[i] = theta[i - 1] + (kPi - q[i - 1]);
  }
  return theta;
}

EdgeTuple snap_endpoint(Quad v) {
  for (double& x : v) {
    if (std::abs(x) < 1e-10) {
      x = 0.0;
    }
  }
  return validate_edges(v, true);
}

}  // namespace

Quad FeasibleSegment::at(double t) const noexcept {
  Quad out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = base[i] + t * direction[i];
  }
  return out;
}

EdgeTuple FeasibleSegment::lower_endpoint() const { return snap_endpoint(at(t_min)); }

EdgeTuple FeasibleSegment::upper_endpoint() const { return snap_endpoint(at(t_max)); }

std::pair<EdgeTuple, FeasibleSegment> balanced_edges_oracle(const AngleTuple& q) {
  const auto theta = edge_headings(q);
  Eigen::Matrix<double, 3, 4> closure;
  for (int i = 0; i < 4; ++i) {
    closure(0, i) = std::cos(theta[static_cast<std::size_t>(i)]);
    closure(1, i) = std::sin(theta[static_cast<std::size_t>(i)]);
    closure(2, i) = 1.0;
  }
  const Eigen::Vector3d rhs(0.0, 0.0, kTwoPi);

  const Eigen::FullPivLU<Eigen::Matrix<double, 3, 4>> lu(closure);
  if (lu.rank() != 3) {
    throw Error(ErrorCode::DegenerateFamily, "closure system does not have rank 3");
  }
  const Eigen::Vector4d particular = lu.solve(rhs);
  Eigen::Vector4d direction = lu.kernel().col(0);
  direction.normalize();

  constexpr double kFlat = 1e-14;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    const double d = direction(i);
    const double x = particular(i);
    if (d > kFlat) {
      lo = std::max(lo, -x / d);
    } else if (d < -kFlat) {
      hi = std::min(hi, -x / d);
    } else if (x < 0.0) {
      throw Error(ErrorCode::DegenerateFamily, "edge stays negative along the whole family");
    }
  }
  if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo)) {
    throw Error(ErrorCode::DegenerateFamily, "feasible segment is empty or unbounded");
  }

  const double t_mid = 0.5 * (lo + hi);
  FeasibleSegment seg;
  for (std::size_t i = 0; i < 4; ++i) {
    seg.base[i] = particular(static_cast<int>(i)) + t_mid * direction(static_cast<int>(i));
    seg.direction[i] = direction(static_cast<int>(i));
  }
  seg.t_min = lo - t_mid;
  seg.t_max = hi - t_mid;
  return {validate_edges(seg.base), seg};
}

PlanarPolygon realize_polygon(const AngleTuple& q, const EdgeTuple& e) {
  const auto theta = edge_headings(q);
  PlanarPolygon poly;
  Point2 cursor{};
  for (std::size_t i = 0; i < 4; ++i) {
    poly.vertices[i] = cursor;
    cursor.x += e[i] * std::cos(theta[i]);
    cursor.y += e[i] * std::sin(theta[i]);
  }
  poly.closure_gap = std::hypot(cursor.x, cursor.y);
  return poly;
}

Quad polygon_interior_angles(const PlanarPolygon& p) {
  // vertices are D, A, B, C; angles are reported for A, B, C, D.
  Quad out{};
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t v = (k + 1) % 4;
    const Point2& at = p.vertices[v];
    const Point2& prev = p.vertices[(v + 3) % 4];
    const Point2& next = p.vertices[(v + 1) % 4];
    const double ux = prev.x - at.x, uy = prev.y - at.y;
    const double wx = next.x - at.x, wy = next.y - at.y;
    out[k] = std::atan2(std::abs(ux * wy - uy * wx), ux * wx + uy * wy);
  }
  return out;
}

Quad polygon_edge_lengths(const PlanarPolygon& p) {
  Quad out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2& a = p.vertices[i];
    const Point2& b = p.vertices[(i + 1) % 4];
    out[i] = std::hypot(b.x - a.x, b.y - a.y);
  }
  return out;
}

}  // namespace quadyn
