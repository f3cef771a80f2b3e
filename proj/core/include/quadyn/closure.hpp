#pragma once

#include <array>
#include <utility>

#include "quadyn/types.hpp"

namespace quadyn {

/// The one-parameter family of edge tuples that close a quadrangle with fixed
/// angles and perimeter 2*pi: base + t * direction for t in [t_min, t_max].
struct FeasibleSegment {
  Quad base{};       // closes the polygon; here the segment midpoint
  Quad direction{};  // unit length, components sum to zero
  double t_min = 0.0;
  double t_max = 0.0;

  Quad at(double t) const noexcept;
  EdgeTuple lower_endpoint() const;
  EdgeTuple upper_endpoint() const;
  double length() const noexcept { return t_max - t_min; }
};

/// Independent route to the balanced edges: solve the linear closure system
/// sum x_i u_i = 0, sum x_i = 2*pi for its affine solution line, clip to
/// x_i >= 0, and take the midpoint. Throws Error{DegenerateFamily} when the
/// solution set is not one-dimensional.
std::pair<EdgeTuple, FeasibleSegment> balanced_edges_oracle(const AngleTuple& q);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct PlanarPolygon {
  std::array<Point2, 4> vertices{};  // D, A, B, C in walk order
  double closure_gap = 0.0;          // |walk end - start|
};

/// Walks from the origin with heading 0 along x1..x4, turning left by the
/// exterior angle pi - interior at A, B, C. The gap is reported, never thrown.
PlanarPolygon realize_polygon(const AngleTuple& q, const EdgeTuple& e);

/// Interior angle at each vertex of a realized polygon, in (A, B, C, D) order.
Quad polygon_interior_angles(const PlanarPolygon& p);

/// Edge lengths of a realized polygon, (DA, AB, BC, CD).
Quad polygon_edge_lengths(const PlanarPolygon& p);

}  // namespace quadyn
