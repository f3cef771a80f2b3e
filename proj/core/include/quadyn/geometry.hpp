#pragma once

#include <utility>

#include "quadyn/types.hpp"

namespace quadyn {

/// Cyclic shift: rotate_labels(t, k)[i] == t[(i + k) mod 4].
Quad rotate_labels(const Quad& t, int k) noexcept;
AngleTuple rotate_labels(const AngleTuple& q, int k);
EdgeTuple rotate_labels(const EdgeTuple& e, int k);

/// Mirror relabeling that keeps vertex A: (a, b, c, d) -> (a, d, c, b).
AngleTuple reflect_labels_angles(const AngleTuple& q);

/// Edge relabeling induced by reflect_labels_angles: (x1, x2, x3, x4) -> (x2, x1, x4, x3).
EdgeTuple reflect_labels_edges(const EdgeTuple& e);

struct CanonicalLabeling {
  int rotation_offset = 0;  // rotated == rotate_labels(input, rotation_offset)
  AngleTuple rotated;
};

/// Smallest offset r for which the relabeled tuple has delta + alpha <= pi and
/// gamma + delta <= pi (both up to kSumTolerance).
CanonicalLabeling canonicalize(const AngleTuple& q);

/// Triangle A'CD obtained by collapsing edge BC; x3 == 0.
EdgeTuple degenerate_edges_first(double alpha, double delta);

/// Triangle BCD' obtained by collapsing edge AB; x2 == 0.
EdgeTuple degenerate_edges_second(double gamma, double delta);

/// Edge lengths of the balanced quadrangle with angles q, labeled like q.
EdgeTuple balanced_edges(const AngleTuple& q);

/// The two ratios sin(phi)/S and sin(phi+psi)/S, S = sin(phi)+sin(psi)+sin(phi+psi).
/// For phi, psi > 0 with phi + psi < pi both are strictly below 1/2.
std::pair<double, double> prop1_fractions(double phi, double psi);

}  // namespace quadyn
