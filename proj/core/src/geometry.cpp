#include "quadyn/geometry.hpp"

#include <cmath>
#include <sstream>

#include "quadyn/format.hpp"

namespace quadyn {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::StepCollapse: return "StepCollapse";
    case ErrorCode::BoundaryTooClose: return "BoundaryTooClose";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfRange:
    case ErrorCode::SumMismatch:
    case ErrorCode::DomainError:
    case ErrorCode::BoundaryTooClose:
      return true;
    default:
      return false;
  }
}

namespace {

std::string describe(std::span<const double> raw) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < raw.size(); ++i) {
    os << (i ? ", " : "") << format_real(raw[i]);
  }
  os << ')';
  return os.str();
}

Quad to_quad(std::span<const double> raw, const char* what) {
  if (raw.size() != 4) {
    throw Error(ErrorCode::DomainError, std::string(what) + " needs exactly 4 components");
  }
  return {raw[0], raw[1], raw[2], raw[3]};
}

void check_sum(const Quad& v, std::span<const double> raw) {
  const double sum = v[0] + v[1] + v[2] + v[3];
  if (!(std::abs(sum - kTwoPi) <= kSumTolerance)) {
    throw Error(ErrorCode::SumMismatch,
                "components of " + describe(raw) + " sum to " + format_real(sum) + ", expected 2*pi");
  }
}

}  // namespace

AngleTuple validate_angles(std::span<const double> raw) {
  const Quad v = to_quad(raw, "angle tuple");
  for (double a : v) {
    if (!(a > 0.0 && a < kPi)) {
      throw Error(ErrorCode::OutOfRange, "angle outside (0, pi) in " + describe(raw));
    }
  }
  check_sum(v, raw);
  return AngleTuple(v);
}

EdgeTuple validate_edges(std::span<const double> raw, bool allow_degenerate) {
  const Quad v = to_quad(raw, "edge tuple");
  bool has_zero = false;
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::OutOfRange, "negative or non-finite edge in " + describe(raw));
    }
    has_zero = has_zero || x == 0.0;
  }
  if (has_zero && !allow_degenerate) {
    throw Error(ErrorCode::OutOfRange, "zero edge in non-degenerate tuple " + describe(raw));
  }
  // A triangle with a straight angle at the collapsed vertex has one side of
  // length exactly pi, so degenerate tuples admit the closed upper bound.
  for (double x : v) {
    if (has_zero ? x > kPi + kSumTolerance : x >= kPi) {
      throw Error(ErrorCode::OutOfRange, "edge not below pi in " + describe(raw));
    }
  }
  check_sum(v, raw);
  return EdgeTuple(v, has_zero);
}

Quad renormalize_sum(const Quad& raw) {
  const double sum = raw[0] + raw[1] + raw[2] + raw[3];
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw Error(ErrorCode::DomainError, "cannot renormalize a tuple with sum " + format_compact(sum));
  }
  const double s = kTwoPi / sum;
  return {raw[0] * s, raw[1] * s, raw[2] * s, raw[3] * s};
}

Quad rotate_labels(const Quad& t, int k) noexcept {
  const int shift = ((k % 4) + 4) % 4;
  Quad out{};
  for (int i = 0; i < 4; ++i) {
    out[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>((i + shift) % 4)];
  }
  return out;
}

AngleTuple rotate_labels(const AngleTuple& q, int k) {
  return validate_angles(rotate_labels(q.values(), k));
}

EdgeTuple rotate_labels(const EdgeTuple& e, int k) {
  return validate_edges(rotate_labels(e.values(), k), e.degenerate());
}

AngleTuple reflect_labels_angles(const AngleTuple& q) {
  return validate_angles(Quad{q[0], q[3], q[2], q[1]});
}

EdgeTuple reflect_labels_edges(const EdgeTuple& e) {
  return validate_edges(Quad{e[1], e[0], e[3], e[2]}, e.degenerate());
}

CanonicalLabeling canonicalize(const AngleTuple& q) {
  for (int r = 0; r < 4; ++r) {
    const Quad t = rotate_labels(q.values(), r);
    const double delta_alpha = t[3] + t[0];
    const double gamma_delta = t[2] + t[3];
    if (delta_alpha <= kPi + kSumTolerance && gamma_delta <= kPi + kSumTolerance) {
      return {r, validate_angles(t)};
    }
  }
  // Opposite pair sums add to 2*pi, so some vertex always qualifies.
  throw Error(ErrorCode::DomainError, "no canonical vertex for " + describe(q.values()));
}

namespace {

void require_pair(double first, double second, const char* names) {
  if (!(first > 0.0 && first < kPi && second > 0.0 && second < kPi)) {
    throw Error(ErrorCode::DomainError, std::string(names) + " must lie in (0, pi)");
  }
  if (first + second > kPi + kSumTolerance) {
    throw Error(ErrorCode::DomainError, std::string(names) + " must sum to at most pi");
  }
}

// At a boundary pair sum the sine of the sum may come out as a tiny negative
// number; the triangle side it measures is zero there.
double clamp_nonnegative(double v) noexcept { return v < 0.0 ? 0.0 : v; }

}  // namespace

EdgeTuple degenerate_edges_first(double alpha, double delta) {
  require_pair(alpha, delta, "alpha, delta");
#ifdef QUADYN_MUTATE_BALANCED_EDGES
  const double s_sum = clamp_nonnegative(std::sin(alpha - delta));
#else
  const double s_sum = clamp_nonnegative(std::sin(alpha + delta));
#endif
  const double s_alpha = std::sin(alpha);
  const double s_delta = std::sin(delta);
  const double scale = kTwoPi / (s_alpha + s_delta + s_sum);
  return validate_edges(Quad{scale * s_sum, scale * s_delta, 0.0, scale * s_alpha}, true);
}

EdgeTuple degenerate_edges_second(double gamma, double delta) {
  require_pair(gamma, delta, "gamma, delta");
  const double s_sum = clamp_nonnegative(std::sin(gamma + delta));
  const double s_gamma = std::sin(gamma);
  const double s_delta = std::sin(delta);
  const double scale = kTwoPi / (s_gamma + s_delta + s_sum);
  return validate_edges(Quad{scale * s_gamma, 0.0, scale * s_delta, scale * s_sum}, true);
}

EdgeTuple balanced_edges(const AngleTuple& q) {
  const CanonicalLabeling canon = canonicalize(q);
  const AngleTuple& c = canon.rotated;
  const EdgeTuple first = degenerate_edges_first(c.alpha(), c.delta());
  const EdgeTuple second = degenerate_edges_second(c.gamma(), c.delta());
  Quad mid{};
  for (std::size_t i = 0; i < 4; ++i) {
    mid[i] = 0.5 * (first[i] + second[i]);
  }
  return validate_edges(rotate_labels(mid, -canon.rotation_offset));
}

std::pair<double, double> prop1_fractions(double phi, double psi) {
  const double s_phi = std::sin(phi);
  const double s_sum = std::sin(phi + psi);
  const double denom = s_phi + std::sin(psi) + s_sum;
  return {s_phi / denom, s_sum / denom};
}

}  // namespace quadyn
