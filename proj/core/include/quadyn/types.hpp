#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace quadyn {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Tolerance on the "components sum to 2*pi" constraint.
inline constexpr double kSumTolerance = 1e-9;

using Quad = std::array<double, 4>;

enum class ErrorCode {
  OutOfRange,
  SumMismatch,
  DomainError,
  DegenerateFamily,
  NoSignChange,
  NonFinite,
  DerivativeVanishes,
  MaxIterations,
  StepCollapse,
  BoundaryTooClose,
};

const char* to_string(ErrorCode code) noexcept;

/// True for codes that describe bad input rather than a failed solve.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Interior angles (alpha, beta, gamma, delta) at vertices A, B, C, D listed
/// counter-clockwise. Only constructible through validate_angles().
class AngleTuple {
 public:
  double alpha() const noexcept { return v_[0]; }
  double beta() const noexcept { return v_[1]; }
  double gamma() const noexcept { return v_[2]; }
  double delta() const noexcept { return v_[3]; }

  double operator[](std::size_t i) const noexcept { return v_[i]; }
  const Quad& values() const noexcept { return v_; }

  friend bool operator==(const AngleTuple&, const AngleTuple&) = default;

 private:
  explicit AngleTuple(const Quad& v) noexcept : v_(v) {}
  friend AngleTuple validate_angles(std::span<const double> raw);

  Quad v_{};
};

/// Edge lengths (x1, x2, x3, x4) of DA, AB, BC, CD; perimeter 2*pi.
///
/// A zero component is only legal on a tuple flagged degenerate, i.e. an
/// endpoint of the feasible segment where the quadrangle collapses to a
/// triangle.
class EdgeTuple {
 public:
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  const Quad& values() const noexcept { return v_; }
  bool degenerate() const noexcept { return degenerate_; }
  double sum() const noexcept { return v_[0] + v_[1] + v_[2] + v_[3]; }

  friend bool operator==(const EdgeTuple&, const EdgeTuple&) = default;

 private:
  EdgeTuple(const Quad& v, bool degenerate) noexcept : v_(v), degenerate_(degenerate) {}
  friend EdgeTuple validate_edges(std::span<const double> raw, bool allow_degenerate);

  Quad v_{};
  bool degenerate_ = false;
};

/// Strict validation; never renormalizes. Throws Error{OutOfRange|SumMismatch}.
AngleTuple validate_angles(std::span<const double> raw);

/// Components must lie in [0, pi) (zero only when allow_degenerate, which then
/// sets the degeneracy flag if a zero is present) and sum to 2*pi.
EdgeTuple validate_edges(std::span<const double> raw, bool allow_degenerate = false);

/// Rescales a positive tuple so that its components sum to 2*pi. Intended for
/// sampling pipelines; the validators never call it.
Quad renormalize_sum(const Quad& raw);

}  // namespace quadyn
