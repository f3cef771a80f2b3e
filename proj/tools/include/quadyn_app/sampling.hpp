#pragma once

#include <cstdint>
#include <random>

#include "quadyn/types.hpp"

namespace quadyn::app {

inline constexpr double kDefaultSampleMargin = 0.05;

/// Generator for one sample, seeded from (seed, sample_id) alone so results
/// do not depend on the order in which samples are drawn.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t sample_id);

/// Uniform on [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& gen);

/// Four uniforms on (margin, pi - margin) rescaled to sum 2*pi; redrawn until
/// every rescaled component stays inside (margin, pi - margin).
AngleTuple sample_angles(std::uint64_t seed, std::uint64_t sample_id, double margin = kDefaultSampleMargin);

/// Trapezoid tuple (a, pi - a, pi - a, a) with a uniform on (0.1, 1.5).
AngleTuple sample_trapezoid(std::uint64_t seed, std::uint64_t sample_id);

}  // namespace quadyn::app
