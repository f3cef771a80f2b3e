#include "quadyn_app/sampling.hpp"

#include <algorithm>
#include <array>

#include "quadyn/dynamics.hpp"

namespace quadyn::app {

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t sample_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sample_id), static_cast<std::uint32_t>(sample_id >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

AngleTuple sample_angles(std::uint64_t seed, std::uint64_t sample_id, double margin) {
  if (!(margin >= 0.0 && margin < 0.25 * kPi)) {
    throw Error(ErrorCode::DomainError, "sampling margin must lie in [0, pi/4)");
  }
  auto gen = sample_stream(seed, sample_id);
  const double width = kPi - 2.0 * margin;
  for (;;) {
    Quad raw{};
    for (double& v : raw) {
      do {
        v = margin + width * uniform01(gen);
      } while (v <= margin);
    }
    const Quad q = renormalize_sum(raw);
    if (std::all_of(q.begin(), q.end(), [&](double a) { return a > margin && a < kPi - margin; })) {
      return validate_angles(q);
    }
  }
}

AngleTuple sample_trapezoid(std::uint64_t seed, std::uint64_t sample_id) {
  auto gen = sample_stream(seed, sample_id);
  return trapezoid_angles(0.1 + 1.4 * uniform01(gen));
}

}  // namespace quadyn::app
