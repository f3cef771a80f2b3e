#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "quadyn/dynamics.hpp"
#include "quadyn_app/sampling.hpp"

namespace quadyn::app {

struct BasinConfig {
  std::uint64_t seed = 42;
  int samples = 1000;
  double margin = kDefaultSampleMargin;
  bool trapezoid_seeds = false;
  int max_iter = 10000;
  double tol = kDefaultCycleTolerance;
  int threads = 1;
};

struct BasinRecord {
  int sample_id = 0;
  std::uint64_t seed = 0;
  Quad initial{};
  CycleClass classification = CycleClass::NoConvergence;
  int iterations = 0;
  double residual = 0.0;
  double match_distance = 0.0;
};

/// Records come back in sample_id order whatever the thread count.
std::vector<BasinRecord> run_basin(const BasinConfig& config);

std::map<CycleClass, int> class_frequencies(const std::vector<BasinRecord>& records);

/// CSV with header, one row per record, then a '#' summary line.
void write_basin_csv(std::ostream& out, const std::vector<BasinRecord>& records);

}  // namespace quadyn::app
