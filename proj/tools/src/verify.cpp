#include "quadyn_app/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "quadyn/closure.hpp"
#include "quadyn/constants.hpp"
#include "quadyn/dynamics.hpp"
#include "quadyn/format.hpp"
#include "quadyn/geometry.hpp"
#include "quadyn/solvers.hpp"
#include "quadyn_app/sampling.hpp"

namespace quadyn::app {

namespace {

double sup_diff(const Quad& a, const Quad& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

std::string fr(double v) { return format_real(v); }

AngleTuple square() { return validate_angles(Quad{kHalfPi, kHalfPi, kHalfPi, kHalfPi}); }

CheckOutcome square_fixed_point() {
  const double d = sup_diff(step(square()).values(), square().values());
  return {d <= 1e-12, "|step(square) - square| = " + fr(d) + " (tol 1e-12)"};
}

CheckOutcome trapezoid_fixed_point() {
  const auto fp = solve_trapezoid_fixed_point(1e-13);
  const double a = fp.attracting.solution.front();
  const double err = std::abs(a - reference::kTrapezoidFixedPoint);
  return {fp.attracting.converged && err <= 1e-12,
          "a* = " + fr(a) + ", |a* - published| = " + fr(err) + " (tol 1e-12)"};
}

CheckOutcome trapezoid_slope() {
  const auto fp = solve_trapezoid_fixed_point(1e-13);
  const double slope = c_map_derivative(fp.attracting.solution.front(), 1e-6);
  return {slope >= 0.75 && slope <= 0.85, "c'(a*) = " + fr(slope) + " (want [0.75, 0.85])"};
}

CheckOutcome boundary_values() {
  const double at_half_pi = std::abs(c_map(kHalfPi) - kHalfPi);
  const double expected_zero = kPi / (std::sqrt(2.0) + 1.0);
  // c depends on a only through cos a, so c(1e-8) - c(0) = O(1e-16).
  const double near_zero = std::abs(c_map(1e-8) - expected_zero);
  const double limit = std::abs(c_map_limit_at_zero() - expected_zero);
  const bool ok = at_half_pi <= 1e-12 && near_zero <= 1e-12 && limit <= 1e-12;
  return {ok, "|c(pi/2) - pi/2| = " + fr(at_half_pi) + ", |c(1e-8) - pi/(sqrt2+1)| = " + fr(near_zero) +
                  ", |limit - pi/(sqrt2+1)| = " + fr(limit) + " (tol 1e-12)"};
}

CheckOutcome general_cycle_solution() {
  const SolveResult res = solve_cycle_system(std::nullopt, 1e-12);
  Quad sol{};
  std::copy(res.solution.begin(), res.solution.end(), sol.begin());
  const double err = sup_diff(sol, reference::kGeneralCycle);
  const auto& p = reference::kGeneralCycle;
  const auto published = cycle_system_residual(ChartPoint{p[0], p[2], p[3]});
  const double published_res =
      std::max({std::abs(published[0]), std::abs(published[1]), std::abs(published[2])});
  return {res.converged && err <= 1e-9 && published_res < 1e-9,
          "max |solution - published| = " + fr(err) + " (tol 1e-9), residual at published values = " +
              fr(published_res) + " (tol 1e-9), newton iterations " + std::to_string(res.iterations)};
}

CheckOutcome general_cycle_dynamics() {
  const SolveResult res = solve_cycle_system(std::nullopt, 1e-12);
  const AngleTuple q = validate_angles(res.solution);
  const AngleTuple once = step(q);
  const AngleTuple twice = step(once);
  const double mirror = sup_diff(once.values(), reflect_labels_angles(q).values());
  const double back = sup_diff(twice.values(), q.values());
  const double back_up_to_rotation = rotation_distance(twice, q);
  return {mirror <= 1e-10 && back <= 1e-10,
          "|step(q*) - reflect(q*)| = " + fr(mirror) + ", |step^2(q*) - q*| = " + fr(back) +
              " (tol 1e-10 each); up to cyclic relabeling |step^2(q*) - q*| = " + fr(back_up_to_rotation)};
}

CheckOutcome convergence_experiment() {
  constexpr int kSeeds = 100;
  int hits = 0;
  std::string misses;
  for (int id = 0; id < kSeeds; ++id) {
    const AngleTuple q0 = sample_angles(42, static_cast<std::uint64_t>(id), kDefaultSampleMargin);
    const Trajectory t = iterate(q0, 10000, kDefaultCycleTolerance);
    if (t.cycle.classification == CycleClass::General2Cycle && t.cycle.match_distance < 1e-6) {
      ++hits;
    } else {
      misses += " #" + std::to_string(id) + ":" + std::string(to_string(t.cycle.classification));
    }
  }
  return {hits >= 99, std::to_string(hits) + "/" + std::to_string(kSeeds) +
                          " seeds reach the general 2-cycle (need >= 99)" +
                          (misses.empty() ? std::string() : "; counterexamples" + misses)};
}

CheckOutcome trapezoid_basin() {
  const LimitSets& ls = limit_sets();
  using namespace reference;
  const Quad shown_first{kTrapezoidCycleP, kTrapezoidCycleP, kTrapezoidCycleQ, kTrapezoidCycleQ};
  const Quad shown_second{kTrapezoidCycleR, kHalfPi, kTrapezoidCycleR, kHalfPi + kTrapezoidCycleS};
  const double shown = std::max(dihedral_distance(ls.trapezoid_first.values(), shown_first),
                                dihedral_distance(ls.trapezoid_second.values(), shown_second));

  double worst = 0.0;
  int hits = 0;
  std::string misses;
  for (int k = 0; k < 10; ++k) {
    const double a = 0.1 + 1.4 * (k + 0.5) / 10.0;
    const Trajectory t = iterate(trapezoid_angles(a), 10000, kTrapezoidCycleTolerance);
    if (t.cycle.classification == CycleClass::Trapezoid2Cycle && t.cycle.match_distance < 1e-5) {
      ++hits;
      worst = std::max(worst, t.cycle.match_distance);
    } else {
      misses += " a=" + fr(a) + ":" + std::string(to_string(t.cycle.classification));
    }
  }
  return {hits == 10 && shown < 1e-5,
          std::to_string(hits) + "/10 trapezoid seeds reach the trapezoid pair, worst distance " + fr(worst) +
              " (tol 1e-5); limit pair vs displayed digits " + fr(shown) + misses};
}

CheckOutcome oracle_equivalence() {
  double worst_oracle = 0.0;
  double worst_gap = 0.0;
  for (std::uint64_t id = 0; id < 1000; ++id) {
    const AngleTuple q = sample_angles(9, id, 0.01);
    const EdgeTuple e = balanced_edges(q);
    const auto [mid, seg] = balanced_edges_oracle(q);
    worst_oracle = std::max(worst_oracle, sup_diff(e.values(), mid.values()));
    worst_gap = std::max(worst_gap, realize_polygon(q, e).closure_gap);
  }
  return {worst_oracle <= 1e-10 && worst_gap <= 1e-9,
          "max |balanced - oracle| = " + fr(worst_oracle) + " (tol 1e-10), max closure gap = " + fr(worst_gap) +
              " (tol 1e-9)"};
}

CheckOutcome property_suite() {
  auto gen = sample_stream(10, 0);
  int prop1_failures = 0;
  for (int i = 0; i < 10000; ++i) {
    double phi = 0.0, psi = 0.0;
    while (!(phi > 0.0)) phi = kPi * uniform01(gen);
    while (!(psi > 0.0)) psi = (kPi - phi) * uniform01(gen);
    const auto [f1, f2] = prop1_fractions(phi, psi);
    prop1_failures += (f1 < 0.5 && f2 < 0.5) ? 0 : 1;
  }

  double worst_adjacent = -kPi;  // max over samples of (x - pi/2) for canonical x2, x3
  int too_many_long = 0;
  double worst_rotation = 0.0, worst_reflection = 0.0, worst_sum = 0.0;
  for (std::uint64_t id = 0; id < 1000; ++id) {
    const AngleTuple q = sample_angles(11, id, 0.01);
    const EdgeTuple e = balanced_edges(q);
    const EdgeTuple canon = balanced_edges(canonicalize(q).rotated);
    worst_adjacent = std::max({worst_adjacent, canon[1] - kHalfPi, canon[2] - kHalfPi});
    too_many_long += std::count_if(e.values().begin(), e.values().end(), [](double x) { return x > kHalfPi; }) > 2;
    for (int k = 1; k < 4; ++k) {
      worst_rotation = std::max(
          worst_rotation, sup_diff(balanced_edges(rotate_labels(q, k)).values(), rotate_labels(e, k).values()));
    }
    worst_reflection = std::max(worst_reflection, sup_diff(balanced_edges(reflect_labels_angles(q)).values(),
                                                           reflect_labels_edges(e).values()));
    worst_sum = std::max(worst_sum, std::abs(e.sum() - kTwoPi));
  }
  const bool ok = prop1_failures == 0 && worst_adjacent <= 1e-12 && too_many_long == 0 &&
                  worst_rotation <= 1e-10 && worst_reflection <= 1e-10 && worst_sum <= 1e-9;
  std::ostringstream os;
  os << "prop1 violations " << prop1_failures << "/10000; max canonical x2,x3 - pi/2 = " << fr(worst_adjacent)
     << "; tuples with >2 edges above pi/2: " << too_many_long << "; rotation " << fr(worst_rotation)
     << ", reflection " << fr(worst_reflection) << " (tol 1e-10); sum " << fr(worst_sum) << " (tol 1e-9)";
  return {ok, os.str()};
}

CheckOutcome stability_spectra() {
  const double at_square = stability_report(square(), 1, 1e-6).spectral_radius;
  const AngleTuple q = validate_angles(reference::kGeneralCycle);
  const double at_cycle = stability_report(q, 2, 1e-6).spectral_radius;
  const Matrix3 rhs = fd_jacobian([](const ChartPoint& p) { return cycle_system_rhs(p); }, to_chart(q), 1e-6);
  double largest = 0.0;
  for (const auto& row : rhs) {
    for (double v : row) {
      largest = std::max(largest, std::abs(v));
    }
  }
  return {at_square > 1.0 && at_cycle < 1.0 && largest > 1.0,
          "rho(Df) at square = " + fr(at_square) + " (> 1), rho(return map of f^2) at 2-cycle = " + fr(at_cycle) +
              " (< 1), max |d rhs| = " + fr(largest) + " (> 1)"};
}

}  // namespace

const std::vector<Criterion>& verification_criteria() {
  static const std::vector<Criterion> all = {
      {1, "square fixed point", square_fixed_point},
      {2, "trapezoid fixed point a*", trapezoid_fixed_point},
      {3, "slope c'(a*)", trapezoid_slope},
      {4, "boundary values of c", boundary_values},
      {5, "general 2-cycle relations", general_cycle_solution},
      {6, "general 2-cycle dynamics", general_cycle_dynamics},
      {7, "convergence experiment", convergence_experiment},
      {8, "trapezoid basin", trapezoid_basin},
      {9, "oracle equivalence and closure", oracle_equivalence},
      {10, "property suite", property_suite},
      {11, "stability spectra", stability_spectra},
  };
  return all;
}

CriterionResult run_criterion(const Criterion& c) {
  CriterionResult r;
  r.id = c.id;
  r.name = c.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const CheckOutcome o = c.check();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all_criteria() {
  std::vector<CriterionResult> out;
  for (const auto& c : verification_criteria()) {
    out.push_back(run_criterion(c));
  }
  return out;
}

int report_verification(const std::vector<CriterionResult>& results, std::ostream& out, bool json) {
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  if (json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"seconds", format_real(r.seconds)},
                     {"detail", r.detail}});
    }
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      char line[96];
      std::snprintf(line, sizeof(line), "[%s] %2d %-32s %8.3fs  ", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds);
      out << line << r.detail << '\n';
    }
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return all ? 0 : 1;
}

}  // namespace quadyn::app
