#include "quadyn_app/cli.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "quadyn/dynamics.hpp"
#include "quadyn/format.hpp"
#include "quadyn/geometry.hpp"
#include "quadyn/solvers.hpp"
#include "quadyn_app/basin.hpp"
#include "quadyn_app/verify.hpp"

namespace quadyn::app {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string angles_text;
  double tol = 1e-12;
  int max_iter = 10000;
  double h = 1e-6;
  std::uint64_t seed = 42;
  int samples = 0;  // 0: per-command default
  std::optional<double> from;
  std::optional<double> to;
  std::string out_path;
  bool json = false;
  int order = 1;
  double margin = kDefaultSampleMargin;
  bool trapezoid_seeds = false;
  bool tol_given = false;
  int threads = 1;
  std::string initial_text;
  int newton_max_iter = 100;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_real(item);
    if (!v) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
    values.push_back(*v);
  }
  if (values.size() != expected) {
    throw UsageError(std::string(flag) + " expects " + std::to_string(expected) + " comma-separated values");
  }
  return values;
}

// Typed-in angles carry few digits, so a sum within this distance of 2*pi is
// rescaled (with a note on stderr) before strict validation.
constexpr double kTypedSumSlack = 1e-3;

AngleTuple parse_angles(const RunConfig& cfg, std::ostream& err) {
  if (cfg.angles_text.empty()) {
    throw UsageError("--angles is required");
  }
  const auto v = parse_list(cfg.angles_text, 4, "--angles");
  Quad q{v[0], v[1], v[2], v[3]};
  const double sum = q[0] + q[1] + q[2] + q[3];
  if (sum != kTwoPi && std::abs(sum - kTwoPi) <= kTypedSumSlack) {
    err << "note: --angles sum " << format_real(sum) << " rescaled to 2*pi\n";
    q = renormalize_sum(q);
  }
  return validate_angles(q);
}

Json quad_json(const Quad& q) {
  return Json{{"alpha", format_real(q[0])},
              {"beta", format_real(q[1])},
              {"gamma", format_real(q[2])},
              {"delta", format_real(q[3])}};
}

Json real_array(std::span<const double> values) {
  Json arr = Json::array();
  for (double v : values) {
    arr.push_back(format_real(v));
  }
  return arr;
}

void write_quad_csv_row(std::ostream& os, const Quad& q) {
  os << format_real(q[0]) << ',' << format_real(q[1]) << ',' << format_real(q[2]) << ',' << format_real(q[3]);
}

// Primary output goes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw UsageError("cannot open output file " + path);
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

int cmd_step(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const AngleTuple next = step(parse_angles(cfg, err));
  Sink sink(cfg.out_path, out);
  if (cfg.json) {
    sink.stream() << quad_json(next.values()).dump() << '\n';
  } else {
    sink.stream() << "alpha,beta,gamma,delta\n";
    write_quad_csv_row(sink.stream(), next.values());
    sink.stream() << '\n';
  }
  return kExitOk;
}

Json cycle_json(const Trajectory& t) {
  Json reps = Json::array();
  for (const auto& s : t.cycle.representative_states) {
    reps.push_back(real_array(s.values()));
  }
  return Json{{"class", std::string(to_string(t.cycle.classification))},
              {"period", t.cycle.period},
              {"iterations", t.iterations()},
              {"residual", format_real(t.cycle.residual)},
              {"match_distance", format_real(t.cycle.match_distance)},
              {"representatives", reps}};
}

int cmd_iterate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Trajectory t = iterate(parse_angles(cfg, err), cfg.max_iter, cfg.tol);
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.stream();
  os << "iter,alpha,beta,gamma,delta\n";
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    os << i << ',';
    write_quad_csv_row(os, t.states[i].values());
    os << '\n';
  }
  std::ostream& summary = sink.to_file() ? out : err;
  if (cfg.json) {
    summary << cycle_json(t).dump() << '\n';
  } else {
    summary << "class=" << to_string(t.cycle.classification) << " period=" << t.cycle.period
            << " iterations=" << t.iterations() << '\n';
  }
  return kExitOk;
}

int cmd_cycle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Trajectory t = iterate(parse_angles(cfg, err), cfg.max_iter, cfg.tol);
  Sink sink(cfg.out_path, out);
  sink.stream() << cycle_json(t).dump(2) << '\n';
  return t.cycle.classification == CycleClass::NoConvergence ? kExitNoConvergence : kExitOk;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  const double from = cfg.from.value_or(1.4);
  const double to = cfg.to.value_or(kHalfPi);
  const int samples = cfg.samples > 0 ? cfg.samples : 101;
  if (!(from > 0.0 && from < to && to <= kHalfPi) || samples < 2) {
    throw UsageError("curve needs 0 < from < to <= pi/2 and samples >= 2");
  }
  Sink sink(cfg.out_path, out);
  sink.stream() << "a,c\n";
  for (int i = 0; i < samples; ++i) {
    // The last grid point is pinned to `to` so the endpoint is exact.
    const double a = i + 1 == samples ? to : from + (to - from) * i / (samples - 1);
    sink.stream() << format_real(a) << ',' << format_real(c_map(a)) << '\n';
  }
  return kExitOk;
}

int cmd_basin(const RunConfig& cfg, std::ostream& out) {
  BasinConfig bc;
  bc.seed = cfg.seed;
  bc.samples = cfg.samples > 0 ? cfg.samples : 1000;
  bc.margin = cfg.margin;
  bc.trapezoid_seeds = cfg.trapezoid_seeds;
  bc.max_iter = cfg.max_iter;
  bc.tol = cfg.trapezoid_seeds && !cfg.tol_given ? kTrapezoidCycleTolerance : cfg.tol;
  bc.threads = cfg.threads;
  const auto records = run_basin(bc);
  Sink sink(cfg.out_path, out);
  write_basin_csv(sink.stream(), records);
  return kExitOk;
}

Json solve_json(const SolveResult& r) {
  return Json{{"solution", real_array(r.solution)},
              {"residual", format_real(r.residual_norm)},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"provenance", r.provenance}};
}

int cmd_solve_trapezoid(const RunConfig& cfg, std::ostream& out) {
  const auto fp = solve_trapezoid_fixed_point(cfg.tol, cfg.from.value_or(1.4), cfg.to.value_or(1.5));
  const double a = fp.attracting.solution.front();
  Json j = solve_json(fp.attracting);
  j["a_star"] = format_real(a);
  j["bisection_estimate"] = format_real(fp.bisection_estimate);
  j["repelling_fixed_point"] = format_real(fp.repelling);
  j["slope"] = format_real(c_map_derivative(a, cfg.h));
  Sink sink(cfg.out_path, out);
  sink.stream() << j.dump(2) << '\n';
  return fp.attracting.converged ? kExitOk : kExitNoConvergence;
}

int cmd_solve_cycle(const RunConfig& cfg, std::ostream& out) {
  std::optional<ChartPoint> initial;
  if (!cfg.initial_text.empty()) {
    const auto v = parse_list(cfg.initial_text, 3, "--initial");
    initial = ChartPoint{v[0], v[1], v[2]};
  }
  const SolveResult r = solve_cycle_system(initial, cfg.tol, cfg.newton_max_iter);
  Json j = solve_json(r);
  Quad q{};
  std::copy(r.solution.begin(), r.solution.end(), q.begin());
  j["angles"] = quad_json(q);
  Sink sink(cfg.out_path, out);
  sink.stream() << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const StabilityReport rep = stability_report(parse_angles(cfg, err), cfg.order, cfg.h);
  Json jac = Json::array();
  for (const auto& row : rep.jacobian) {
    jac.push_back(real_array(row));
  }
  Json j{{"point", Json{{"alpha", format_real(rep.point.alpha)},
                        {"gamma", format_real(rep.point.gamma)},
                        {"delta", format_real(rep.point.delta)}}},
         {"map_order", rep.map_order},
         {"relabel", rep.relabel},
         {"jacobian", jac},
         {"eigenvalue_moduli", real_array(rep.eigenvalue_moduli)},
         {"spectral_radius", format_real(rep.spectral_radius)},
         {"fd_step", format_real(rep.fd_step)}};
  Sink sink(cfg.out_path, out);
  sink.stream() << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.out_path, out);
  return report_verification(run_all_criteria(), sink.stream(), cfg.json);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced quadrangle dynamics: iterate, solve and verify", "quadyn"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Write the primary output to PATH");
    sub->add_flag("--json", cfg.json, "JSON output");
  };
  auto add_angles = [&cfg](CLI::App* sub) {
    sub->add_option("--angles", cfg.angles_text, "Angles a,b,c,d in radians")->required();
  };
  auto add_iteration = [&cfg](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Cycle detection tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", cfg.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  };

  auto* step_cmd = app.add_subcommand("step", "Apply the map once");
  add_angles(step_cmd);
  add_common(step_cmd);

  auto* iterate_cmd = app.add_subcommand("iterate", "Trajectory CSV (iter,alpha,beta,gamma,delta)");
  add_angles(iterate_cmd);
  add_iteration(iterate_cmd);
  add_common(iterate_cmd);

  auto* cycle_cmd = app.add_subcommand("cycle", "Detect and classify the limit cycle (JSON)");
  add_angles(cycle_cmd);
  add_iteration(cycle_cmd);
  add_common(cycle_cmd);

  auto* curve_cmd = app.add_subcommand("curve", "Samples of the trapezoid submap c(a) (CSV a,c)");
  curve_cmd->add_option("--from", cfg.from, "Lower end of the grid (default 1.4)");
  curve_cmd->add_option("--to", cfg.to, "Upper end of the grid (default pi/2)");
  curve_cmd->add_option("--samples", cfg.samples, "Grid size (default 101)");
  add_common(curve_cmd);

  auto* basin_cmd = app.add_subcommand("basin", "Monte Carlo convergence experiment (CSV)");
  basin_cmd->add_option("--seed", cfg.seed, "RNG seed (default 42)");
  basin_cmd->add_option("--samples", cfg.samples, "Number of samples (default 1000)");
  basin_cmd->add_option("--margin", cfg.margin, "Keep angles inside (margin, pi - margin)");
  basin_cmd->add_flag("--trapezoid", cfg.trapezoid_seeds, "Draw trapezoid seeds (a, pi-a, pi-a, a)");
  basin_cmd->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_iteration(basin_cmd);
  add_common(basin_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Root-finding for the fixed point or the 2-cycle");
  solve_cmd->require_subcommand(1);
  auto* solve_trap = solve_cmd->add_subcommand("trapezoid", "Solve c(a) = a");
  solve_trap->add_option("--from", cfg.from, "Bracket lower end (default 1.4)");
  solve_trap->add_option("--to", cfg.to, "Bracket upper end (default 1.5)");
  solve_trap->add_option("--tol", cfg.tol, "Tolerance (at least 1e-14)");
  solve_trap->add_option("--h", cfg.h, "Step for the slope c'(a*)");
  add_common(solve_trap);
  auto* solve_cyc = solve_cmd->add_subcommand("cycle", "Solve the 2-cycle relations");
  solve_cyc->add_option("--initial", cfg.initial_text, "Start alpha,gamma,delta (default: from iteration)");
  solve_cyc->add_option("--tol", cfg.tol, "Residual tolerance (at least 1e-13)");
  solve_cyc->add_option("--max-iter", cfg.newton_max_iter, "Newton iteration cap (default 100)");
  add_common(solve_cyc);

  auto* stability_cmd = app.add_subcommand("stability", "Finite-difference Jacobian and spectrum (JSON)");
  add_angles(stability_cmd);
  stability_cmd->add_option("--order", cfg.order, "1 for f, 2 for f o f")->check(CLI::IsMember({1, 2}));
  stability_cmd->add_option("--h", cfg.h, "Finite-difference step")->check(CLI::Range(1e-8, 1e-4));
  add_common(stability_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run the reproduction checks");
  add_common(verify_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*step_cmd) return cmd_step(cfg, out, err);
    if (*iterate_cmd) return cmd_iterate(cfg, out, err);
    if (*cycle_cmd) return cmd_cycle(cfg, out, err);
    if (*curve_cmd) return cmd_curve(cfg, out);
    if (*basin_cmd) {
      cfg.tol_given = basin_cmd->count("--tol") > 0;
      return cmd_basin(cfg, out);
    }
    if (*solve_trap) return cmd_solve_trapezoid(cfg, out);
    if (*solve_cyc) return cmd_solve_cycle(cfg, out);
    if (*stability_cmd) return cmd_stability(cfg, out, err);
    if (*verify_cmd) return cmd_verify(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_validation_error(e.code()) ? kExitUsage : kExitNoConvergence;
  }
  return kExitUsage;
}

}  // namespace quadyn::app
