#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "quadyn/constants.hpp"
#include "quadyn/format.hpp"
#include "quadyn_app/basin.hpp"
#include "quadyn_app/cli.hpp"
#include "quadyn_app/sampling.hpp"
#include "test_support.hpp"

namespace quadyn::app {
namespace {

using Json = nlohmann::json;
using quadyn::testing::sup_distance;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "quadyn");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double real(const Json& j) { return parse_real(j.get<std::string>()).value(); }

Quad quad(const Json& arr) { return {real(arr[0]), real(arr[1]), real(arr[2]), real(arr[3])}; }

Quad named_quad(const Json& obj) {
  return {real(obj["alpha"]), real(obj["beta"]), real(obj["gamma"]), real(obj["delta"])};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

TEST(Format, RoundTripsEveryDouble) {
  auto gen = sample_stream(50, 0);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t bits = gen();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) {
      continue;
    }
    const std::string s = format_real(v);
    ASSERT_EQ(parse_real(s).value(), v) << s;
  }
  EXPECT_EQ(parse_real(format_real(kPi)).value(), kPi);
  EXPECT_EQ(format_compact(1.4), "1.4");
}

TEST(Format, RejectsPartialNumbers) {
  EXPECT_FALSE(parse_real("1.5x").has_value());
  EXPECT_FALSE(parse_real("").has_value());
  EXPECT_FALSE(parse_real("1,5").has_value());
  EXPECT_EQ(parse_real("+2.5").value(), 2.5);
}

struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
};

TEST(Format, IgnoresGlobalLocale) {
  const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
  const std::string s = format_real(0.5);
  const CliRun r = run({"curve", "--from", "1.4", "--to", "1.5", "--samples", "2"});
  std::locale::global(saved);
  EXPECT_EQ(s, "0.5");
  EXPECT_EQ(r.out.find(",4"), std::string::npos);
  EXPECT_EQ(csv_rows(r.out)[1][0], "1.3999999999999999");
}

TEST(Sampling, IsDeterministicPerSample) {
  EXPECT_EQ(sample_angles(42, 7), sample_angles(42, 7));
  EXPECT_NE(sample_angles(42, 7), sample_angles(42, 8));
  EXPECT_NE(sample_angles(42, 7), sample_angles(43, 7));
  for (std::uint64_t id = 0; id < 2000; ++id) {
    for (double a : sample_angles(42, id).values()) {
      ASSERT_GT(a, kDefaultSampleMargin);
      ASSERT_LT(a, kPi - kDefaultSampleMargin);
    }
  }
}

TEST(Sampling, TrapezoidSeeds) {
  for (std::uint64_t id = 0; id < 200; ++id) {
    const AngleTuple q = sample_trapezoid(1, id);
    ASSERT_GT(q.alpha(), 0.1);
    ASSERT_LT(q.alpha(), 1.5);
    ASSERT_EQ(q.delta(), q.alpha());
    ASSERT_EQ(q.beta(), q.gamma());
  }
}

TEST(Sampling, UniformUsesTopBits) {
  auto gen = sample_stream(0, 0);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(gen);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1.0 - 1e-3);
}

TEST(Basin, ThreadCountDoesNotChangeOutput) {
  BasinConfig cfg;
  cfg.samples = 64;
  std::ostringstream one;
  write_basin_csv(one, run_basin(cfg));
  cfg.threads = 4;
  std::ostringstream four;
  write_basin_csv(four, run_basin(cfg));
  EXPECT_EQ(one.str(), four.str());
}

TEST(Basin, FrequenciesCountEveryRecord) {
  BasinConfig cfg;
  cfg.samples = 50;
  const auto records = run_basin(cfg);
  int total = 0;
  for (const auto& [cls, n] : class_frequencies(records)) {
    total += n;
  }
  EXPECT_EQ(total, 50);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].sample_id, static_cast<int>(i));
  }
}

TEST(Cli, StepJson) {
  const CliRun r = run({"step", "--angles", "1.0471975511965976,2.0943951023931953,2.0943951023931953,1.0471975511965976",
                     "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_LT(sup_distance(named_quad(j), {5 * kPi / 6, kPi / 3, kHalfPi, kPi / 3}), 1e-14);
}

TEST(Cli, StepAcceptsTypedDigits) {
  const CliRun r = run({"step", "--angles", "1.0472,2.0944,2.0944,1.0472", "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("rescaled"), std::string::npos);
  EXPECT_LT(sup_distance(named_quad(Json::parse(r.out)), {5 * kPi / 6, kPi / 3, kHalfPi, kPi / 3}), 1e-4);
}

TEST(Cli, StepCsv) {
  const CliRun r = run({"step", "--angles", "1.5707963267948966,1.5707963267948966,1.5707963267948966,1.5707963267948966"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"alpha", "beta", "gamma", "delta"}));
}

TEST(Cli, IterateSquare) {
  const CliRun r = run({"iterate", "--angles", "1.5707963,1.5707963,1.5707963,1.5707963"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_GE(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"iter", "alpha", "beta", "gamma", "delta"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t c = 1; c < 5; ++c) {
      EXPECT_NEAR(parse_real(rows[i][c]).value(), kHalfPi, 1e-15);
    }
  }
  EXPECT_NE(r.err.find("square_fixed"), std::string::npos);
}

TEST(Cli, CycleFromTypedSeed) {
  const CliRun r = run({"cycle", "--angles", "1.2,2.1,1.5,1.4831853"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["class"], "general_2cycle");
  EXPECT_EQ(j["period"], 2);
  EXPECT_LT(real(j["match_distance"]), 1e-6);
}

TEST(Cli, CycleWithoutConvergenceExitsThree) {
  const CliRun r = run({"cycle", "--angles", "1.2,2.1,1.5,1.4831853", "--max-iter", "5"});
  EXPECT_EQ(r.code, kExitNoConvergence);
  EXPECT_EQ(Json::parse(r.out)["class"], "no_convergence");
}

TEST(Cli, CurveEndsOnTheDiagonal) {
  const CliRun r = run({"curve", "--from", "1.4", "--to", "1.5707963267948966", "--samples", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(parse_real(rows[3][0]).value(), kHalfPi);
  EXPECT_NEAR(parse_real(rows[3][1]).value(), kHalfPi, 1e-15);
}

TEST(Cli, CurveIncreasesAndCrossesNearFixedPoint) {
  const CliRun r = run({"curve"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 102u);
  const double grid = (kHalfPi - 1.4) / 100.0;
  double prev = -1.0;
  double nearest = 1e9;
  double gap_at_nearest = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = parse_real(rows[i][0]).value();
    const double c = parse_real(rows[i][1]).value();
    ASSERT_GT(c, prev);
    prev = c;
    if (std::abs(a - reference::kTrapezoidFixedPoint) < nearest) {
      nearest = std::abs(a - reference::kTrapezoidFixedPoint);
      gap_at_nearest = std::abs(c - a);
    }
  }
  EXPECT_LT(gap_at_nearest, grid);
}

TEST(Cli, CurveRejectsBadRange) {
  EXPECT_EQ(run({"curve", "--from", "1.5", "--to", "1.4"}).code, kExitUsage);
  EXPECT_EQ(run({"curve", "--from", "0", "--to", "1.4"}).code, kExitUsage);
  EXPECT_EQ(run({"curve", "--samples", "1"}).code, kExitUsage);
}

TEST(Cli, BasinIsReproducible) {
  const CliRun a = run({"basin", "--seed", "42", "--samples", "40"});
  const CliRun b = run({"basin", "--seed", "42", "--samples", "40", "--threads", "3"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = csv_rows(a.out);
  ASSERT_EQ(rows.size(), 41u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"sample_id", "alpha0", "beta0", "gamma0", "delta0", "class", "iters",
                                               "residual", "match_distance"}));
  EXPECT_NE(a.out.find("# samples=40 general_2cycle=40"), std::string::npos);
}

TEST(Cli, BasinOfTrapezoidSeeds) {
  const CliRun r = run({"basin", "--trapezoid", "--samples", "30"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# samples=30 general_2cycle=0 trapezoid_2cycle=30"), std::string::npos) << r.out;
}

TEST(Cli, BasinWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "quadyn_basin_test.csv";
  const CliRun r = run({"basin", "--samples", "5", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(csv_rows(text.str()).size(), 6u);
  std::filesystem::remove(path);
}

TEST(Cli, SolveTrapezoid) {
  const CliRun r = run({"solve", "trapezoid"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(real(j["a_star"]), reference::kTrapezoidFixedPoint, 1e-12);
  EXPECT_EQ(real(j["repelling_fixed_point"]), kHalfPi);
}

TEST(Cli, SolveCycle) {
  const CliRun r = run({"solve", "cycle"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_LT(sup_distance(quad(j["solution"]), reference::kGeneralCycle), 1e-9);
}

TEST(Cli, SolveErrors) {
  EXPECT_EQ(run({"solve", "trapezoid", "--tol", "1e-16"}).code, kExitUsage);
  EXPECT_EQ(run({"solve", "trapezoid", "--from", "0.1", "--to", "1.4"}).code, kExitNoConvergence);
  EXPECT_EQ(run({"solve", "cycle", "--tol", "1e-13", "--max-iter", "1", "--initial", "1.5,1.4,1.5"}).code,
            kExitNoConvergence);
}

TEST(Cli, StabilityOfGeneralCycle) {
  const CliRun r = run({"stability", "--angles",
                     "1.5481930524866923,1.824051885127593,1.4151595303135091,1.4957808392517921", "--order", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_LT(real(j["spectral_radius"]), 1.0);
  EXPECT_EQ(j["relabel"], 1);
  EXPECT_EQ(j["jacobian"].size(), 3u);
}

TEST(Cli, VerifyJson) {
  const CliRun r = run({"verify", "--json"});
  const Json j = Json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 11u);
  bool all = true;
  for (const auto& c : j) {
    EXPECT_TRUE(c.contains("id"));
    EXPECT_TRUE(c.contains("passed"));
    EXPECT_TRUE(c.contains("detail"));
    all = all && c["passed"].get<bool>();
  }
  EXPECT_EQ(r.code, all ? kExitOk : kExitVerifyFailed);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"step"}).code, kExitUsage);
  EXPECT_EQ(run({"step", "--angles", "1,2,3"}).code, kExitUsage);
  EXPECT_EQ(run({"step", "--angles", "1,2,x,1"}).code, kExitUsage);
  EXPECT_EQ(run({"step", "--angles", "1,2,2,1"}).code, kExitUsage);
  EXPECT_EQ(run({"step", "--angles", "3.1415926535897931,1.5707963267948966,1.5707963267948966,0"}).code, kExitUsage);
  EXPECT_EQ(run({"stability", "--angles", "1.5707963,1.5707963,1.5707963,1.5707963", "--h", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"stability", "--angles", "1.5707963,1.5707963,1.5707963,1.5707963", "--order", "3"}).code,
            kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

}  // namespace
}  // namespace quadyn::app
