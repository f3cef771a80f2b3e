// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exits non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "quadyn_app/cli.hpp"
#include "quadyn_app/verify.hpp"

namespace {

void print_line(bool passed, int id, const std::string& name, const std::string& detail, double seconds) {
  std::printf("[%s] %2d %-28s %.3fs  %s\n", passed ? "PASS" : "FAIL", id, name.c_str(), seconds, detail.c_str());
}

}  // namespace

int main() {
  using quadyn::app::run_criterion;
  int failed = 0;

  for (const auto& criterion : quadyn::app::verification_criteria()) {
    const auto r = run_criterion(criterion);
    print_line(r.passed, r.id, r.name, r.detail, r.seconds);
    failed += r.passed ? 0 : 1;
  }

  // The verify subcommand end to end, on one thread, within 10 s.
  std::ostringstream out;
  std::ostringstream err;
  const auto start = std::chrono::steady_clock::now();
  const int code = quadyn::app::run_cli({"quadyn", "verify"}, out, err);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool passed = code == quadyn::app::kExitOk && seconds < 10.0;
  print_line(passed, 12, "verify command", "exit " + std::to_string(code) + " (want 0), runtime under 10 s", seconds);
  failed += passed ? 0 : 1;

  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
