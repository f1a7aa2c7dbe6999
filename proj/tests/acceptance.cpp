#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "dvatools/suites.hpp"

// One line per acceptance criterion; the first twelve suites are the criteria in order.
int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  const auto& all = dva::tools::suites();
  int failures = 0;
  for (std::size_t i = 0; i < 12; ++i) {
    auto start = std::chrono::steady_clock::now();
    auto r = dva::tools::run_suite(all[i].name, seed + i);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %-20s %s  (%d/%zu checks, %.1fs)\n", i + 1, all[i].name.c_str(), r.pass() ? "PASS" : "FAIL", r.passed(),
                r.checks.size(), secs);
    for (const auto& c : r.checks)
      if (!c.pass) std::printf("    failed: %s%s%s\n", c.name.c_str(), c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    if (!r.pass()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
