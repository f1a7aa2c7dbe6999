#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dva::tools {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;

  bool pass() const;
  int passed() const;
  int failed() const;
};

struct SuiteInfo {
  std::string name;
  std::string summary;
};

// Named invariant families; the first twelve are the acceptance criteria in order.
const std::vector<SuiteInfo>& suites();
bool has_suite(const std::string& name);
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace dva::tools
