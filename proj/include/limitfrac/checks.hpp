#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace limitfrac {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast self-test of core invariants (lumping, energies, marking, mesh, solvers).
std::vector<CheckResult> run_builtin_checks(std::uint64_t seed = 12345);

}  // namespace limitfrac
