#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nqt {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;  // the quantity compared against the threshold
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::optional<int> rk4_steps;  // overrides default_rk4_steps
  std::uint64_t seed = 0;        // Groverian multi-start seed
};

/// Runs the invariant suite: channel oracles, RK4 vs expm, circuit
/// certificates, closed-form fidelity agreement, coherence equations,
/// Groverian values, crossover, asymptotes, EPR results and density-matrix
/// properties.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace nqt
