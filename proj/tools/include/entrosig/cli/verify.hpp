#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entrosig/criteria.hpp"
#include "entrosig/distributions.hpp"

namespace entrosig::cli {

/// Functions under test. Defaults point at the library; tests swap in
/// broken versions to make sure the suite notices.
struct VerifyHooks {
  std::function<double(const DiscreteDistribution&)> d_sq = [](const DiscreteDistribution& p) {
    return entrosig::d_sq(p);
  };
  std::function<double(const DiscreteDistribution&, const DiscreteDistribution&)> disequilibrium =
      [](const DiscreteDistribution& p, const DiscreteDistribution& q) { return entrosig::disequilibrium(p, q); };
  std::function<double(const DiscreteDistribution&, const DiscreteDistribution&)> jsd =
      [](const DiscreteDistribution& p, const DiscreteDistribution& q) { return entrosig::jsd(p, q); };
  std::function<double(const GaussianParams&, const GaussianParams&)> gaussian_disequilibrium =
      [](const GaussianParams& p, const GaussianParams& q) { return entrosig::gaussian_disequilibrium(p, q); };
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_passed() const;
};

/// Runs the analytical identity and expansion-order checks.
VerifyReport run_verification(const VerifyHooks& hooks = {}, std::uint64_t seed = 1);

}  // namespace entrosig::cli
