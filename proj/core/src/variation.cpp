#include "entrosig/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "entrosig/criteria.hpp"

namespace entrosig {

double entropy_variation(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distributions have different sizes");
  }
  return entropy(p) - entropy(q);
}

Lemma1Terms lemma1_decomposition(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Lemma1Terms t;
  t.lh_term = lh(p, q);
  t.d_term = disequilibrium(p, q) * static_cast<double>(q.size()) / (2.0 * std::numbers::ln2);
  t.residual = entropy_variation(p, q) - (t.lh_term - t.d_term);
  return t;
}

ResidualOrderReport residual_order_check(const DiscreteDistribution& q, std::span<const double> direction,
                                         std::span<const double> scales) {
  if (direction.size() != q.size()) {
    throw std::invalid_argument("direction size does not match q");
  }
  if (scales.size() < 2) {
    throw std::invalid_argument("order fit needs at least two scales");
  }
  const double total = std::accumulate(direction.begin(), direction.end(), 0.0);
  const double mag = std::accumulate(direction.begin(), direction.end(), 0.0,
                                     [](double a, double d) { return a + std::abs(d); });
  if (std::abs(total) > 1e-12 * std::max(mag, 1.0)) {
    throw std::invalid_argument("perturbation direction must sum to zero");
  }

  ResidualOrderReport report;
  for (double eps : scales) {
    if (!(eps > 0.0)) {
      throw std::invalid_argument("scales must be positive");
    }
    std::vector<double> shifted(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      shifted[i] = q[i] + eps * direction[i];
      if (!(shifted[i] > 0.0) || q[i] <= 0.0) {
        throw std::invalid_argument("perturbation leaves the simplex");
      }
    }
    const DiscreteDistribution p(std::move(shifted));
    report.scales.push_back(eps);
    report.residuals.push_back(std::abs(lemma1_decomposition(p, q).residual));
  }

  // Ordinary least squares on (log eps, log |r|).
  const auto n = static_cast<double>(report.scales.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < report.scales.size(); ++i) {
    const double x = std::log(report.scales[i]);
    const double y = std::log(std::max(report.residuals[i], std::numeric_limits<double>::min()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return report;
}

ConnectionReport connection_check(const DiscreteDistribution& p0, std::size_t n_levels) {
  const auto grouped = dist_time_grouped(p0, n_levels);
  ConnectionReport r;
  r.lhs = entropy(p0);
  // pt_j >= 1/N wherever p1_j > 0, so the KL support condition always holds.
  r.rhs = std::log2(static_cast<double>(p0.size())) - kl_divergence(grouped.p1, grouped.pt);
  r.gap = r.lhs - r.rhs;
  return r;
}

GroupingStability grouping_stability(const DiscreteDistribution& p0, std::span<const std::size_t> n_values) {
  GroupingStability out;
  for (std::size_t n : n_values) {
    const auto g = dist_time_grouped(p0, n);
    out.rows.push_back({n, kl_divergence(g.p1, g.pt)});
  }
  if (!out.rows.empty()) {
    const auto [lo, hi] = std::minmax_element(out.rows.begin(), out.rows.end(),
                                              [](const auto& a, const auto& b) { return a.kl < b.kl; });
    out.spread = hi->kl - lo->kl;
  }
  return out;
}

double gaussianity_check(const DiscreteDistribution& p1) {
  double mean = 0.0;
  for (std::size_t j = 0; j < p1.size(); ++j) {
    mean += p1[j] * (static_cast<double>(j) + 0.5);
  }
  double var = 1.0 / 12.0;
  for (std::size_t j = 0; j < p1.size(); ++j) {
    const double d = static_cast<double>(j) + 0.5 - mean;
    var += p1[j] * d * d;
  }
  const double sd = std::sqrt(var);
  auto normal_cdf = [&](double x) { return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2)); };

  double cdf = 0.0;
  double stat = 0.0;
  for (std::size_t j = 0; j < p1.size(); ++j) {
    const double phi = normal_cdf(static_cast<double>(j) + 0.5);
    // Empirical CDF jumps at the atom; compare both one-sided limits.
    stat = std::max(stat, std::abs(cdf - phi));
    cdf += p1[j];
    stat = std::max(stat, std::abs(std::min(cdf, 1.0) - phi));
  }
  return stat;
}

}  // namespace entrosig
