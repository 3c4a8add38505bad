#pragma once

#include <span>
#include <vector>

#include "entrosig/distributions.hpp"

namespace entrosig {

/// Exact entropy change H(p) - H(q), i.e. H(q + dq) - H(q) with dq = p - q.
double entropy_variation(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Second-order expansion of the entropy change:
///   H(p) - H(q) = LH(p||q) - D(p,q) N / (2 ln 2) + residual.
struct Lemma1Terms {
  double lh_term = 0.0;   ///< lh(p, q), bits
  double d_term = 0.0;    ///< disequilibrium(p, q) * N / (2 ln 2), bits
  double residual = 0.0;  ///< exact variation minus (lh_term - d_term)
};

Lemma1Terms lemma1_decomposition(const DiscreteDistribution& p, const DiscreteDistribution& q);

inline constexpr double kDefaultOrderScales[] = {1e-2, 5e-3, 2.5e-3, 1.25e-3};

struct ResidualOrderReport {
  std::vector<double> scales;
  std::vector<double> residuals;  ///< |residual| at each scale
  double slope = 0.0;             ///< least-squares slope of log|r| against log eps
};

/// Perturbs q along a zero-sum direction at each scale and fits the order
/// of the expansion residual. A slope near 3 confirms the residual is
/// o(eps^2). Throws std::invalid_argument if the direction does not sum to
/// zero or any perturbed point leaves the open simplex.
ResidualOrderReport residual_order_check(const DiscreteDistribution& q, std::span<const double> direction,
                                         std::span<const double> scales = kDefaultOrderScales);

struct ConnectionReport {
  double lhs = 0.0;  ///< H(p0), bits
  double rhs = 0.0;  ///< log2 N - D_KL(p1 || pt), bits
  double gap = 0.0;  ///< lhs - rhs
};

/// Compares the sample entropy of p0 with its grouped form. The gap is zero
/// whenever p0 is constant inside every grouping level.
ConnectionReport connection_check(const DiscreteDistribution& p0, std::size_t n_levels);

struct GroupingRow {
  std::size_t n_levels = 0;
  double kl = 0.0;  ///< D_KL(p1 || pt), bits
};

struct GroupingStability {
  std::vector<GroupingRow> rows;
  double spread = 0.0;  ///< max - min of kl over rows
};

GroupingStability grouping_stability(const DiscreteDistribution& p0, std::span<const std::size_t> n_values);

/// Kolmogorov-Smirnov distance between p1, read as point masses at level
/// centres, and a normal law with the same mean and variance (the variance
/// includes the 1/12 spread of a unit-width level). A point mass scores 0.5.
double gaussianity_check(const DiscreteDistribution& p1);

}  // namespace entrosig
