#include "entrosig/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "entrosig/errors.hpp"

namespace entrosig {
namespace {

void require_same_size(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distributions have different sizes");
  }
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

DiscreteDistribution floored(const DiscreteDistribution& p) {
  std::vector<double> w(p.probs().begin(), p.probs().end());
  for (double& v : w) {
    v = std::max(v, kEpsilonFloor);
  }
  return DiscreteDistribution::from_weights(w);
}

/// Sum of p_i * f(p_i, q_i) over p_i > 0, with the zero policy applied when
/// q_i == 0. Returns nullopt when the policy asks for +inf.
template <typename Term>
std::optional<double> sum_over_support(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                       ZeroPolicy policy, Term term) {
  require_same_size(p, q);
  if (policy == ZeroPolicy::epsilon_floor) {
    const auto pf = floored(p);
    const auto qf = floored(q);
    return sum_over_support(pf, qf, ZeroPolicy::error, term);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) {
      continue;
    }
    if (q[i] <= 0.0) {
      if (policy == ZeroPolicy::infinity) {
        return std::nullopt;
      }
      throw SupportMismatch("q has zero mass where p does not (index " + std::to_string(i) + ")");
    }
    acc += term(p[i], q[i]);
  }
  return acc;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double entropy(const DiscreteDistribution& p) {
  double h = 0.0;
  for (double v : p.probs()) {
    h -= xlog2x(v);
  }
  // -0.0 and tiny negative rounding for deltas.
  return std::max(h, 0.0);
}

double normalized_entropy(const DiscreteDistribution& p) {
  if (p.size() < 2) {
    throw std::invalid_argument("normalized entropy needs at least 2 outcomes");
  }
  return std::clamp(entropy(p) / std::log2(static_cast<double>(p.size())), 0.0, 1.0);
}

double cross_entropy(const DiscreteDistribution& p, const DiscreteDistribution& q, ZeroPolicy policy) {
  const auto v = sum_over_support(p, q, policy, [](double pi, double qi) { return -pi * std::log2(qi); });
  return v ? *v : kInf;
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, ZeroPolicy policy) {
  const auto v = sum_over_support(p, q, policy, [](double pi, double qi) { return pi * std::log2(pi / qi); });
  return v ? std::max(*v, 0.0) : kInf;
}

double symmetrized_kl(const DiscreteDistribution& p, const DiscreteDistribution& q, ZeroPolicy policy) {
  return kl_divergence(p, q, policy) + kl_divergence(q, p, policy);
}

double jsd(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_size(p, q);
  std::vector<double> mid(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    mid[i] = 0.5 * (p[i] + q[i]);
  }
  const auto m = DiscreteDistribution::from_weights(mid);
  // m_i > 0 wherever p_i > 0 or q_i > 0, so neither KL can hit the policy.
  return 0.5 * (kl_divergence(p, m) + kl_divergence(q, m));
}

double jsd_entropy_form(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_size(p, q);
  std::vector<double> mid(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    mid[i] = 0.5 * (p[i] + q[i]);
  }
  const auto m = DiscreteDistribution::from_weights(mid);
  return entropy(m) - 0.5 * (entropy(p) + entropy(q));
}

double sid(const DiscreteDistribution& reference, const DiscreteDistribution& test, ZeroPolicy policy) {
  return symmetrized_kl(reference, test, policy);
}

double lh(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_size(p, q);
  if (q.is_uniform()) {
    // -log2 q_i is constant, so H(p,q) - H(q) = -log2(1/N) (sum p - sum q) = 0.
    return 0.0;
  }
  return cross_entropy(p, q) - entropy(q);
}

double disequilibrium(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_size(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] <= 0.0) {
      throw SupportMismatch("disequilibrium needs q_i > 0 everywhere");
    }
    const double d = p[i] - q[i];
    acc += d * d / q[i];
  }
  return acc / static_cast<double>(p.size());
}

double d_sq(const DiscreteDistribution& p) {
  const double u = 1.0 / static_cast<double>(p.size());
  double acc = 0.0;
  for (double v : p.probs()) {
    acc += (v - u) * (v - u);
  }
  return acc;
}

namespace {
double scaled_entropy(const DiscreteDistribution& p, EntropyScale scale) {
  if (scale == EntropyScale::bits || p.size() < 2) {
    return entropy(p);
  }
  return normalized_entropy(p);
}
}  // namespace

double c_sq(const DiscreteDistribution& p, EntropyScale scale) { return scaled_entropy(p, scale) * d_sq(p); }

double c_jsd(const DiscreteDistribution& p, EntropyScale scale) {
  return scaled_entropy(p, scale) * jsd(p, DiscreteDistribution::uniform(p.size()));
}

double c_general(const DiscreteDistribution& p) {
  const double h = entropy(p);
  return h * std::max(std::log2(static_cast<double>(p.size())) - h, 0.0);
}

GaussianParams::GaussianParams(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw std::invalid_argument("Gaussian sigma must be positive and finite");
  }
}

double gaussian_entropy(const GaussianParams& g) {
  return std::log2(std::sqrt(2.0 * std::numbers::pi * std::numbers::e) * g.sigma);
}

double gaussian_disequilibrium(const GaussianParams& p, const GaussianParams& q) {
  const double sp2 = p.sigma * p.sigma;
  const double sq2 = q.sigma * q.sigma;
  const double denom = 2.0 * sq2 - sp2;
  if (!(denom > 0.0)) {
    throw SingularFormula("Gaussian disequilibrium requires 2 sigma_q^2 > sigma_p^2");
  }
  const double dmu = p.mu - q.mu;
  return sq2 / (p.sigma * std::sqrt(denom)) * std::exp(dmu * dmu / denom) - 1.0;
}

double gaussian_lh(const GaussianParams& p, const GaussianParams& q) {
  const double sq2 = q.sigma * q.sigma;
  const double dmu = p.mu - q.mu;
  return dmu * dmu / (2.0 * sq2) + 0.5 * (p.sigma * p.sigma / sq2 - 1.0);
}

}  // namespace entrosig
