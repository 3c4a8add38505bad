#pragma once

#include "entrosig/distributions.hpp"

namespace entrosig {

/// How divergences treat q_i == 0 against p_i > 0.
enum class ZeroPolicy {
  error,          ///< throw SupportMismatch
  infinity,       ///< return +inf
  epsilon_floor,  ///< floor both inputs at kEpsilonFloor and renormalize
};

inline constexpr double kEpsilonFloor = 1e-12;

/// Whether complexity products use raw entropy in bits or entropy divided
/// by log2 N.
enum class EntropyScale { bits, normalized };

/// Shannon entropy in bits, 0 log 0 = 0.
double entropy(const DiscreteDistribution& p);

/// H(p) / log2 N. Throws std::invalid_argument for N == 1.
double normalized_entropy(const DiscreteDistribution& p);

double cross_entropy(const DiscreteDistribution& p, const DiscreteDistribution& q,
                     ZeroPolicy policy = ZeroPolicy::error);
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                     ZeroPolicy policy = ZeroPolicy::error);
double symmetrized_kl(const DiscreteDistribution& p, const DiscreteDistribution& q,
                      ZeroPolicy policy = ZeroPolicy::error);

/// Jensen-Shannon divergence via the midpoint mixture, in bits (bounded by 1).
double jsd(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// The entropy identity form H(m) - (H(p) + H(q)) / 2.
double jsd_entropy_form(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Spectral information divergence between a reference and a test spectrum.
/// Log base 2; identical to symmetrized_kl.
double sid(const DiscreteDistribution& reference, const DiscreteDistribution& test,
           ZeroPolicy policy = ZeroPolicy::error);

/// Cross-entropy minus reference entropy, H(p,q) - H(q). Exactly zero when q
/// is uniform.
double lh(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// (1/N) sum (p_i - q_i)^2 / q_i. Requires q_i > 0 everywhere.
double disequilibrium(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Squared Euclidean distance to the uniform distribution.
double d_sq(const DiscreteDistribution& p);

double c_sq(const DiscreteDistribution& p, EntropyScale scale = EntropyScale::normalized);
double c_jsd(const DiscreteDistribution& p, EntropyScale scale = EntropyScale::normalized);

/// H (log2 N - H), in bits squared.
double c_general(const DiscreteDistribution& p);

/// Mean and standard deviation of a normal density. sigma > 0.
struct GaussianParams {
  double mu = 0.0;
  double sigma = 1.0;

  GaussianParams() = default;
  GaussianParams(double mu_, double sigma_);
};

/// Differential entropy log2(sqrt(2 pi e) sigma), bits.
double gaussian_entropy(const GaussianParams& g);

/// Closed-form integral of rho_p^2 / rho_q minus one. Throws SingularFormula
/// when 2 sigma_q^2 <= sigma_p^2.
double gaussian_disequilibrium(const GaussianParams& p, const GaussianParams& q);

/// (mu_p - mu_q)^2 / (2 sigma_q^2) + (sigma_p^2 / sigma_q^2 - 1) / 2.
/// Natural-log scale, not converted to bits.
double gaussian_lh(const GaussianParams& p, const GaussianParams& q);

}  // namespace entrosig
