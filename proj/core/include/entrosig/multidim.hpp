#pragma once

#include "entrosig/distributions.hpp"

namespace entrosig {

/// Joint law of two independent discrete variables, p_ij = p1_i * p2_j.
struct ProductDistribution2D {
  DiscreteDistribution p1;  ///< size N
  DiscreteDistribution p2;  ///< size K

  [[nodiscard]] double joint(std::size_t i, std::size_t j) const noexcept { return p1[i] * p2[j]; }
};

/// H(p1) + H(p2), bits.
double entropy_2d(const ProductDistribution2D& pd);

/// Disequilibrium against the uniform N x K joint, summed over every cell.
double disequilibrium_2d_direct(const ProductDistribution2D& pd);

/// Same quantity from the marginal disequilibria:
///   D1/K + D2/N + D1 D2, with Di = d_sq(pi).
double disequilibrium_2d_factored(const ProductDistribution2D& pd);

/// H_2d * D_2d (entropy in bits).
double complexity_2d(const ProductDistribution2D& pd);

/// Complexity from the one-dimensional complexities C_i = H(p_i) d_sq(p_i):
///   C1/K (1 + H2/H1) + C2/N (1 + H1/H2) + C1 C2 (1/H1 + 1/H2).
/// Falls back to complexity_2d when either marginal entropy is below
/// kMinFactorEntropy, where the expression is singular.
double complexity_2d_factored(const ProductDistribution2D& pd);

inline constexpr double kMinFactorEntropy = 1e-9;

}  // namespace entrosig
