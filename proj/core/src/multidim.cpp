#include "entrosig/multidim.hpp"

#include <cmath>

#include "entrosig/criteria.hpp"

namespace entrosig {

double entropy_2d(const ProductDistribution2D& pd) { return entropy(pd.p1) + entropy(pd.p2); }

double disequilibrium_2d_direct(const ProductDistribution2D& pd) {
  const std::size_t n = pd.p1.size();
  const std::size_t k = pd.p2.size();
  const double cells = static_cast<double>(n * k);
  const double q = 1.0 / cells;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d = pd.joint(i, j) - q;
      acc += d * d / q;
    }
  }
  return acc / cells;
}

double disequilibrium_2d_factored(const ProductDistribution2D& pd) {
  const double n = static_cast<double>(pd.p1.size());
  const double k = static_cast<double>(pd.p2.size());
  const double d1 = d_sq(pd.p1);
  const double d2 = d_sq(pd.p2);
  return d1 / k + d2 / n + d1 * d2;
}

double complexity_2d(const ProductDistribution2D& pd) { return entropy_2d(pd) * disequilibrium_2d_direct(pd); }

double complexity_2d_factored(const ProductDistribution2D& pd) {
  const double h1 = entropy(pd.p1);
  const double h2 = entropy(pd.p2);
  if (h1 < kMinFactorEntropy || h2 < kMinFactorEntropy) {
    return complexity_2d(pd);
  }
  const double n = static_cast<double>(pd.p1.size());
  const double k = static_cast<double>(pd.p2.size());
  const double c1 = c_sq(pd.p1, EntropyScale::bits);
  const double c2 = c_sq(pd.p2, EntropyScale::bits);
  return c1 / k * (1.0 + h2 / h1) + c2 / n * (1.0 + h1 / h2) + c1 * c2 * (1.0 / h1 + 1.0 / h2);
}

}  // namespace entrosig
