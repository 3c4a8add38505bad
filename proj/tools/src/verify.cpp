#include "entrosig/cli/verify.hpp"

#include <boost/math/quadrature/sinh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "entrosig/multidim.hpp"
#include "entrosig/variation.hpp"

namespace entrosig::cli {
namespace {

using Rng = std::mt19937_64;

DiscreteDistribution random_simplex(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  for (double& v : w) v = e(rng);
  return DiscreteDistribution::from_weights(w);
}

/// Strictly positive point, entries within a factor of three of each other.
DiscreteDistribution interior_point(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> w(n);
  for (double& v : w) v = u(rng);
  return DiscreteDistribution::from_weights(w);
}

std::vector<double> zero_sum_direction(Rng& rng, const DiscreteDistribution& q) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(q.size());
  for (double& v : x) v = g(rng);
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += q[i] * x[i];
  double top = 0.0;
  for (double& v : x) {
    v -= mean;
    top = std::max(top, std::abs(v));
  }
  std::vector<double> d(q.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = q[i] * x[i] / top;
  return d;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult max_error_check(std::string name, double worst, double tol, std::size_t cases) {
  CheckResult r;
  r.name = std::move(name);
  r.passed = worst <= tol;
  r.detail = std::to_string(cases) + " cases, max error " + fmt(worst) + " (tol " + fmt(tol) + ")";
  r.metrics.emplace_back("max_error", worst);
  return r;
}

double log_normal_pdf(double x, const GaussianParams& g) {
  const double z = (x - g.mu) / g.sigma;
  return -0.5 * z * z - std::log(std::sqrt(2.0 * std::numbers::pi) * g.sigma);
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

VerifyReport run_verification(const VerifyHooks& hooks, std::uint64_t seed) {
  VerifyReport report;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(2, 64);

  {
    double worst = 0.0;
    constexpr std::size_t kCases = 2000;
    for (std::size_t i = 0; i < kCases; ++i) {
      const auto p = random_simplex(rng, size_dist(rng));
      const auto u = DiscreteDistribution::uniform(p.size());
      double sum_sq = 0.0;
      for (double v : p.probs()) sum_sq += v * v;
      const double ds = hooks.d_sq(p);
      worst = std::max({worst, std::abs(ds - hooks.disequilibrium(p, u)),
                        std::abs(ds - (sum_sq - 1.0 / static_cast<double>(p.size())))});
    }
    report.checks.push_back(max_error_check("d_sq equals disequilibrium against uniform", worst, 1e-12, kCases));
  }

  {
    double worst = 0.0;
    constexpr std::size_t kCases = 2000;
    for (std::size_t i = 0; i < kCases; ++i) {
      const std::size_t n = size_dist(rng);
      const auto p = random_simplex(rng, n);
      const auto q = random_simplex(rng, n);
      worst = std::max(worst, std::abs(hooks.jsd(p, q) - jsd_entropy_form(p, q)));
    }
    report.checks.push_back(max_error_check("JSD mixture form equals entropy form", worst, 1e-12, kCases));
  }

  {
    double worst = 0.0;
    double min_kl = std::numeric_limits<double>::infinity();
    constexpr std::size_t kCases = 500;
    for (std::size_t i = 0; i < kCases; ++i) {
      const std::size_t n = size_dist(rng);
      const auto p = random_simplex(rng, n);
      worst = std::max(worst, std::abs(lemma1_decomposition(p, DiscreteDistribution::uniform(n)).lh_term));
      min_kl = std::min(min_kl, kl_divergence(p, interior_point(rng, n)));
    }
    auto r = max_error_check("LH vanishes against uniform", worst, 0.0, kCases);
    r.passed = r.passed && min_kl >= 0.0;
    r.detail += ", min KL " + fmt(min_kl);
    report.checks.push_back(std::move(r));
  }

  {
    CheckResult r;
    r.name = "expansion residual is third order";
    r.passed = true;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t n : {4u, 16u, 64u}) {
      for (int k = 0; k < 8; ++k) {
        const auto q = interior_point(rng, n);
        const auto dir = zero_sum_direction(rng, q);
        const auto fit = residual_order_check(q, dir);
        r.metrics.emplace_back("slope_n" + std::to_string(n) + "_" + std::to_string(k), fit.slope);
        lo = std::min(lo, fit.slope);
        hi = std::max(hi, fit.slope);
        r.passed = r.passed && fit.slope >= 2.7 && fit.slope <= 3.3;
      }
    }
    r.detail = "slopes in [" + fmt(lo) + ", " + fmt(hi) + "], required [2.7, 3.3]";
    report.checks.push_back(std::move(r));
  }

  {
    double worst_gap = 0.0;
    double worst_uniform = 0.0;
    std::uniform_int_distribution<std::size_t> levels_dist(2, 32);
    std::uniform_int_distribution<std::size_t> count_dist(0, 5);
    constexpr std::size_t kCases = 100;
    for (std::size_t c = 0; c < kCases; ++c) {
      const std::size_t n = levels_dist(rng);
      const bool equal_counts = c % 2 == 1;
      const std::size_t m = 1 + count_dist(rng);
      std::vector<double> w;
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t cnt = equal_counts ? m : count_dist(rng);
        if (j + 1 == n) cnt = std::max<std::size_t>(cnt, 1);
        const double level = j + 1 == n ? 1.0 : (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        w.insert(w.end(), cnt, level);
      }
      const auto p0 = DiscreteDistribution::from_weights(w);
      const auto conn = connection_check(p0, n);
      worst_gap = std::max(worst_gap, std::abs(conn.gap));
      if (equal_counts) {
        const auto g = dist_time_grouped(p0, n);
        const double rhs = std::log2(static_cast<double>(p0.size())) - std::log2(static_cast<double>(n)) + entropy(g.p1);
        worst_uniform = std::max(worst_uniform, std::abs(conn.lhs - rhs));
      }
    }
    report.checks.push_back(max_error_check("grouped entropy identity on level-constant input", worst_gap, 1e-9, kCases));
    report.checks.push_back(
        max_error_check("grouped entropy identity with uniform level occupancy", worst_uniform, 1e-9, kCases / 2));
  }

  {
    double worst_h = 0.0;
    double worst_d = 0.0;
    double worst_c = 0.0;
    std::uniform_int_distribution<std::size_t> dim(1, 24);
    constexpr std::size_t kCases = 500;
    for (std::size_t i = 0; i < kCases; ++i) {
      const ProductDistribution2D pd{random_simplex(rng, dim(rng)), random_simplex(rng, dim(rng))};
      double direct_h = 0.0;
      for (std::size_t a = 0; a < pd.p1.size(); ++a) {
        for (std::size_t b = 0; b < pd.p2.size(); ++b) {
          const double v = pd.joint(a, b);
          if (v > 0.0) direct_h -= v * std::log2(v);
        }
      }
      worst_h = std::max(worst_h, std::abs(direct_h - entropy_2d(pd)));
      worst_d = std::max(worst_d, std::abs(disequilibrium_2d_factored(pd) - disequilibrium_2d_direct(pd)));
      worst_c = std::max(worst_c, std::abs(complexity_2d_factored(pd) - complexity_2d(pd)));
    }
    report.checks.push_back(max_error_check("2-D entropy is additive", worst_h, 1e-12, kCases));
    report.checks.push_back(max_error_check("2-D disequilibrium factored form", worst_d, 1e-12, kCases));
    report.checks.push_back(max_error_check("2-D complexity factored form", worst_c, 1e-10, kCases));
  }

  {
    const double h = gaussian_entropy(GaussianParams(0.0, 1.0));
    CheckResult r;
    r.name = "Gaussian entropy at unit sigma";
    r.passed = std::abs(h - 2.047096) <= 1e-5;
    r.detail = "H = " + fmt(h) + " bits";
    r.metrics.emplace_back("entropy_bits", h);
    report.checks.push_back(std::move(r));
  }

  {
    boost::math::quadrature::sinh_sinh<double> integrator;
    double worst_d = 0.0;
    double worst_lh = 0.0;
    const GaussianParams q(0.0, 1.0);
    for (double dmu : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      for (double ratio : {0.5, 0.7, 0.9, 1.1, 1.3}) {
        const GaussianParams p(dmu, ratio);
        const double integral = integrator.integrate(
            [&](double x) { return std::exp(2.0 * log_normal_pdf(x, p) - log_normal_pdf(x, q)); });
        const double want = integral - 1.0;
        const double got = hooks.gaussian_disequilibrium(p, q);
        worst_d = std::max(worst_d, std::abs(got - want) / std::max(std::abs(want), 1e-300));

        const double cross = integrator.integrate([&](double x) {
          return -std::exp(log_normal_pdf(x, p)) * log_normal_pdf(x, q);
        });
        const double hq = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * q.sigma * q.sigma);
        worst_lh = std::max(worst_lh, std::abs(gaussian_lh(p, q) - (cross - hq)));
      }
    }
    report.checks.push_back(max_error_check("Gaussian disequilibrium matches quadrature (relative)", worst_d, 1e-6, 25));
    report.checks.push_back(max_error_check("Gaussian LH matches quadrature", worst_lh, 1e-8, 25));
  }

  return report;
}

}  // namespace entrosig::cli
