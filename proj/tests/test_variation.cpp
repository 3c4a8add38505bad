#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entrosig/criteria.hpp"
#include "entrosig/variation.hpp"
#include "oracles/oracles.hpp"

using namespace entrosig;

namespace {

DiscreteDistribution perturbed(const DiscreteDistribution& q, const std::vector<double>& d, double eps) {
  std::vector<double> p(q.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = q[i] + eps * d[i];
  return DiscreteDistribution(p);
}

DiscreteDistribution white_noise_p0(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 2000.0);
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return dist_time_samples(Frame{x, 0, 0.0});
}

}  // namespace

TEST(EntropyVariation, Examples) {
  const DiscreteDistribution q({0.6, 0.3, 0.1});
  EXPECT_EQ(entropy_variation(q, q), 0.0);
  EXPECT_NEAR(entropy_variation(DiscreteDistribution::uniform(3), q), std::log2(3.0) - entropy(q), 1e-15);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto a = oracle::random_simplex(rng, 10);
    const auto b = oracle::random_simplex(rng, 10);
    const double v = entropy_variation(DiscreteDistribution(a), DiscreteDistribution(b));
    EXPECT_NEAR(v, static_cast<double>(oracle::entropy(a) - oracle::entropy(b)), 1e-12);
    EXPECT_EQ(v, -entropy_variation(DiscreteDistribution(b), DiscreteDistribution(a)));
  }
}

TEST(ExpansionResidual, DecompositionTerms) {
  const DiscreteDistribution q({0.4, 0.35, 0.25});
  const auto same = lemma1_decomposition(q, q);
  EXPECT_EQ(same.lh_term, 0.0);
  EXPECT_EQ(same.d_term, 0.0);
  EXPECT_NEAR(same.residual, 0.0, 1e-15);

  const DiscreteDistribution p({0.45, 0.3, 0.25});
  const auto t = lemma1_decomposition(p, q);
  EXPECT_DOUBLE_EQ(t.lh_term, lh(p, q));
  EXPECT_DOUBLE_EQ(t.d_term, disequilibrium(p, q) * 3.0 / (2.0 * std::numbers::ln2));
  EXPECT_NEAR(t.residual, entropy_variation(p, q) - (t.lh_term - t.d_term), 1e-15);
  EXPECT_LT(std::abs(t.residual), std::abs(t.d_term));
}

TEST(ExpansionResidual, LhTermVanishesForUniformReference) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 30);
    const DiscreteDistribution p(oracle::random_simplex(rng, n));
    EXPECT_EQ(lemma1_decomposition(p, DiscreteDistribution::uniform(n)).lh_term, 0.0);
  }
}

TEST(ExpansionResidual, ResidualShrinksEightfoldPerHalving) {
  const DiscreteDistribution q({0.1, 0.2, 0.3, 0.4});
  const std::vector<double> d = {0.05, -0.02, 0.01, -0.04};
  const auto rep = residual_order_check(q, d, std::vector<double>{0.4, 0.2, 0.1, 0.05, 0.025});
  for (std::size_t i = 1; i < rep.residuals.size(); ++i) {
    const double ratio = rep.residuals[i - 1] / rep.residuals[i];
    EXPECT_GT(ratio, 6.5) << "step " << i;
    EXPECT_LT(ratio, 9.5) << "step " << i;
  }
  EXPECT_NEAR(rep.slope, 3.0, 0.2);
}

TEST(ExpansionResidual, ResidualAtZeroScale) {
  const DiscreteDistribution q = DiscreteDistribution::uniform(4);
  const std::vector<double> d = {0.25, -0.25, 0.25, -0.25};
  EXPECT_EQ(lemma1_decomposition(perturbed(q, d, 0.0), q).residual, 0.0);
  const double r = lemma1_decomposition(perturbed(q, d, 0.01), q).residual;
  EXPECT_GT(std::abs(r), 0.0);
  EXPECT_LT(std::abs(r), 1e-6);
}

// For a perturbation whose cubic moment sum d_i^3 / q_i^2 vanishes (an
// alternating direction around the uniform point) the leading residual term
// is quartic, so the fitted exponent is 4.
TEST(ExpansionResidual, SymmetricDirectionHasQuarticResidual) {
  const DiscreteDistribution q = DiscreteDistribution::uniform(8);
  std::vector<double> d(8);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (i % 2 == 0 ? 1.0 : -1.0) / 8.0;
  const auto rep = residual_order_check(q, d);
  EXPECT_NEAR(rep.slope, 4.0, 0.1);
  for (std::size_t i = 1; i < rep.residuals.size(); ++i) {
    EXPECT_NEAR(rep.residuals[i - 1] / rep.residuals[i], 16.0, 1.0);
  }
}

TEST(ExpansionResidual, SkewedDirectionAroundUniformIsCubic) {
  const DiscreteDistribution q = DiscreteDistribution::uniform(8);
  const std::vector<double> d = {0.3, -0.05, -0.05, -0.05, -0.05, -0.05, -0.05, 0.0};
  EXPECT_NEAR(residual_order_check(q, d).slope, 3.0, 0.3);
}

TEST(ExpansionResidual, OrderCheckErrors) {
  const DiscreteDistribution q({0.5, 0.5});
  EXPECT_THROW(residual_order_check(q, std::vector<double>{0.1, 0.1}), std::invalid_argument);
  EXPECT_THROW(residual_order_check(q, std::vector<double>{60.0, -60.0}), std::invalid_argument);
  EXPECT_THROW(residual_order_check(q, std::vector<double>{0.1, -0.1, 0.0}), std::invalid_argument);
}

TEST(Connection, PiecewiseConstantInputIsExact) {
  // Three levels of width 1/3 of the maximum; every entry sits at a level's
  // centre or at the maximum, so p0 is constant inside each level.
  std::vector<double> w = {1.0 / 6, 1.0 / 6, 0.5, 0.5, 0.5, 1.0, 1.0};
  const auto p0 = DiscreteDistribution::from_weights(w);
  const auto rep = connection_check(p0, 3);
  EXPECT_NEAR(rep.gap, 0.0, 1e-12);
  EXPECT_NEAR(rep.lhs, entropy(p0), 0.0);
}

TEST(Connection, UniformOccupancyReproducesClosedForm) {
  // Two entries per level out of n = 4 levels, N = 8.
  std::vector<double> w;
  for (int j = 0; j < 3; ++j) w.insert(w.end(), 2, (j + 0.5) / 4.0);
  w.insert(w.end(), 2, 1.0);
  const auto p0 = DiscreteDistribution::from_weights(w);
  const auto g = dist_time_grouped(p0, 4);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(g.pt[j], 0.25);
  EXPECT_NEAR(entropy(p0), std::log2(8.0) - std::log2(4.0) + entropy(g.p1), 1e-12);
  EXPECT_NEAR(connection_check(p0, 4).gap, 0.0, 1e-12);
}

TEST(Connection, EachSampleOwnLevel) {
  // Ratios to the maximum 1/8, 3/8, 5/8, 1: one entry per level of width 1/4.
  const auto p0 = DiscreteDistribution::from_weights(std::vector<double>{1, 3, 5, 8});
  const auto rep = connection_check(p0, 4);
  const auto g = dist_time_grouped(p0, 4);
  EXPECT_EQ(g.counts, (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_NEAR(rep.gap, 0.0, 1e-12);
}

TEST(Connection, WhiteNoiseGapIsSmall) {
  const auto rep = connection_check(white_noise_p0(2048, 3), 64);
  EXPECT_LT(std::abs(rep.gap), 0.01);
}

TEST(GroupingStability, WhiteNoiseSpread) {
  const auto p0 = white_noise_p0(2048, 4);
  const std::vector<std::size_t> n = {32, 64, 128};
  const auto st = grouping_stability(p0, n);
  ASSERT_EQ(st.rows.size(), 3u);
  EXPECT_LT(st.spread, 0.5);
  for (const auto& row : st.rows) EXPECT_GE(row.kl, 0.0);
}

TEST(GroupingStability, ConstantInputAndBoundary) {
  const auto st = grouping_stability(DiscreteDistribution::uniform(16), std::vector<std::size_t>{2, 8, 16});
  for (const auto& row : st.rows) EXPECT_EQ(row.kl, st.rows.front().kl);
  EXPECT_EQ(st.spread, 0.0);
}

TEST(Gaussianity, Diagnostics) {
  const double delta = gaussianity_check(DiscreteDistribution::delta(64, 10));
  EXPECT_NEAR(delta, 0.5, 1e-12);

  const auto noise = gaussianity_check(dist_time_grouped(white_noise_p0(1'000'000, 5), 64).p1);

  std::vector<double> tone(1'000'000);
  for (std::size_t i = 0; i < tone.size(); ++i) tone[i] = std::sin(2.0 * std::numbers::pi * 1000.0 * i / 48000.0 + 0.1);
  const auto sine = gaussianity_check(dist_time_grouped(dist_time_samples(Frame{tone, 0, 0.0}), 64).p1);

  RecordProperty("white_noise_ks", std::to_string(noise));
  RecordProperty("sinusoid_ks", std::to_string(sine));
  EXPECT_LT(noise, 0.1);
  EXPECT_GT(sine, noise);
  EXPECT_LT(sine, delta);
}
