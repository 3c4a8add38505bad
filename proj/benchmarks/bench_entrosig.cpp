#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "entrosig/criteria.hpp"
#include "entrosig/distributions.hpp"
#include "entrosig/pipeline.hpp"
#include "entrosig/signal.hpp"

using namespace entrosig;

namespace {

std::vector<double> noise_samples(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 2000.0);
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return x;
}

void BM_DistSpectral(benchmark::State& state) {
  const auto x = noise_samples(static_cast<std::size_t>(state.range(0)));
  SpectralConfig cfg;
  cfg.n_fft = x.size();
  const Frame frame{x, 0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(dist_spectral(frame, cfg));
}
BENCHMARK(BM_DistSpectral)->Arg(512)->Arg(2048)->Arg(8192);

void BM_DistTimeGrouped(benchmark::State& state) {
  const auto x = noise_samples(2048);
  const auto p0 = dist_time_samples(Frame{x, 0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(dist_time_grouped(p0, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_DistTimeGrouped)->Arg(32)->Arg(128);

void BM_ComplexitySq(benchmark::State& state) {
  const auto x = noise_samples(2048);
  const auto p = dist_spectral(Frame{x, 0, 0.0}, SpectralConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(c_sq(p));
}
BENCHMARK(BM_ComplexitySq);

void BM_Jsd(benchmark::State& state) {
  const auto x = noise_samples(2048);
  const auto p = dist_spectral(Frame{x, 0, 0.0}, SpectralConfig{});
  const auto u = DiscreteDistribution::uniform(p.size());
  for (auto _ : state) benchmark::DoNotOptimize(jsd(p, u));
}
BENCHMARK(BM_Jsd);

void BM_RunCriteria(benchmark::State& state) {
  const auto buf = generate_white_noise({2000.0, 3}, 48000, 48000);
  const std::vector<Criterion> all = {Criterion::h_t, Criterion::h_0, Criterion::h_s, Criterion::c_sq,
                                      Criterion::sid, Criterion::jsd, Criterion::c_jsd};
  for (auto _ : state) benchmark::DoNotOptimize(run_criteria(buf, all, AnalysisConfig{}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_RunCriteria)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
