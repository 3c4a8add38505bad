#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "entrosig/distributions.hpp"

namespace entrosig {
namespace {

// fftw_plan_* is not thread-safe; plan creation and destruction are
// serialized, execution through the new-array interface is reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

/// r2c transform of one fixed size with its own aligned scratch buffers.
class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    if (!in_ || !out_) {
      throw std::bad_alloc();
    }
    std::lock_guard lock(planner_mutex());
    plan_.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE));
    if (!plan_) {
      throw std::runtime_error("fftw failed to create a plan");
    }
  }

  double* input() noexcept { return in_.get(); }
  const fftw_complex* output() const noexcept { return out_.get(); }
  void execute() noexcept { fftw_execute_dft_r2c(plan_.get(), in_.get(), out_.get()); }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan_;
};

RealFft& fft_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<RealFft>> cache;
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<RealFft>(n);
  }
  return *slot;
}

}  // namespace

std::size_t spectral_bin_count(const SpectralConfig& cfg) noexcept {
  return cfg.sidedness == Sidedness::one_sided ? cfg.n_fft / 2 + 1 : cfg.n_fft;
}

std::vector<double> power_spectrum(std::span<const double> samples, const SpectralConfig& cfg) {
  if (cfg.n_fft < 2) {
    throw std::invalid_argument("n_fft must be at least 2");
  }
  if (samples.size() > cfg.n_fft) {
    throw std::invalid_argument("frame is longer than n_fft");
  }
  const std::size_t n = cfg.n_fft;
  RealFft& fft = fft_for(n);
  double* in = fft.input();
  for (std::size_t t = 0; t < n; ++t) {
    double v = t < samples.size() ? samples[t] : 0.0;
    if (cfg.window_function == WindowFunction::hann) {
      v *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n)));
    }
    in[t] = v;
  }
  fft.execute();

  const fftw_complex* X = fft.output();
  const double scale = 1.0 / static_cast<double>(n);
  const std::size_t half = n / 2 + 1;
  auto power_at = [&](std::size_t k) { return (X[k][0] * X[k][0] + X[k][1] * X[k][1]) * scale; };

  std::vector<double> s(spectral_bin_count(cfg));
  for (std::size_t k = 0; k < half; ++k) {
    s[k] = power_at(k);
  }
  if (cfg.sidedness == Sidedness::two_sided) {
    // Real input: |X(n-k)| == |X(k)|.
    for (std::size_t k = half; k < n; ++k) {
      s[k] = s[n - k];
    }
  }
  return s;
}

}  // namespace entrosig
