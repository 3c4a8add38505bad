#include "entrosig/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace entrosig {

SignalBuffer generate_white_noise(const NoiseSpec& spec, std::size_t n_samples, std::uint32_t sample_rate) {
  if (spec.sigma < 0.0 || !std::isfinite(spec.sigma)) {
    throw std::invalid_argument("noise sigma must be finite and non-negative");
  }
  std::vector<double> x(n_samples, 0.0);
  if (spec.sigma > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, spec.sigma);
    for (double& v : x) {
      v = normal(rng);
    }
  }
  return SignalBuffer(std::move(x), sample_rate);
}

std::pair<std::size_t, std::size_t> interval_samples(const Interval& iv, std::uint32_t sample_rate) {
  const auto first = static_cast<std::size_t>(std::llround(std::max(iv.start_s, 0.0) * sample_rate));
  const auto last = static_cast<std::size_t>(std::llround(std::max(iv.end_s, 0.0) * sample_rate));
  return {first, std::max(first, last)};
}

SignalBuffer synthesize(const SynthSpec& spec, std::uint32_t sample_rate, double duration_s) {
  if (sample_rate == 0) {
    throw std::invalid_argument("sample_rate must be positive");
  }
  if (!(duration_s > 0.0)) {
    throw std::invalid_argument("duration must be positive");
  }
  if (spec.kind == SynthKind::multi_tone && spec.n_tones == 0) {
    throw std::invalid_argument("multi_tone needs at least one tone");
  }
  std::vector<Interval> bursts = spec.bursts;
  std::sort(bursts.begin(), bursts.end(), [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
  for (std::size_t i = 0; i < bursts.size(); ++i) {
    const auto& b = bursts[i];
    if (b.start_s < 0.0 || b.end_s > duration_s + 1e-12 || b.end_s <= b.start_s) {
      throw std::invalid_argument("burst interval outside the signal duration");
    }
    if (i > 0 && b.start_s < bursts[i - 1].end_s) {
      throw std::invalid_argument("burst intervals overlap");
    }
  }

  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  std::vector<double> x(n, 0.0);
  const double fs = sample_rate;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  for (const auto& b : bursts) {
    auto [first, last] = interval_samples(b, sample_rate);
    last = std::min(last, n);
    const double span_s = b.end_s - b.start_s;
    for (std::size_t i = first; i < last; ++i) {
      const double t = static_cast<double>(i) / fs;
      switch (spec.kind) {
        case SynthKind::tone_burst:
          x[i] = spec.amplitude * std::sin(two_pi * spec.carrier_hz * t);
          break;
        case SynthKind::chirp: {
          const double tau = static_cast<double>(i - first) / fs;
          const double rate = (spec.chirp_end_hz - spec.carrier_hz) / span_s;
          x[i] = spec.amplitude * std::sin(two_pi * (spec.carrier_hz * tau + 0.5 * rate * tau * tau));
          break;
        }
        case SynthKind::multi_tone: {
          const double a = spec.amplitude / std::sqrt(static_cast<double>(spec.n_tones));
          double v = 0.0;
          for (std::size_t k = 1; k <= spec.n_tones; ++k) {
            v += a * std::sin(two_pi * spec.carrier_hz * static_cast<double>(k) * t);
          }
          x[i] = v;
          break;
        }
      }
    }
  }
  return SignalBuffer(std::move(x), sample_rate);
}

double tone_amplitude_for_snr(double snr_db, double sigma) {
  return std::sqrt(2.0 * sigma * sigma * std::pow(10.0, snr_db / 10.0));
}

MixResult mix(const SignalBuffer& signal, const SignalBuffer& noise, std::span<const Interval> active) {
  if (signal.size() != noise.size() || signal.sample_rate != noise.sample_rate) {
    throw std::invalid_argument("signal and noise must share length and sample rate");
  }
  std::vector<double> sum(signal.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] = signal.samples[i] + noise.samples[i];
  }

  double ps = 0.0;
  double pn = 0.0;
  std::size_t count = 0;
  auto accumulate = [&](std::size_t first, std::size_t last) {
    last = std::min(last, signal.size());
    for (std::size_t i = first; i < last; ++i) {
      ps += signal.samples[i] * signal.samples[i];
      pn += noise.samples[i] * noise.samples[i];
      ++count;
    }
  };
  if (active.empty()) {
    accumulate(0, signal.size());
  } else {
    for (const auto& iv : active) {
      const auto [first, last] = interval_samples(iv, signal.sample_rate);
      accumulate(first, last);
    }
  }

  MixResult r{SignalBuffer(std::move(sum), signal.sample_rate), 0.0, false};
  if (pn <= 0.0) {
    r.snr_unbounded = true;
    r.snr_db = std::numeric_limits<double>::infinity();
  } else if (ps <= 0.0) {
    r.snr_db = -std::numeric_limits<double>::infinity();
  } else {
    r.snr_db = 10.0 * std::log10(ps / pn);
  }
  return r;
}

NoiseEstimate estimate_noise_sigma(const SignalBuffer& buf, const Interval& calibration) {
  auto [first, last] = interval_samples(calibration, buf.sample_rate);
  last = std::min(last, buf.size());
  if (last <= first + 1) {
    throw std::invalid_argument("calibration interval holds fewer than two samples");
  }
  NoiseEstimate est;
  est.n_samples = last - first;
  const double n = static_cast<double>(est.n_samples);
  double mean = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    mean += buf.samples[i];
  }
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double d = buf.samples[i] - mean;
    ss += d * d;
  }
  est.mean = mean;
  est.sigma = std::sqrt(ss / (n - 1.0));
  return est;
}

}  // namespace entrosig
