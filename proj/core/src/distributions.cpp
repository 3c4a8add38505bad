#include "entrosig/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "entrosig/errors.hpp"

namespace entrosig {

SignalBuffer::SignalBuffer(std::vector<double> s, std::uint32_t rate) : samples(std::move(s)), sample_rate(rate) {
  if (sample_rate == 0) {
    throw std::invalid_argument("sample_rate must be positive");
  }
}

double SignalBuffer::duration() const noexcept {
  return sample_rate == 0 ? 0.0 : static_cast<double>(samples.size()) / sample_rate;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("distribution must have at least one entry");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("distribution entries must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("distribution sums to " + std::to_string(sum) + ", expected 1");
  }
}

DiscreteDistribution DiscreteDistribution::from_weights(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("cannot normalize an empty weight vector");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite and non-negative");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw DegenerateDistribution("weights carry no mass");
  }
  std::vector<double> probs(weights.size());
  std::transform(weights.begin(), weights.end(), probs.begin(), [total](double w) { return w / total; });
  return DiscreteDistribution(std::move(probs));
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform distribution needs n >= 1");
  }
  return DiscreteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteDistribution DiscreteDistribution::delta(std::size_t n, std::size_t index) {
  if (index >= n) {
    throw std::invalid_argument("delta index out of range");
  }
  std::vector<double> probs(n, 0.0);
  probs[index] = 1.0;
  return DiscreteDistribution(std::move(probs));
}

double DiscreteDistribution::max() const noexcept { return *std::max_element(probs_.begin(), probs_.end()); }

bool DiscreteDistribution::is_uniform() const noexcept {
  return std::all_of(probs_.begin(), probs_.end(), [first = probs_.front()](double p) { return p == first; });
}

std::vector<Frame> frame_signal(const SignalBuffer& buf, std::size_t window, std::size_t hop, TailPolicy tail) {
  if (buf.samples.empty()) {
    throw std::invalid_argument("cannot frame an empty buffer");
  }
  if (window == 0 || hop == 0) {
    throw std::invalid_argument("window and hop must be positive");
  }
  if (window > buf.size()) {
    throw std::invalid_argument("window (" + std::to_string(window) + ") exceeds buffer length (" +
                                std::to_string(buf.size()) + ")");
  }

  std::size_t count = (buf.size() - window) / hop + 1;
  if (tail == TailPolicy::zero_pad) {
    const std::size_t last_covered = (count - 1) * hop + window;
    if (last_covered < buf.size()) {
      count += (buf.size() - last_covered + hop - 1) / hop;
    }
  }

  std::vector<Frame> frames;
  frames.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = k * hop;
    const std::size_t end = std::min(start + window, buf.size());
    Frame f;
    f.samples.assign(window, 0.0);
    std::copy(buf.samples.begin() + static_cast<std::ptrdiff_t>(start),
              buf.samples.begin() + static_cast<std::ptrdiff_t>(end), f.samples.begin());
    f.start_index = start;
    f.start_time = static_cast<double>(start) / buf.sample_rate;
    frames.push_back(std::move(f));
  }
  return frames;
}

namespace {

std::vector<double> apply_transform(std::span<const double> x, AmplitudeTransform t) {
  std::vector<double> out(x.size());
  switch (t) {
    case AmplitudeTransform::absolute:
      std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::abs(v); });
      break;
    case AmplitudeTransform::squared:
      std::transform(x.begin(), x.end(), out.begin(), [](double v) { return v * v; });
      break;
    case AmplitudeTransform::raw_shifted: {
      const double lo = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
      std::transform(x.begin(), x.end(), out.begin(), [lo](double v) { return v - lo; });
      break;
    }
  }
  return out;
}

}  // namespace

std::size_t level_index(double value, double top, std::size_t n_levels) noexcept {
  if (!(top > 0.0) || value >= top) {
    return top > 0.0 ? n_levels - 1 : 0;
  }
  const double n = static_cast<double>(n_levels);
  auto idx = static_cast<std::size_t>(std::floor(value * n / top));
  idx = std::min(idx, n_levels - 1);
  // Snap to the edge grid e_j = j * top / n so that ties resolve upward
  // regardless of rounding in the division above.
  while (idx + 1 < n_levels && value >= static_cast<double>(idx + 1) * top / n) {
    ++idx;
  }
  while (idx > 0 && value < static_cast<double>(idx) * top / n) {
    --idx;
  }
  return idx;
}

std::vector<std::size_t> histogram_counts(std::span<const double> samples, const HistogramConfig& cfg) {
  if (cfg.n_levels < 2) {
    throw std::invalid_argument("histogram needs at least 2 levels");
  }
  if (samples.empty()) {
    throw std::invalid_argument("cannot histogram an empty frame");
  }
  const std::vector<double> x = apply_transform(samples, cfg.amplitude_transform);
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;

  std::vector<std::size_t> counts(cfg.n_levels, 0);
  if (range <= 0.0) {
    counts[0] = x.size();
    return counts;
  }
  for (double v : x) {
    ++counts[level_index(v - lo, range, cfg.n_levels)];
  }
  return counts;
}

DiscreteDistribution dist_time_histogram(const Frame& frame, const HistogramConfig& cfg) {
  const auto counts = histogram_counts(frame.samples, cfg);
  const double w = static_cast<double>(frame.size());
  std::vector<double> probs(counts.size());
  std::transform(counts.begin(), counts.end(), probs.begin(),
                 [w](std::size_t c) { return static_cast<double>(c) / w; });
  return DiscreteDistribution(std::move(probs));
}

DiscreteDistribution dist_time_samples(const Frame& frame, AmplitudeTransform transform) {
  if (frame.samples.empty()) {
    throw std::invalid_argument("cannot build p0 from an empty frame");
  }
  const auto weights = apply_transform(frame.samples, transform);
  return DiscreteDistribution::from_weights(weights);
}

GroupedDistributions dist_time_grouped(const DiscreteDistribution& p0, std::size_t n_levels) {
  if (n_levels < 2) {
    throw std::invalid_argument("grouping needs at least 2 levels");
  }
  const double top = p0.max();
  std::vector<double> mass(n_levels, 0.0);
  std::vector<std::size_t> counts(n_levels, 0);
  for (double p : p0.probs()) {
    const std::size_t j = level_index(p, top, n_levels);
    mass[j] += p;
    ++counts[j];
  }
  const double n = static_cast<double>(p0.size());
  std::vector<double> share(n_levels);
  std::transform(counts.begin(), counts.end(), share.begin(),
                 [n](std::size_t c) { return static_cast<double>(c) / n; });
  return {DiscreteDistribution::from_weights(mass), DiscreteDistribution(std::move(share)), std::move(counts)};
}

DiscreteDistribution dist_spectral(const Frame& frame, const SpectralConfig& cfg) {
  const auto power = power_spectrum(frame.samples, cfg);
  try {
    return DiscreteDistribution::from_weights(power);
  } catch (const DegenerateDistribution&) {
    throw DegenerateDistribution("frame has zero spectral power");
  }
}

}  // namespace entrosig
