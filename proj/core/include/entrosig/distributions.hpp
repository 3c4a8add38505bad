#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace entrosig {

/// Contiguous real samples with their sampling rate. Amplitudes are kept in
/// the native PCM scale of the source (16-bit audio spans [-32768, 32767]).
struct SignalBuffer {
  std::vector<double> samples;
  std::uint32_t sample_rate = 0;

  SignalBuffer() = default;
  SignalBuffer(std::vector<double> s, std::uint32_t rate);

  [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
  [[nodiscard]] double duration() const noexcept;
};

/// One analysis window of W samples cut from a parent buffer.
struct Frame {
  std::vector<double> samples;
  std::size_t start_index = 0;
  double start_time = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
};

/// Finite probability vector. Construction validates non-negativity and
/// normalization (|sum - 1| <= kSumTolerance); instances are immutable.
class DiscreteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// Takes probabilities as given; throws std::invalid_argument if they are
  /// not a distribution.
  explicit DiscreteDistribution(std::vector<double> probs);

  /// Normalizes non-negative weights. Throws DegenerateDistribution when the
  /// weights sum to zero.
  static DiscreteDistribution from_weights(std::span<const double> weights);
  static DiscreteDistribution uniform(std::size_t n);
  static DiscreteDistribution delta(std::size_t n, std::size_t index);

  [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
  [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return probs_[i]; }
  [[nodiscard]] double max() const noexcept;
  [[nodiscard]] bool is_uniform() const noexcept;

  bool operator==(const DiscreteDistribution&) const = default;

 private:
  std::vector<double> probs_;
};

enum class AmplitudeTransform {
  absolute,     ///< g(x) = |x|
  squared,      ///< g(x) = x^2
  raw_shifted,  ///< g(x) = x - min(x)
};

struct HistogramConfig {
  std::size_t n_levels = 64;
  AmplitudeTransform amplitude_transform = AmplitudeTransform::raw_shifted;
};

enum class Sidedness { one_sided, two_sided };
enum class WindowFunction { rectangular, hann };

struct SpectralConfig {
  std::size_t n_fft = 2048;
  Sidedness sidedness = Sidedness::one_sided;
  WindowFunction window_function = WindowFunction::rectangular;
};

enum class TailPolicy { drop, zero_pad };

/// Cuts `buf` into frames of `window` samples starting every `hop` samples.
/// With TailPolicy::drop only complete frames are produced; with zero_pad the
/// last partial frame is padded with zeros.
std::vector<Frame> frame_signal(const SignalBuffer& buf, std::size_t window, std::size_t hop,
                                TailPolicy tail = TailPolicy::drop);

/// Per-level occupancy counts over n equal-width levels spanning
/// [min, max] of the (transformed) samples. Interior edges belong to the
/// upper level, the top edge to the last level. A constant frame puts every
/// sample in the first level.
std::vector<std::size_t> histogram_counts(std::span<const double> samples, const HistogramConfig& cfg);

/// p^t: relative population of each amplitude level.
DiscreteDistribution dist_time_histogram(const Frame& frame, const HistogramConfig& cfg);

/// p^0: each sample's transformed amplitude over the frame total.
DiscreteDistribution dist_time_samples(const Frame& frame,
                                       AmplitudeTransform transform = AmplitudeTransform::absolute);

struct GroupedDistributions {
  DiscreteDistribution p1;  ///< mass of p^0 collected per level
  DiscreteDistribution pt;  ///< share of indices per level
  std::vector<std::size_t> counts;
};

/// Groups the entries of p^0 into n levels of width max(p^0)/n. Boundary
/// values go to the upper level; the maximum goes to level n.
GroupedDistributions dist_time_grouped(const DiscreteDistribution& p0, std::size_t n_levels);

/// Level index in [0, n) of `value` on the grid of width top/n.
std::size_t level_index(double value, double top, std::size_t n_levels) noexcept;

/// Periodogram s(f_i) = |X(f_i)|^2 / n_fft of the (optionally windowed and
/// zero-padded) frame. One-sided output holds bins 0..n_fft/2.
std::vector<double> power_spectrum(std::span<const double> samples, const SpectralConfig& cfg);

/// p^s: normalized periodogram. Throws DegenerateDistribution on zero power.
DiscreteDistribution dist_spectral(const Frame& frame, const SpectralConfig& cfg);

/// Number of bins produced for a given configuration.
std::size_t spectral_bin_count(const SpectralConfig& cfg) noexcept;

}  // namespace entrosig
