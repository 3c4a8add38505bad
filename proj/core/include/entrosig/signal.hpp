#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "entrosig/criteria.hpp"
#include "entrosig/distributions.hpp"

namespace entrosig {

/// Additive white Gaussian noise: zero mean, standard deviation sigma in
/// amplitude units, reproducible from seed.
struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

SignalBuffer generate_white_noise(const NoiseSpec& spec, std::size_t n_samples, std::uint32_t sample_rate);

/// Half-open time interval [start_s, end_s).
struct Interval {
  double start_s = 0.0;
  double end_s = 0.0;
};

/// Sample range [first, last) covered by an interval at the given rate.
std::pair<std::size_t, std::size_t> interval_samples(const Interval& iv, std::uint32_t sample_rate);

enum class SynthKind { tone_burst, chirp, multi_tone };

struct SynthSpec {
  SynthKind kind = SynthKind::tone_burst;
  double carrier_hz = 1000.0;
  double amplitude = 1000.0;
  std::vector<Interval> bursts;
  double chirp_end_hz = 4000.0;  ///< chirp: frequency reached at the end of each burst
  std::size_t n_tones = 3;       ///< multi_tone: harmonics 1..n of the carrier
};

/// Clean test signal: zero outside the bursts. Tones use absolute time, so a
/// carrier that is a multiple of rate / W is bin-aligned in every frame.
/// Multi-tone splits the power of `amplitude` evenly across its harmonics.
SignalBuffer synthesize(const SynthSpec& spec, std::uint32_t sample_rate, double duration_s);

/// Amplitude of a sinusoid whose power is snr_db above noise of std sigma.
double tone_amplitude_for_snr(double snr_db, double sigma);

struct MixResult {
  SignalBuffer mixture;
  double snr_db = 0.0;         ///< measured over the active intervals
  bool snr_unbounded = false;  ///< noise power is zero there
};

/// Samplewise sum. SNR compares signal and noise power over `active` (the
/// whole buffer when empty).
MixResult mix(const SignalBuffer& signal, const SignalBuffer& noise, std::span<const Interval> active = {});

struct NoiseEstimate {
  double mean = 0.0;
  double sigma = 0.0;
  std::size_t n_samples = 0;

  [[nodiscard]] bool degenerate() const noexcept { return !(sigma > 0.0); }
  /// Throws std::invalid_argument when degenerate.
  [[nodiscard]] GaussianParams params() const { return {mean, sigma}; }
};

/// Sample mean and standard deviation over the calibration interval.
NoiseEstimate estimate_noise_sigma(const SignalBuffer& buf, const Interval& calibration);

}  // namespace entrosig
