#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entrosig/criteria.hpp"
#include "entrosig/distributions.hpp"
#include "entrosig/signal.hpp"

namespace entrosig {

/// Per-frame information criteria the pipeline can track.
enum class Criterion {
  h_t,    ///< normalized entropy of the amplitude histogram p^t
  h_0,    ///< normalized entropy of the sample distribution p^0
  h_1,    ///< normalized entropy of the grouped distribution p^1
  lh,     ///< Gaussian LH of the frame against the noise estimate
  h_s,    ///< normalized spectral entropy of p^s
  d_sq,   ///< squared distance of p^s to uniform
  c_sq,   ///< normalized H(p^s) * d_sq(p^s)
  jsd,    ///< JSD(p^s || uniform)
  c_jsd,  ///< normalized H(p^s) * JSD(p^s || uniform)
  sid,    ///< SID(uniform, p^s)
  c_gen,  ///< H (log2 N - H) of p^s, bits squared
};

enum class Polarity { rises_on_signal, falls_on_signal };

struct CriterionInfo {
  Criterion id;
  std::string_view name;
  Polarity polarity;
  std::string_view description;
};

std::span<const CriterionInfo> criterion_registry() noexcept;
const CriterionInfo& criterion_info(Criterion c) noexcept;
std::optional<Criterion> parse_criterion(std::string_view name) noexcept;

struct AnalysisConfig {
  std::size_t window = 2048;
  std::size_t hop = 2048;
  TailPolicy tail = TailPolicy::drop;
  HistogramConfig histogram{};  ///< p^t levels
  AmplitudeTransform sample_transform = AmplitudeTransform::absolute;  ///< p^0
  std::size_t group_levels = 64;                                       ///< p^1 levels
  SpectralConfig spectral{};
  ZeroPolicy spectral_zero_policy = ZeroPolicy::epsilon_floor;
  /// Reference noise for the LH criterion; required when lh is requested.
  std::optional<GaussianParams> noise;
};

struct CriterionTrack {
  Criterion id = Criterion::c_sq;
  std::vector<double> values;
  std::vector<double> frame_times;       ///< frame start, seconds
  std::vector<std::size_t> frame_starts;  ///< frame start, samples
  std::size_t window = 0;
  std::uint32_t sample_rate = 0;
  Polarity polarity = Polarity::rises_on_signal;
  bool normalized = false;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] double frame_duration() const noexcept {
    return sample_rate == 0 ? 0.0 : static_cast<double>(window) / sample_rate;
  }
};

/// Frames the buffer once and evaluates every requested criterion per
/// frame. Frames without energy are scored as the zero-noise limit: p^0
/// and p^s fall back to the uniform distribution, p^t of a constant frame
/// is a point mass.
std::vector<CriterionTrack> run_criteria(const SignalBuffer& buf, std::span<const Criterion> criteria,
                                         const AnalysisConfig& cfg);

/// Min-max scaling to [0, 1]; a constant track becomes all zeros.
CriterionTrack normalize_track(CriterionTrack track);

struct ThresholdPolicy {
  /// Leading noise-only duration used for calibration, seconds.
  double calibration_seconds = 3.0;
  /// Explicit calibration frames [first, last); overrides the duration.
  std::optional<std::pair<std::size_t, std::size_t>> calibration_frames;
  double k_sigma = 3.0;
  std::size_t min_event_frames = 2;
};

inline constexpr std::size_t kMinCalibrationFrames = 8;

struct DetectionEvent {
  double start_s = 0.0;
  double end_s = 0.0;
  double peak_value = 0.0;
  Criterion criterion = Criterion::c_sq;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;  ///< inclusive
};

struct DetectionReport {
  Criterion criterion = Criterion::c_sq;
  std::vector<DetectionEvent> events;
  double calibration_mean = 0.0;
  double calibration_std = 0.0;
  double threshold_used = 0.0;
  std::size_t calibration_frame_count = 0;
};

/// Frame range [first, last) used for calibration under the policy.
std::pair<std::size_t, std::size_t> calibration_range(const CriterionTrack& track, const ThresholdPolicy& policy);

/// Thresholds the track at calibration mean +/- k std (sign by polarity) and
/// reports runs of at least min_event_frames supra-threshold frames.
/// Throws CalibrationError when fewer than kMinCalibrationFrames frames are
/// available for calibration.
DetectionReport detect(const CriterionTrack& track, const ThresholdPolicy& policy);

/// |mean(signal frames) - mean(noise frames)| / std(noise frames). Signal
/// frames lie entirely inside a truth interval, noise frames touch none.
/// NaN when either class is empty; +inf when noise frames are constant and
/// the means differ.
double separation_margin(const CriterionTrack& track, std::span<const Interval> truth);

/// True when some event lies at least `min_fraction` inside a truth interval,
/// measured against the event's own duration.
bool detects_truth(const DetectionReport& report, std::span<const Interval> truth, double min_fraction = 0.5);

/// Events that overlap no truth interval.
std::size_t count_false_events(const DetectionReport& report, std::span<const Interval> truth);

struct SweepSpec {
  SynthSpec signal;
  std::uint32_t sample_rate = 48000;
  double duration_s = 20.0;
  std::vector<double> sigmas;
  std::vector<Criterion> criteria;
  std::uint64_t seed = 1;
  AnalysisConfig analysis{};
  ThresholdPolicy policy{};
};

struct SweepRow {
  double sigma = 0.0;
  Criterion criterion = Criterion::c_sq;
  double snr_db = 0.0;
  bool snr_unbounded = false;
  double separation_margin = 0.0;
  bool detected = false;
};

/// For each sigma: mixes the clean signal with seeded noise (the same seed
/// at every level), runs all criteria and scores them against the bursts.
/// LH uses the noise estimated over the calibration interval.
std::vector<SweepRow> sweep(const SweepSpec& spec);

/// Builds the analysis input for one noise level of a sweep.
MixResult sweep_mixture(const SweepSpec& spec, double sigma);

/// Noise reference for LH from the calibration interval. A silent interval
/// is floored at one amplitude unit (one LSB of integer PCM).
GaussianParams lh_reference(const SignalBuffer& buf, double calibration_seconds);

/// Tone bursts at 4-6 s, 9-11 s and 14-16 s of a 20 s, 48 kHz recording;
/// the first 3 s are noise only. The 1 kHz carrier is not bin-aligned for
/// W = 2048.
SweepSpec tone_burst_benchmark(double amplitude, double sigma, std::uint64_t seed);

}  // namespace entrosig
