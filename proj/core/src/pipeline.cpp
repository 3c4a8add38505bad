#include "entrosig/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "entrosig/errors.hpp"

namespace entrosig {
namespace {

constexpr std::array kRegistry{
    CriterionInfo{Criterion::h_t, "h_t", Polarity::rises_on_signal, "normalized entropy of the amplitude histogram"},
    CriterionInfo{Criterion::h_0, "h_0", Polarity::falls_on_signal, "normalized entropy of the sample distribution"},
    CriterionInfo{Criterion::h_1, "h_1", Polarity::rises_on_signal, "normalized entropy of the grouped distribution"},
    CriterionInfo{Criterion::lh, "lh", Polarity::rises_on_signal, "Gaussian LH against the noise estimate"},
    CriterionInfo{Criterion::h_s, "h_s", Polarity::falls_on_signal, "normalized spectral entropy"},
    CriterionInfo{Criterion::d_sq, "d_sq", Polarity::rises_on_signal, "spectral disequilibrium"},
    CriterionInfo{Criterion::c_sq, "c_sq", Polarity::rises_on_signal, "spectral statistical complexity"},
    CriterionInfo{Criterion::jsd, "jsd", Polarity::rises_on_signal, "spectral Jensen-Shannon divergence to uniform"},
    CriterionInfo{Criterion::c_jsd, "c_jsd", Polarity::rises_on_signal, "spectral complexity with JSD disequilibrium"},
    CriterionInfo{Criterion::sid, "sid", Polarity::rises_on_signal, "spectral information divergence to uniform"},
    CriterionInfo{Criterion::c_gen, "c_gen", Polarity::rises_on_signal, "H (Hmax - H) of the spectrum"},
};

bool uses_spectrum(Criterion c) {
  switch (c) {
    case Criterion::h_t:
    case Criterion::h_0:
    case Criterion::h_1:
    case Criterion::lh:
      return false;
    default:
      return true;
  }
}

/// Lazily built distributions of one frame.
class FrameDistributions {
 public:
  FrameDistributions(const Frame& frame, const AnalysisConfig& cfg) : frame_(frame), cfg_(cfg) {}

  const DiscreteDistribution& pt() {
    if (!pt_) pt_ = dist_time_histogram(frame_, cfg_.histogram);
    return *pt_;
  }

  const DiscreteDistribution& p0() {
    if (!p0_) {
      try {
        p0_ = dist_time_samples(frame_, cfg_.sample_transform);
      } catch (const DegenerateDistribution&) {
        p0_ = DiscreteDistribution::uniform(frame_.size());
      }
    }
    return *p0_;
  }

  const DiscreteDistribution& p1() {
    if (!p1_) p1_ = dist_time_grouped(p0(), cfg_.group_levels).p1;
    return *p1_;
  }

  const DiscreteDistribution& ps() {
    if (!ps_) {
      try {
        ps_ = dist_spectral(frame_, cfg_.spectral);
      } catch (const DegenerateDistribution&) {
        ps_ = DiscreteDistribution::uniform(spectral_bin_count(cfg_.spectral));
      }
    }
    return *ps_;
  }

  const DiscreteDistribution& uniform_ps() {
    if (!u_) u_ = DiscreteDistribution::uniform(ps().size());
    return *u_;
  }

  double frame_sigma() const {
    const auto& x = frame_.samples;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size()));
  }

 private:
  const Frame& frame_;
  const AnalysisConfig& cfg_;
  std::optional<DiscreteDistribution> pt_, p0_, p1_, ps_, u_;
};

double evaluate(Criterion c, FrameDistributions& d, const AnalysisConfig& cfg) {
  switch (c) {
    case Criterion::h_t:
      return normalized_entropy(d.pt());
    case Criterion::h_0:
      return normalized_entropy(d.p0());
    case Criterion::h_1:
      return normalized_entropy(d.p1());
    case Criterion::lh: {
      const GaussianParams& noise = *cfg.noise;
      const double sigma = d.frame_sigma();
      if (!(sigma > 0.0)) {
        return -0.5;  // sigma_p -> 0 limit of the closed form at equal means
      }
      return gaussian_lh(GaussianParams(noise.mu, sigma), noise);
    }
    case Criterion::h_s:
      return normalized_entropy(d.ps());
    case Criterion::d_sq:
      return entrosig::d_sq(d.ps());
    case Criterion::c_sq:
      return entrosig::c_sq(d.ps(), EntropyScale::normalized);
    case Criterion::jsd:
      return entrosig::jsd(d.ps(), d.uniform_ps());
    case Criterion::c_jsd:
      return entrosig::c_jsd(d.ps(), EntropyScale::normalized);
    case Criterion::sid:
      return entrosig::sid(d.uniform_ps(), d.ps(), cfg.spectral_zero_policy);
    case Criterion::c_gen:
      return c_general(d.ps());
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::span<const CriterionInfo> criterion_registry() noexcept { return kRegistry; }

const CriterionInfo& criterion_info(Criterion c) noexcept { return kRegistry[static_cast<std::size_t>(c)]; }

std::optional<Criterion> parse_criterion(std::string_view name) noexcept {
  for (const auto& info : kRegistry) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

std::vector<CriterionTrack> run_criteria(const SignalBuffer& buf, std::span<const Criterion> criteria,
                                         const AnalysisConfig& cfg) {
  if (std::find(criteria.begin(), criteria.end(), Criterion::lh) != criteria.end() && !cfg.noise) {
    throw std::invalid_argument("the lh criterion needs a noise reference (AnalysisConfig::noise)");
  }
  const bool spectral = std::any_of(criteria.begin(), criteria.end(), uses_spectrum);
  if (spectral && cfg.spectral.n_fft < cfg.window) {
    throw std::invalid_argument("n_fft must be at least the window length");
  }

  const auto frames = frame_signal(buf, cfg.window, cfg.hop, cfg.tail);
  std::vector<CriterionTrack> tracks;
  tracks.reserve(criteria.size());
  for (Criterion c : criteria) {
    CriterionTrack t;
    t.id = c;
    t.polarity = criterion_info(c).polarity;
    t.window = cfg.window;
    t.sample_rate = buf.sample_rate;
    t.values.reserve(frames.size());
    t.frame_times.reserve(frames.size());
    t.frame_starts.reserve(frames.size());
    tracks.push_back(std::move(t));
  }

  for (const Frame& frame : frames) {
    FrameDistributions dists(frame, cfg);
    for (std::size_t k = 0; k < criteria.size(); ++k) {
      auto& t = tracks[k];
      t.values.push_back(evaluate(criteria[k], dists, cfg));
      t.frame_times.push_back(frame.start_time);
      t.frame_starts.push_back(frame.start_index);
    }
  }
  return tracks;
}

CriterionTrack normalize_track(CriterionTrack track) {
  if (track.values.empty()) {
    track.normalized = true;
    return track;
  }
  const auto [lo_it, hi_it] = std::minmax_element(track.values.begin(), track.values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  for (double& v : track.values) {
    v = range > 0.0 ? (v - lo) / range : 0.0;
  }
  track.normalized = true;
  return track;
}

std::pair<std::size_t, std::size_t> calibration_range(const CriterionTrack& track, const ThresholdPolicy& policy) {
  if (policy.calibration_frames) {
    auto [first, last] = *policy.calibration_frames;
    return {std::min(first, track.size()), std::min(last, track.size())};
  }
  const auto limit = static_cast<std::size_t>(std::floor(policy.calibration_seconds * track.sample_rate + 1e-9));
  std::size_t last = 0;
  while (last < track.size() && track.frame_starts[last] + track.window <= limit) {
    ++last;
  }
  return {0, last};
}

DetectionReport detect(const CriterionTrack& track, const ThresholdPolicy& policy) {
  if (!(policy.k_sigma > 0.0)) {
    throw std::invalid_argument("k_sigma must be positive");
  }
  if (policy.min_event_frames == 0) {
    throw std::invalid_argument("min_event_frames must be at least 1");
  }
  const auto [first, last] = calibration_range(track, policy);
  if (last <= first || last - first < kMinCalibrationFrames) {
    throw CalibrationError("calibration region has " + std::to_string(last > first ? last - first : 0) +
                           " frames, need at least " + std::to_string(kMinCalibrationFrames));
  }

  const std::vector<double> calib(track.values.begin() + static_cast<std::ptrdiff_t>(first),
                                  track.values.begin() + static_cast<std::ptrdiff_t>(last));
  DetectionReport report;
  report.criterion = track.id;
  report.calibration_frame_count = calib.size();
  report.calibration_mean = mean_of(calib);
  report.calibration_std = sample_std(calib, report.calibration_mean);

  const bool rises = track.polarity == Polarity::rises_on_signal;
  const double offset = policy.k_sigma * report.calibration_std;
  report.threshold_used = rises ? report.calibration_mean + offset : report.calibration_mean - offset;
  auto exceeds = [&](double v) { return rises ? v > report.threshold_used : v < report.threshold_used; };

  std::size_t run_start = 0;
  std::size_t run_len = 0;
  auto close_run = [&](std::size_t end_exclusive) {
    if (run_len >= policy.min_event_frames) {
      DetectionEvent e;
      e.criterion = track.id;
      e.first_frame = run_start;
      e.last_frame = end_exclusive - 1;
      e.start_s = track.frame_times[run_start];
      e.end_s = track.frame_times[e.last_frame] + track.frame_duration();
      const auto b = track.values.begin();
      e.peak_value = rises ? *std::max_element(b + static_cast<std::ptrdiff_t>(run_start),
                                               b + static_cast<std::ptrdiff_t>(end_exclusive))
                           : *std::min_element(b + static_cast<std::ptrdiff_t>(run_start),
                                               b + static_cast<std::ptrdiff_t>(end_exclusive));
      report.events.push_back(e);
    }
    run_len = 0;
  };
  for (std::size_t i = 0; i < track.size(); ++i) {
    if (exceeds(track.values[i])) {
      if (run_len == 0) run_start = i;
      ++run_len;
    } else if (run_len > 0) {
      close_run(i);
    }
  }
  if (run_len > 0) close_run(track.size());
  return report;
}

namespace {

enum class FrameClass { signal, noise, mixed };

FrameClass classify(std::size_t start, std::size_t window, std::span<const std::pair<std::size_t, std::size_t>> truth) {
  const std::size_t end = start + window;
  for (const auto& [a, b] : truth) {
    if (start >= a && end <= b) return FrameClass::signal;
    if (start < b && end > a) return FrameClass::mixed;
  }
  return FrameClass::noise;
}

std::vector<std::pair<std::size_t, std::size_t>> truth_samples(std::span<const Interval> truth, std::uint32_t rate) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& iv : truth) out.push_back(interval_samples(iv, rate));
  return out;
}

}  // namespace

double separation_margin(const CriterionTrack& track, std::span<const Interval> truth) {
  const auto spans = truth_samples(truth, track.sample_rate);
  std::vector<double> sig;
  std::vector<double> noise;
  for (std::size_t i = 0; i < track.size(); ++i) {
    switch (classify(track.frame_starts[i], track.window, spans)) {
      case FrameClass::signal:
        sig.push_back(track.values[i]);
        break;
      case FrameClass::noise:
        noise.push_back(track.values[i]);
        break;
      case FrameClass::mixed:
        break;
    }
  }
  if (sig.empty() || noise.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double mn = mean_of(noise);
  const double diff = std::abs(mean_of(sig) - mn);
  const double sd = sample_std(noise, mn);
  if (sd > 0.0) return diff / sd;
  return diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

bool detects_truth(const DetectionReport& report, std::span<const Interval> truth, double min_fraction) {
  for (const auto& e : report.events) {
    const double len = e.end_s - e.start_s;
    for (const auto& iv : truth) {
      const double overlap = std::min(e.end_s, iv.end_s) - std::max(e.start_s, iv.start_s);
      if (len > 0.0 && overlap >= min_fraction * len) return true;
    }
  }
  return false;
}

std::size_t count_false_events(const DetectionReport& report, std::span<const Interval> truth) {
  return static_cast<std::size_t>(std::count_if(report.events.begin(), report.events.end(), [&](const auto& e) {
    return std::none_of(truth.begin(), truth.end(),
                        [&](const Interval& iv) { return e.start_s < iv.end_s && e.end_s > iv.start_s; });
  }));
}

GaussianParams lh_reference(const SignalBuffer& buf, double calibration_seconds) {
  const auto est = estimate_noise_sigma(buf, Interval{0.0, calibration_seconds});
  return est.degenerate() ? GaussianParams(est.mean, 1.0) : est.params();
}

MixResult sweep_mixture(const SweepSpec& spec, double sigma) {
  const auto clean = synthesize(spec.signal, spec.sample_rate, spec.duration_s);
  const auto noise = generate_white_noise(NoiseSpec{sigma, spec.seed}, clean.size(), spec.sample_rate);
  return mix(clean, noise, spec.signal.bursts);
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  const bool wants_lh = std::find(spec.criteria.begin(), spec.criteria.end(), Criterion::lh) != spec.criteria.end();
  for (double sigma : spec.sigmas) {
    const auto mixed = sweep_mixture(spec, sigma);
    AnalysisConfig cfg = spec.analysis;
    if (wants_lh) {
      cfg.noise = lh_reference(mixed.mixture, spec.policy.calibration_seconds);
    }
    const auto tracks = run_criteria(mixed.mixture, spec.criteria, cfg);
    for (const auto& track : tracks) {
      SweepRow row;
      row.sigma = sigma;
      row.criterion = track.id;
      row.snr_db = mixed.snr_db;
      row.snr_unbounded = mixed.snr_unbounded;
      row.separation_margin = separation_margin(track, spec.signal.bursts);
      row.detected = detects_truth(detect(track, spec.policy), spec.signal.bursts);
      rows.push_back(row);
    }
  }
  return rows;
}

SweepSpec tone_burst_benchmark(double amplitude, double sigma, std::uint64_t seed) {
  SweepSpec spec;
  spec.signal.kind = SynthKind::tone_burst;
  spec.signal.carrier_hz = 1000.0;
  spec.signal.amplitude = amplitude;
  spec.signal.bursts = {{4.0, 6.0}, {9.0, 11.0}, {14.0, 16.0}};
  spec.sample_rate = 48000;
  spec.duration_s = 20.0;
  spec.sigmas = {sigma};
  spec.seed = seed;
  spec.policy.calibration_seconds = 3.0;
  return spec;
}

}  // namespace entrosig
