#include "entrosig/cli/config.hpp"

#include <bit>
#include <charconv>
#include <cstdlib>
#include <span>

namespace entrosig::cli {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw UsageError("synth: " + std::string(key) + " expects a number, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw UsageError(std::string(key) + " expects a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

}  // namespace

std::string_view to_string(SynthKind kind) noexcept {
  switch (kind) {
    case SynthKind::tone_burst:
      return "tone_burst";
    case SynthKind::chirp:
      return "chirp";
    case SynthKind::multi_tone:
      return "multi_tone";
  }
  return "unknown";
}

SynthInput parse_synth_spec(std::string_view text) {
  SynthInput in;
  bool bursts_given = false;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("synth: expected key=value, got '" + std::string(item) + "'");
    }
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (key == "preset") {
      if (value != "benchmark") throw UsageError("synth: unknown preset '" + std::string(value) + "'");
      const auto bench = tone_burst_benchmark(in.spec.amplitude, 0.0, 0);
      in.spec.bursts = bench.signal.bursts;
      in.spec.carrier_hz = bench.signal.carrier_hz;
      in.duration_s = bench.duration_s;
      in.sample_rate = bench.sample_rate;
      bursts_given = true;
    } else if (key == "kind") {
      if (value == "tone_burst") in.spec.kind = SynthKind::tone_burst;
      else if (value == "chirp") in.spec.kind = SynthKind::chirp;
      else if (value == "multi_tone") in.spec.kind = SynthKind::multi_tone;
      else throw UsageError("synth: unknown kind '" + std::string(value) + "'");
    } else if (key == "carrier") {
      in.spec.carrier_hz = to_double(key, value);
    } else if (key == "amplitude") {
      in.spec.amplitude = to_double(key, value);
    } else if (key == "duration") {
      in.duration_s = to_double(key, value);
    } else if (key == "rate") {
      const auto r = to_uint(key, value);
      if (r == 0 || r > 0xFFFFFFFFu) throw UsageError("synth: rate out of range");
      in.sample_rate = static_cast<std::uint32_t>(r);
    } else if (key == "chirp_end") {
      in.spec.chirp_end_hz = to_double(key, value);
    } else if (key == "tones") {
      in.spec.n_tones = static_cast<std::size_t>(to_uint(key, value));
    } else if (key == "bursts") {
      in.spec.bursts.clear();
      bursts_given = true;
      for (std::string_view b : split(value, ';')) {
        b = trim(b);
        if (b.empty()) continue;
        const auto dash = b.find('-');
        if (dash == std::string_view::npos) throw UsageError("synth: burst must be start-end");
        in.spec.bursts.push_back({to_double(key, b.substr(0, dash)), to_double(key, b.substr(dash + 1))});
      }
    } else {
      throw UsageError("synth: unknown key '" + std::string(key) + "'");
    }
  }
  if (!bursts_given) {
    in.spec.bursts = {{0.0, in.duration_s}};
  }
  return in;
}

std::vector<Criterion> parse_criteria_list(std::span<const std::string> names) {
  std::vector<Criterion> out;
  for (const auto& raw : names) {
    for (std::string_view name : split(raw, ',')) {
      name = trim(name);
      if (name.empty()) continue;
      const auto c = parse_criterion(name);
      if (!c) {
        std::string known;
        for (const auto& info : criterion_registry()) {
          known += known.empty() ? "" : ", ";
          known += info.name;
        }
        throw UsageError("unknown criterion '" + std::string(name) + "' (known: " + known + ")");
      }
      out.push_back(*c);
    }
  }
  return out;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ENTROSIG_SEED"); env != nullptr && *env != '\0') {
    return to_uint("ENTROSIG_SEED", env);
  }
  return 1;
}

AnalysisConfig RunConfig::analysis() const {
  AnalysisConfig cfg;
  cfg.window = window;
  cfg.hop = hop.value_or(window);
  cfg.histogram.n_levels = levels;
  cfg.group_levels = levels;
  cfg.spectral.n_fft = n_fft.value_or(window);
  return cfg;
}

ThresholdPolicy RunConfig::policy() const {
  ThresholdPolicy p;
  p.calibration_seconds = calib_secs;
  p.k_sigma = k_sigma;
  p.min_event_frames = min_event_frames;
  return p;
}

void RunConfig::validate() const {
  const std::size_t fft = n_fft.value_or(window);
  if (window < 2) throw UsageError("--window must be at least 2");
  if (fft < window) throw UsageError("--n-fft must be at least --window");
  if (!allow_non_pow2 && (!std::has_single_bit(window) || !std::has_single_bit(fft))) {
    throw UsageError("--window and --n-fft must be powers of two (pass --allow-non-pow2 to override)");
  }
  if (hop && *hop == 0) throw UsageError("--hop must be positive");
  if (levels < 2) throw UsageError("--levels must be at least 2");
  if (!(k_sigma > 0.0)) throw UsageError("--k-sigma must be positive");
  if (!(calib_secs > 0.0)) throw UsageError("--calib-secs must be positive");
  if (min_event_frames == 0) throw UsageError("--min-event-frames must be at least 1");
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw UsageError("--sigma values must be non-negative");
  }
  if (input && synth) throw UsageError("--input and --synth are mutually exclusive");
}

}  // namespace entrosig::cli
