#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entrosig/pipeline.hpp"

namespace entrosig::cli {

/// Bad flag values, unknown criteria, missing inputs. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Synthetic input: the clean signal plus its length and rate.
struct SynthInput {
  SynthSpec spec;
  double duration_s = 20.0;
  std::uint32_t sample_rate = 48000;
};

/// Parses "key=value,key=value". Keys: kind (tone_burst|chirp|multi_tone),
/// carrier, amplitude, bursts (start-end;start-end), duration, rate,
/// chirp_end, tones, preset (benchmark). Throws UsageError.
SynthInput parse_synth_spec(std::string_view text);

enum class OutputFormat { csv, json, text };

struct RunConfig {
  std::optional<std::filesystem::path> input;
  std::optional<SynthInput> synth;
  std::size_t window = 2048;
  std::optional<std::size_t> n_fft;  ///< defaults to window
  std::optional<std::size_t> hop;    ///< defaults to window
  std::size_t levels = 64;
  bool allow_non_pow2 = false;
  std::vector<Criterion> criteria;
  std::vector<double> sigmas;
  std::uint64_t seed = 1;
  double k_sigma = 3.0;
  double calib_secs = 3.0;
  std::size_t min_event_frames = 2;
  std::optional<OutputFormat> format;
  std::optional<std::filesystem::path> output;

  [[nodiscard]] AnalysisConfig analysis() const;
  [[nodiscard]] ThresholdPolicy policy() const;
  /// Throws UsageError on inconsistent settings.
  void validate() const;
};

/// --seed, else ENTROSIG_SEED, else 1.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

std::vector<Criterion> parse_criteria_list(std::span<const std::string> names);

std::string_view to_string(SynthKind kind) noexcept;

}  // namespace entrosig::cli
