#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "entrosig/cli/config.hpp"
#include "entrosig/cli/verify.hpp"
#include "json.hpp"

namespace entrosig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPolicyFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kSchemaVersion = 1;

/// The buffer a command analyzes: WAV or synthetic signal, plus noise at
/// the first --sigma.
struct PreparedInput {
  SignalBuffer buffer;
  std::vector<Interval> truth;  ///< bursts, synthetic input only
  std::optional<double> snr_db;
  bool snr_unbounded = false;
  std::string source;
  std::vector<std::string> warnings;
};

PreparedInput prepare_input(const RunConfig& cfg);

/// Tracks the CSV is built from; LH uses the noise estimated over the
/// calibration window.
std::vector<CriterionTrack> analyze_tracks(const RunConfig& cfg, const PreparedInput& in);

std::string analyze_csv(const RunConfig& cfg, const PreparedInput& in);
nlohmann::json detect_json(const RunConfig& cfg, const PreparedInput& in);
std::string sweep_csv(const RunConfig& cfg);
std::string verify_text(const VerifyReport& report);
nlohmann::json verify_json(const VerifyReport& report);
/// Writes the noisy synthetic mixture as 16-bit PCM; returns clipped samples.
std::size_t synth_to_wav(const RunConfig& cfg);

/// Shortest round-trip decimal for CSV cells ("inf", "-inf", "nan" for
/// non-finite values).
std::string format_number(double v);

/// Value rounded to 12 significant digits, or null when non-finite.
nlohmann::json json_number(double v);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entrosig::cli
