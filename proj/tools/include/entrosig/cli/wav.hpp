#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrosig/distributions.hpp"

namespace entrosig::cli {

class WavError : public std::runtime_error {
 public:
  explicit WavError(const std::string& what) : std::runtime_error(what) {}
};

struct WavData {
  SignalBuffer buffer;  ///< first channel, native integer scale
  std::uint16_t channels = 0;
  std::uint16_t bits_per_sample = 0;
  bool is_float = false;
  std::vector<std::string> warnings;
};

/// Decodes RIFF/WAVE PCM (8, 16, 24 bit integer or 32 bit float, plain or
/// WAVE_FORMAT_EXTENSIBLE). Integer samples keep their native scale
/// (8-bit is re-centred to [-128, 127]); float samples are scaled by 32768
/// onto the 16-bit range. Multichannel input yields channel 0 plus a warning.
WavData parse_wav(std::span<const std::uint8_t> bytes);
WavData ingest_wav(const std::filesystem::path& path);

struct WavEncodeResult {
  std::vector<std::uint8_t> bytes;
  std::size_t clipped = 0;  ///< samples saturated to the int16 range
};

/// 16-bit mono PCM, samples rounded to nearest and saturated.
WavEncodeResult encode_wav_pcm16(const SignalBuffer& buf);
std::size_t write_wav_pcm16(const std::filesystem::path& path, const SignalBuffer& buf);

}  // namespace entrosig::cli
