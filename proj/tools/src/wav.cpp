#include "entrosig/cli/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

namespace entrosig::cli {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

std::uint32_t le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

double decode_sample(const std::uint8_t* p, const FmtChunk& fmt) {
  if (fmt.format == kFormatFloat) {
    float f;
    std::uint32_t raw = le32(p);
    std::memcpy(&f, &raw, sizeof f);
    return static_cast<double>(f) * 32768.0;
  }
  switch (fmt.bits) {
    case 8:
      return static_cast<double>(p[0]) - 128.0;
    case 16:
      return static_cast<double>(static_cast<std::int16_t>(le16(p)));
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return static_cast<double>(v);
    }
    default:
      return 0.0;
  }
}

}  // namespace

WavData parse_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw WavError("not a RIFF/WAVE file");
  }

  std::optional<FmtChunk> fmt;
  std::optional<std::span<const std::uint8_t>> data;
  bool data_truncated = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* hdr = bytes.data() + pos;
    const std::uint32_t size = le32(hdr + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16 || available < 16) {
        throw WavError("truncated fmt chunk");
      }
      const std::uint8_t* f = bytes.data() + body;
      FmtChunk c;
      c.format = le16(f);
      c.channels = le16(f + 2);
      c.sample_rate = le32(f + 4);
      c.block_align = le16(f + 12);
      c.bits = le16(f + 14);
      if (c.format == kFormatExtensible) {
        if (size < 40 || available < 26) {
          throw WavError("truncated WAVE_FORMAT_EXTENSIBLE header");
        }
        c.format = le16(f + 24);  // first two bytes of the subformat GUID
      }
      fmt = c;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (size > available) {
        data_truncated = true;
      }
      data = bytes.subspan(body, std::min<std::size_t>(size, available));
      if (fmt) break;
    }
    pos = body + size + (size & 1u);
  }

  if (!fmt) throw WavError("missing fmt chunk");
  if (!data) throw WavError("missing data chunk");
  if (data_truncated) throw WavError("data chunk is truncated");
  if (fmt->channels == 0) throw WavError("zero channels");
  if (fmt->sample_rate == 0) throw WavError("zero sample rate");

  const bool is_int = fmt->format == kFormatPcm && (fmt->bits == 8 || fmt->bits == 16 || fmt->bits == 24);
  const bool is_float = fmt->format == kFormatFloat && fmt->bits == 32;
  if (!is_int && !is_float) {
    throw WavError("unsupported codec: format " + std::to_string(fmt->format) + ", " + std::to_string(fmt->bits) +
                   " bits");
  }
  const std::size_t sample_bytes = fmt->bits / 8;
  const std::size_t frame_bytes = sample_bytes * fmt->channels;
  if (fmt->block_align != frame_bytes) {
    throw WavError("block_align does not match channels and sample size");
  }
  const std::size_t n = data->size() / frame_bytes;
  if (n == 0) throw WavError("no samples in data chunk");

  WavData out;
  out.channels = fmt->channels;
  out.bits_per_sample = fmt->bits;
  out.is_float = is_float;
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    samples[i] = decode_sample(data->data() + i * frame_bytes, *fmt);
  }
  out.buffer = SignalBuffer(std::move(samples), fmt->sample_rate);
  if (fmt->channels > 1) {
    out.warnings.push_back("input has " + std::to_string(fmt->channels) + " channels; using channel 0");
  }
  return out;
}

WavData ingest_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_wav(bytes);
}

WavEncodeResult encode_wav_pcm16(const SignalBuffer& buf) {
  WavEncodeResult r;
  const auto data_bytes = static_cast<std::uint32_t>(buf.size() * 2);
  auto& out = r.bytes;
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, 1);
  put32(out, buf.sample_rate);
  put32(out, buf.sample_rate * 2);
  put16(out, 2);
  put16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, data_bytes);
  for (double v : buf.samples) {
    double q = std::nearbyint(v);
    if (q > 32767.0 || q < -32768.0) {
      ++r.clipped;
      q = std::clamp(q, -32768.0, 32767.0);
    }
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  return r;
}

std::size_t write_wav_pcm16(const std::filesystem::path& path, const SignalBuffer& buf) {
  const auto enc = encode_wav_pcm16(buf);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WavError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(enc.bytes.data()), static_cast<std::streamsize>(enc.bytes.size()));
  if (!out) throw WavError("write failed for " + path.string());
  return enc.clipped;
}

}  // namespace entrosig::cli
