#include "easyvoice/speech/wav.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string_view>

namespace easyvoice::speech {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, std::string_view tag) {
  return std::memcmp(b.data() + at, tag.data(), 4) == 0;
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_tag(std::vector<std::uint8_t>& out, std::string_view tag) { out.insert(out.end(), tag.begin(), tag.end()); }

struct Format {
  std::uint16_t code;
  std::uint16_t channels;
  std::uint32_t rate;
  std::uint16_t bits;
};

}  // namespace

audio::AudioBuffer parse_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw WavError("too short for a RIFF header");
  if (!tag_is(bytes, 0, "RIFF")) throw WavError("missing RIFF magic");
  if (!tag_is(bytes, 8, "WAVE")) throw WavError("missing WAVE magic");

  std::optional<Format> fmt;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const auto size = le32(bytes, pos + 4);
    const auto body = pos + 8;
    const bool is_fmt = tag_is(bytes, pos, "fmt ");
    const bool is_data = tag_is(bytes, pos, "data");

    if (is_fmt) {
      if (size < 16 || body + 16 > bytes.size()) throw WavError("truncated fmt chunk");
      fmt = Format{le16(bytes, body), le16(bytes, body + 2), le32(bytes, body + 4), le16(bytes, body + 14)};
      if (fmt->code != kFormatPcm) throw WavError("unsupported format code " + std::to_string(fmt->code));
      if (fmt->bits != 16) throw WavError("unsupported bit depth " + std::to_string(fmt->bits));
      if (fmt->channels != 1 && fmt->channels != 2) {
        throw WavError("unsupported channel count " + std::to_string(fmt->channels));
      }
    } else if (is_data) {
      if (!fmt) throw WavError("data chunk before fmt chunk");
      if (size > bytes.size() - body) throw WavError("truncated data chunk");
      const std::size_t frame_bytes = 2u * fmt->channels;
      if (size % frame_bytes != 0) throw WavError("data chunk is not a whole number of frames");
      if (fmt->rate < audio::kMinSampleRate || fmt->rate > audio::kMaxSampleRate) {
        throw WavError("sample rate " + std::to_string(fmt->rate) + " outside [8000, 48000]");
      }
      std::vector<std::int16_t> samples(size / frame_bytes);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto at = body + i * frame_bytes;
        if (fmt->channels == 1) {
          samples[i] = static_cast<std::int16_t>(le16(bytes, at));
        } else {
          const int left = static_cast<std::int16_t>(le16(bytes, at));
          const int right = static_cast<std::int16_t>(le16(bytes, at + 2));
          samples[i] = static_cast<std::int16_t>((left + right) / 2);
        }
      }
      return audio::AudioBuffer(static_cast<int>(fmt->rate), std::move(samples));
    }
    // Chunks are padded to an even length.
    const std::size_t advance = 8 + static_cast<std::size_t>(size) + (size & 1u);
    if (advance > bytes.size() - pos) break;
    pos += advance;
  }
  throw WavError(fmt ? "missing data chunk" : "missing fmt chunk");
}

audio::AudioBuffer read_wav_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_wav(bytes);
  } catch (const WavError& e) {
    throw WavError(path + ": " + e.what());
  }
}

std::vector<std::uint8_t> write_wav(const audio::AudioBuffer& buf) {
  const auto data_bytes = static_cast<std::uint32_t>(buf.size() * 2);
  const auto rate = static_cast<std::uint32_t>(buf.sample_rate_hz());
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, 1);
  put32(out, rate);
  put32(out, rate * 2);
  put16(out, 2);
  put16(out, 16);
  put_tag(out, "data");
  put32(out, data_bytes);
  for (auto s : buf.samples()) put16(out, static_cast<std::uint16_t>(s));
  return out;
}

void write_wav_file(const audio::AudioBuffer& buf, const std::string& path) {
  const auto bytes = write_wav(buf);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WavError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw WavError("write failed for " + path);
}

}  // namespace easyvoice::speech
