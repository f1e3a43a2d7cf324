#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "easyvoice/audio/audio_buffer.hpp"

namespace easyvoice::speech {

class WavError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes a RIFF/WAVE PCM 16-bit file with one or two channels. Stereo
/// frames are averaged to mono. Unknown chunks are skipped.
audio::AudioBuffer parse_wav(std::span<const std::uint8_t> bytes);
audio::AudioBuffer read_wav_file(const std::string& path);

/// Canonical 44-byte-header mono PCM16 encoding.
std::vector<std::uint8_t> write_wav(const audio::AudioBuffer& buf);
void write_wav_file(const audio::AudioBuffer& buf, const std::string& path);

}  // namespace easyvoice::speech
