#include "easyvoice/audio/audio_buffer.hpp"

#include <string>

namespace easyvoice::audio {

AudioBuffer::AudioBuffer(int sample_rate_hz, std::vector<std::int16_t> samples)
    : sample_rate_hz_(sample_rate_hz), samples_(std::move(samples)) {
  if (sample_rate_hz < kMinSampleRate || sample_rate_hz > kMaxSampleRate) {
    throw AudioError("sample rate " + std::to_string(sample_rate_hz) + " Hz outside [8000, 48000]");
  }
}

std::int64_t AudioBuffer::duration_ms() const noexcept {
  return static_cast<std::int64_t>(samples_.size()) * 1000 / sample_rate_hz_;
}

}  // namespace easyvoice::audio
