#pragma once

#include <string_view>

#include "easyvoice/audio/audio_buffer.hpp"

namespace easyvoice::speech {

// Deterministic stand-in synthesizer: one sine segment per character.
struct ToneSynthConfig {
  int per_char_ms = 80;
  double base_freq_hz = 220.0;
  int amplitude = 12000;
  int sample_rate_hz = 8000;

  void validate() const;
};

/// Renders each code point as a per_char_ms segment: whitespace is silence,
/// anything else a sine at base_freq_hz * 2^((cp mod 36) / 36) with 5 ms
/// linear fade in/out. Total length is len * per_char_ms * rate / 1000.
audio::AudioBuffer synthesize_tone(std::string_view text, const ToneSynthConfig& cfg = {});

/// Frequency used for code point cp.
double tone_frequency(char32_t cp, const ToneSynthConfig& cfg) noexcept;

}  // namespace easyvoice::speech
