#include "easyvoice/speech/tone_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "easyvoice/textaccel/text_util.hpp"

namespace easyvoice::speech {

namespace {

constexpr int kRampMs = 5;

bool is_whitespace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' || cp == U'\f' || cp == 0x00A0 ||
         cp == 0x3000 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029;
}

}  // namespace

void ToneSynthConfig::validate() const {
  if (per_char_ms < 1) throw std::invalid_argument("per_char_ms must be at least 1");
  if (!(base_freq_hz > 0.0)) throw std::invalid_argument("base frequency must be positive");
  if (amplitude <= 0 || amplitude > 32767) throw std::invalid_argument("amplitude must be in (0, 32767]");
  if (sample_rate_hz < audio::kMinSampleRate || sample_rate_hz > audio::kMaxSampleRate) {
    throw std::invalid_argument("sample rate must be in [8000, 48000]");
  }
}

double tone_frequency(char32_t cp, const ToneSynthConfig& cfg) noexcept {
  return cfg.base_freq_hz * std::exp2(static_cast<double>(cp % 36) / 36.0);
}

audio::AudioBuffer synthesize_tone(std::string_view text, const ToneSynthConfig& cfg) {
  cfg.validate();
  const auto codepoints = textaccel::utf8_decode(text);
  const std::int64_t rate = cfg.sample_rate_hz;
  const std::int64_t per_char = cfg.per_char_ms;
  const auto boundary = [&](std::size_t i) { return static_cast<std::int64_t>(i) * per_char * rate / 1000; };

  std::vector<std::int16_t> samples(static_cast<std::size_t>(boundary(codepoints.size())), 0);
  const std::int64_t ramp = kRampMs * rate / 1000;

  for (std::size_t i = 0; i < codepoints.size(); ++i) {
    if (is_whitespace(codepoints[i])) continue;
    const auto begin = boundary(i);
    const auto len = boundary(i + 1) - begin;
    const double w = 2.0 * std::numbers::pi * tone_frequency(codepoints[i], cfg) / static_cast<double>(rate);
    const auto fade = std::min(ramp, len / 2);
    for (std::int64_t n = 0; n < len; ++n) {
      double gain = 1.0;
      if (fade > 0) {
        const auto edge = std::min(n, len - 1 - n);
        if (edge < fade) gain = static_cast<double>(edge) / static_cast<double>(fade);
      }
      const double v = cfg.amplitude * gain * std::sin(w * static_cast<double>(n));
      samples[static_cast<std::size_t>(begin + n)] = static_cast<std::int16_t>(std::lround(v));
    }
  }
  return audio::AudioBuffer(cfg.sample_rate_hz, std::move(samples));
}

}  // namespace easyvoice::speech
