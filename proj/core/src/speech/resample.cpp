#include "easyvoice/speech/resample.hpp"

#include <cmath>
#include <string>

namespace easyvoice::speech {

audio::AudioBuffer resample_linear(const audio::AudioBuffer& buf, int target_rate_hz) {
  if (target_rate_hz < audio::kMinSampleRate || target_rate_hz > audio::kMaxSampleRate) {
    throw audio::AudioError("target rate " + std::to_string(target_rate_hz) + " Hz outside [8000, 48000]");
  }
  const std::int64_t source = buf.sample_rate_hz();
  if (source == target_rate_hz) return buf;

  const auto in = buf.samples();
  const std::int64_t n_in = static_cast<std::int64_t>(in.size());
  // round(n_in * target / source) in integers, halves rounded up
  const std::int64_t n_out = (2 * n_in * target_rate_hz + source) / (2 * source);

  std::vector<std::int16_t> out(static_cast<std::size_t>(n_out));
  for (std::int64_t i = 0; i < n_out; ++i) {
    // Source position i * source / target as integer part + fraction.
    const std::int64_t num = i * source;
    std::int64_t idx = num / target_rate_hz;
    double frac = static_cast<double>(num % target_rate_hz) / static_cast<double>(target_rate_hz);
    if (idx >= n_in - 1) {
      idx = n_in - 1;
      frac = 0.0;
    }
    const double a = in[static_cast<std::size_t>(idx)];
    const double b = frac > 0.0 ? in[static_cast<std::size_t>(idx + 1)] : a;
    out[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(std::lround(a + (b - a) * frac));
  }
  return audio::AudioBuffer(target_rate_hz, std::move(out));
}

}  // namespace easyvoice::speech
