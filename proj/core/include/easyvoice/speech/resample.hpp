#pragma once

#include "easyvoice/audio/audio_buffer.hpp"

namespace easyvoice::speech {

/// Linear-interpolation resampler. Output length is
/// round(len * target / source); equal rates return the input unchanged.
audio::AudioBuffer resample_linear(const audio::AudioBuffer& buf, int target_rate_hz);

}  // namespace easyvoice::speech
