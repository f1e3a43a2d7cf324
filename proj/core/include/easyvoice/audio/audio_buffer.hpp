#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace easyvoice::audio {

inline constexpr int kMinSampleRate = 8000;
inline constexpr int kMaxSampleRate = 48000;
inline constexpr int kTelephonyRate = 8000;

class AudioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mono signed 16-bit PCM at a fixed sample rate in [8000, 48000] Hz.
class AudioBuffer {
 public:
  AudioBuffer() = default;
  explicit AudioBuffer(int sample_rate_hz, std::vector<std::int16_t> samples = {});

  int sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::span<const std::int16_t> samples() const noexcept { return samples_; }
  std::vector<std::int16_t>& mutable_samples() noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  /// Length in milliseconds, rounded down.
  std::int64_t duration_ms() const noexcept;

  void append(std::span<const std::int16_t> more) { samples_.insert(samples_.end(), more.begin(), more.end()); }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;

 private:
  int sample_rate_hz_ = kTelephonyRate;
  std::vector<std::int16_t> samples_;
};

}  // namespace easyvoice::audio
