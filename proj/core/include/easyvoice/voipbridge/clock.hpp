#pragma once

#include <chrono>

namespace easyvoice::voip {

// Time source for the pacing loop. Times are offsets from an arbitrary
// per-clock epoch.
class Clock {
 public:
  using duration = std::chrono::microseconds;
  virtual ~Clock() = default;
  virtual duration now() const = 0;
  virtual void sleep_until(duration t) = 0;
};

/// Simulated time: sleeping jumps the clock forward.
class SimulatedClock final : public Clock {
 public:
  duration now() const override { return now_; }
  void sleep_until(duration t) override {
    if (t > now_) now_ = t;
  }
  void advance(duration d) { now_ += d; }

 private:
  duration now_{0};
};

class SteadyClock final : public Clock {
 public:
  duration now() const override;
  void sleep_until(duration t) override;

 private:
  std::chrono::steady_clock::time_point epoch_ = std::chrono::steady_clock::now();
};

}  // namespace easyvoice::voip
