#include "easyvoice/voipbridge/clock.hpp"

#include <thread>

namespace easyvoice::voip {

Clock::duration SteadyClock::now() const {
  return std::chrono::duration_cast<duration>(std::chrono::steady_clock::now() - epoch_);
}

void SteadyClock::sleep_until(duration t) { std::this_thread::sleep_until(epoch_ + t); }

}  // namespace easyvoice::voip
