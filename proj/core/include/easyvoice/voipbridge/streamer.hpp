#pragma once

#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "easyvoice/audio/audio_buffer.hpp"
#include "easyvoice/voipbridge/clock.hpp"
#include "easyvoice/voipbridge/session.hpp"
#include "easyvoice/voipbridge/transport.hpp"

namespace easyvoice::voip {

inline constexpr Clock::duration kFramePeriod = std::chrono::milliseconds(kFrameMs);

struct StreamResult {
  CallSession session;
  std::size_t sent = 0;
  std::optional<std::string> error;
};

/// Sends prepared packets one per 20 ms tick starting at clock.now(). A send
/// failure stops the stream, sets the session Idle and reports the error.
StreamResult stream(CallSession session, std::span<const RtpPacket> packets, PacketSink& sink, Clock& clock);

// Continuous outbound stream: every 20 ms it sends the next frame of the
// current utterance or, between utterances, a silence frame, so the far end
// sees one unbroken sequence. Control calls (speak, hang_up) may come from
// any thread; step()/run() belong to the single pacing thread.
class Streamer {
 public:
  Streamer(CallSession session, PacketSink& sink, Clock& clock);

  /// Queues 8 kHz audio; throws audio::AudioError for other rates.
  void speak(audio::AudioBuffer utterance);
  void hang_up();

  /// Waits for the next tick and sends one frame. False once stopped.
  bool step();
  void run();

  CallSession session() const;
  std::optional<std::string> error() const;
  std::size_t queued_utterances() const;
  bool idle() const;  // nothing queued or mid-utterance

  void on_error(std::function<void(const std::string&)> handler);

 private:
  mutable std::mutex mu_;
  CallSession session_;
  PacketSink& sink_;
  Clock& clock_;
  std::deque<audio::AudioBuffer> queue_;
  std::vector<RtpPacket> current_;
  std::size_t current_pos_ = 0;
  std::optional<Clock::duration> next_send_;
  std::optional<std::string> error_;
  std::function<void(const std::string&)> on_error_;
  std::atomic<bool> stopped_{false};
};

}  // namespace easyvoice::voip
