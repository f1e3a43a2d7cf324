#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "easyvoice/audio/audio_buffer.hpp"
#include "easyvoice/voipbridge/rtp.hpp"
#include "easyvoice/voipbridge/transport.hpp"

namespace easyvoice::voip {

inline constexpr std::size_t kDefaultReorderWindow = 16;

struct PlacedFrame {
  std::uint16_t sequence = 0;
  std::uint32_t timestamp = 0;
  bool marker = false;
  bool concealed = false;  // never arrived in time; played as silence
};

struct ReceiveReport {
  audio::AudioBuffer audio{audio::kTelephonyRate};
  std::vector<PlacedFrame> frames;  // playout order, one per 160 samples of audio
  std::size_t packets_received = 0;
  std::size_t packets_lost = 0;
  std::size_t out_of_order = 0;
  std::size_t duplicates = 0;
  std::size_t late = 0;     // arrived after its slot was concealed
  std::size_t ignored = 0;  // not RTP, wrong payload type or size, foreign SSRC
  std::optional<std::uint32_t> ssrc;
};

// Far-end playout: orders packets by sequence inside a reorder window,
// conceals gaps with silence and decodes mu-law. Locks onto the first SSRC.
class ReceiveAssembler {
 public:
  explicit ReceiveAssembler(std::size_t reorder_window = kDefaultReorderWindow);

  void push(const RtpPacket& packet);
  void push_datagram(std::span<const std::uint8_t> datagram);

  /// Flushes everything still buffered, concealing remaining gaps.
  ReceiveReport finish();

 private:
  void place(std::int64_t ext_seq, const RtpPacket* packet);
  void drain(bool all);

  std::size_t window_;
  ReceiveReport report_;
  std::map<std::int64_t, RtpPacket> pending_;
  std::int64_t next_ = 0;
  std::int64_t highest_ = 0;
  std::uint32_t last_timestamp_ = 0;
  bool started_ = false;
};

ReceiveReport assemble(std::span<const RtpPacket> arrivals, std::size_t reorder_window = kDefaultReorderWindow);

struct LoopbackOptions {
  std::chrono::milliseconds duration{10000};
  /// Stop early after this long without packets once the first one arrived (0 = never).
  std::chrono::milliseconds idle_exit{0};
};

/// Collects datagrams from rx until the duration elapses or the stream goes quiet.
ReceiveReport run_loopback_peer(UdpReceiver& rx, const LoopbackOptions& options);
ReceiveReport run_loopback_peer(std::uint16_t port, std::chrono::milliseconds duration);

}  // namespace easyvoice::voip
