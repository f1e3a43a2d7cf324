#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "easyvoice/audio/audio_buffer.hpp"
#include "easyvoice/voipbridge/rtp.hpp"

namespace easyvoice::voip {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  /// "host:port" or "[v6addr]:port". Throws std::invalid_argument.
  static Endpoint parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

enum class SessionState { Idle, Streaming };

// Identity and counters of one outbound RTP stream. Sequence and timestamp
// only move forward (mod 2^16 / 2^32).
struct CallSession {
  Endpoint peer;
  std::uint32_t ssrc = 0;
  std::uint16_t next_sequence = 0;
  std::uint32_t next_timestamp = 0;
  SessionState state = SessionState::Idle;

  /// Random SSRC and initial counters, state Streaming.
  static CallSession open(Endpoint peer);
};

/// Splits 8 kHz audio into 160-sample PCMU packets, padding the last frame
/// with mu-law silence. The first packet carries the marker bit. Advances
/// the session counters. Throws audio::AudioError for any other rate.
std::vector<RtpPacket> packetize(CallSession& session, const audio::AudioBuffer& buf);

/// One frame of mu-law silence, advancing the counters (no marker).
RtpPacket silence_packet(CallSession& session);

}  // namespace easyvoice::voip
