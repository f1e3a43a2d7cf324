#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

// RTP fixed header (RFC 3550) carrying PCMU frames.
namespace easyvoice::voip {

inline constexpr std::uint8_t kPayloadTypePcmu = 0;
inline constexpr std::size_t kRtpHeaderSize = 12;
inline constexpr std::size_t kFrameSamples = 160;  // 20 ms at 8 kHz
inline constexpr int kFrameMs = 20;

class RtpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RtpPacket {
  bool marker = false;
  std::uint8_t payload_type = kPayloadTypePcmu;
  std::uint16_t sequence = 0;
  std::uint32_t timestamp = 0;
  std::uint32_t ssrc = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const RtpPacket&, const RtpPacket&) = default;
};

/// V=2, P=0, X=0, CC=0 header followed by the payload.
std::vector<std::uint8_t> serialize_rtp(const RtpPacket& packet);

/// Accepts any valid RTP packet; CSRCs and header extensions are skipped and
/// padding is removed. Throws RtpError for short input or version != 2.
RtpPacket parse_rtp(std::span<const std::uint8_t> bytes);

}  // namespace easyvoice::voip
