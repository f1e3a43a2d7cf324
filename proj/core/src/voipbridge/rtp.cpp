#include "easyvoice/voipbridge/rtp.hpp"

#include <string>

namespace easyvoice::voip {

std::vector<std::uint8_t> serialize_rtp(const RtpPacket& p) {
  if (p.payload_type > 127) throw RtpError("payload type does not fit in 7 bits");
  std::vector<std::uint8_t> out;
  out.reserve(kRtpHeaderSize + p.payload.size());
  out.push_back(0x80);
  out.push_back(static_cast<std::uint8_t>((p.marker ? 0x80 : 0x00) | p.payload_type));
  out.push_back(static_cast<std::uint8_t>(p.sequence >> 8));
  out.push_back(static_cast<std::uint8_t>(p.sequence));
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(p.timestamp >> shift));
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(p.ssrc >> shift));
  out.insert(out.end(), p.payload.begin(), p.payload.end());
  return out;
}

RtpPacket parse_rtp(std::span<const std::uint8_t> b) {
  if (b.size() < kRtpHeaderSize) throw RtpError("RTP packet shorter than 12 bytes (" + std::to_string(b.size()) + ")");
  const int version = b[0] >> 6;
  if (version != 2) throw RtpError("unsupported RTP version " + std::to_string(version));
  const bool padding = (b[0] & 0x20) != 0;
  const bool extension = (b[0] & 0x10) != 0;
  const std::size_t csrc_count = b[0] & 0x0F;

  RtpPacket p;
  p.marker = (b[1] & 0x80) != 0;
  p.payload_type = b[1] & 0x7F;
  p.sequence = static_cast<std::uint16_t>((b[2] << 8) | b[3]);
  p.timestamp = (static_cast<std::uint32_t>(b[4]) << 24) | (static_cast<std::uint32_t>(b[5]) << 16) |
                (static_cast<std::uint32_t>(b[6]) << 8) | b[7];
  p.ssrc = (static_cast<std::uint32_t>(b[8]) << 24) | (static_cast<std::uint32_t>(b[9]) << 16) |
           (static_cast<std::uint32_t>(b[10]) << 8) | b[11];

  std::size_t offset = kRtpHeaderSize + 4 * csrc_count;
  if (offset > b.size()) throw RtpError("RTP packet truncated inside CSRC list");
  if (extension) {
    if (offset + 4 > b.size()) throw RtpError("RTP packet truncated inside header extension");
    const std::size_t words = (static_cast<std::size_t>(b[offset + 2]) << 8) | b[offset + 3];
    offset += 4 + 4 * words;
    if (offset > b.size()) throw RtpError("RTP packet truncated inside header extension");
  }
  std::size_t end = b.size();
  if (padding) {
    const std::size_t pad = b.back();
    if (pad == 0 || pad > end - offset) throw RtpError("invalid RTP padding length");
    end -= pad;
  }
  p.payload.assign(b.begin() + static_cast<std::ptrdiff_t>(offset), b.begin() + static_cast<std::ptrdiff_t>(end));
  return p;
}

}  // namespace easyvoice::voip
