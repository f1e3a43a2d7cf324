#include <gtest/gtest.h>

#include <random>

#include "easyvoice/voipbridge/rtp.hpp"

namespace vp = easyvoice::voip;
using Bytes = std::vector<std::uint8_t>;

TEST(Rtp, HeaderBitLayout) {
  vp::RtpPacket p;
  p.sequence = 1;
  p.timestamp = 160;
  p.ssrc = 0x11223344;
  p.payload = {0xAA};
  // V=2 P=0 X=0 CC=0 -> 0x80; M=0 PT=0 -> 0x00.
  EXPECT_EQ(vp::serialize_rtp(p),
            (Bytes{0x80, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0xA0, 0x11, 0x22, 0x33, 0x44, 0xAA}));
  p.marker = true;
  EXPECT_EQ(vp::serialize_rtp(p)[1], 0x80);
}

TEST(Rtp, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    vp::RtpPacket p;
    p.marker = rng() % 2 == 0;
    p.payload_type = static_cast<std::uint8_t>(rng() % 128);
    p.sequence = static_cast<std::uint16_t>(rng());
    p.timestamp = static_cast<std::uint32_t>(rng());
    p.ssrc = static_cast<std::uint32_t>(rng());
    p.payload.resize(rng() % 300);
    for (auto& b : p.payload) b = static_cast<std::uint8_t>(rng());
    ASSERT_EQ(vp::parse_rtp(vp::serialize_rtp(p)), p);
  }
}

TEST(Rtp, RejectsShortAndWrongVersion) {
  EXPECT_THROW(vp::parse_rtp(Bytes(11, 0x80)), vp::RtpError);
  Bytes v1(12, 0);
  v1[0] = 0x40;
  EXPECT_THROW(vp::parse_rtp(v1), vp::RtpError);
}

TEST(Rtp, SkipsCsrcExtensionAndPadding) {
  Bytes b = {0xB1, 0x00, 0x00, 0x05, 0x00, 0x00, 0x00, 0x10, 0x01, 0x02, 0x03, 0x04};  // P=1 X=1 CC=1
  b.insert(b.end(), {0xCA, 0xFE, 0xBA, 0xBE});                                      // CSRC
  b.insert(b.end(), {0xBE, 0xDE, 0x00, 0x01, 0x11, 0x22, 0x33, 0x44});              // one-word extension
  b.insert(b.end(), {0x7A, 0x7B, 0x00, 0x00, 0x03});                                // payload + 3 padding
  auto p = vp::parse_rtp(b);
  EXPECT_EQ(p.sequence, 5);
  EXPECT_EQ(p.timestamp, 16u);
  EXPECT_EQ(p.ssrc, 0x01020304u);
  EXPECT_EQ(p.payload, (Bytes{0x7A, 0x7B}));
}
