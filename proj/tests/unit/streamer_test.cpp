#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "easyvoice/voipbridge/loopback.hpp"
#include "easyvoice/voipbridge/mulaw.hpp"
#include "easyvoice/voipbridge/streamer.hpp"
#include "oracles.hpp"

namespace vp = easyvoice::voip;
namespace au = easyvoice::audio;
namespace et = easyvoice::testing;
using namespace std::chrono_literals;

namespace {

// Records each datagram with the clock reading at send time.
class RecordingSink final : public vp::PacketSink {
 public:
  explicit RecordingSink(const vp::Clock& clock) : clock_(clock) {}
  void send(std::span<const std::uint8_t> datagram) override {
    if (fail_after && sent.size() >= *fail_after) throw vp::TransportError("network unreachable");
    times.push_back(clock_.now());
    sent.push_back(vp::parse_rtp(datagram));
  }
  std::vector<vp::Clock::duration> times;
  std::vector<vp::RtpPacket> sent;
  std::optional<std::size_t> fail_after;

 private:
  const vp::Clock& clock_;
};

vp::CallSession session() {
  vp::CallSession s;
  s.peer = {"127.0.0.1", 4000};
  s.ssrc = 42;
  s.next_sequence = 7;
  s.next_timestamp = 1000;
  s.state = vp::SessionState::Streaming;
  return s;
}

au::AudioBuffer tone(std::size_t samples) { return au::AudioBuffer(8000, et::sine(440.0, 8000.0, samples, 9000.0)); }

}  // namespace

TEST(Stream, PacedAtTwentyMilliseconds) {
  vp::SimulatedClock clock;
  RecordingSink sink(clock);
  auto s = session();
  auto packets = vp::packetize(s, tone(8000));
  auto result = vp::stream(s, packets, sink, clock);
  EXPECT_EQ(result.sent, 50u);
  EXPECT_FALSE(result.error);
  ASSERT_EQ(sink.times.size(), 50u);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(sink.times[i], std::chrono::milliseconds(20 * i));
}

TEST(Stream, SendFailureStopsAndGoesIdle) {
  vp::SimulatedClock clock;
  RecordingSink sink(clock);
  sink.fail_after = 3;
  auto s = session();
  auto packets = vp::packetize(s, tone(1600));
  auto result = vp::stream(s, packets, sink, clock);
  EXPECT_EQ(result.sent, 3u);
  ASSERT_TRUE(result.error);
  EXPECT_EQ(result.session.state, vp::SessionState::Idle);
}

TEST(Stream, WallClockPacing) {
  vp::SteadyClock clock;
  RecordingSink sink(clock);
  auto s = session();
  auto packets = vp::packetize(s, tone(4000));
  vp::stream(s, packets, sink, clock);
  ASSERT_EQ(sink.times.size(), 25u);
  const auto start = sink.times.front();
  std::vector<double> late_ms;
  for (std::size_t i = 0; i < sink.times.size(); ++i) {
    const auto due = start + std::chrono::milliseconds(20 * i);
    const auto d = std::chrono::duration<double, std::milli>(sink.times[i] - due).count();
    EXPECT_GE(d, 0.0);
    late_ms.push_back(d);
  }
  std::sort(late_ms.begin(), late_ms.end());
  EXPECT_LE(late_ms[late_ms.size() / 2], 5.0);
}

TEST(Streamer, IdleSendsSilenceKeepalive) {
  vp::SimulatedClock clock;
  RecordingSink sink(clock);
  vp::Streamer streamer(session(), sink, clock);
  while (sink.times.empty() || sink.times.back() + vp::kFramePeriod < 100ms) ASSERT_TRUE(streamer.step());
  ASSERT_EQ(sink.sent.size(), 5u);
  for (const auto& p : sink.sent) {
    EXPECT_FALSE(p.marker);
    EXPECT_EQ(p.payload, std::vector<std::uint8_t>(160, vp::kMulawSilence));
  }
  EXPECT_EQ(sink.times.back(), 80ms);
}

TEST(Streamer, BackToBackUtterancesStayContinuous) {
  vp::SimulatedClock clock;
  RecordingSink sink(clock);
  vp::Streamer streamer(session(), sink, clock);
  const auto first = tone(8000);
  const auto second = tone(8000);
  streamer.speak(first);
  for (int i = 0; i < 50; ++i) streamer.step();
  EXPECT_TRUE(streamer.idle());
  for (int i = 0; i < 5; ++i) streamer.step();  // gap
  streamer.speak(second);
  for (int i = 0; i < 50; ++i) streamer.step();

  ASSERT_EQ(sink.sent.size(), 105u);
  auto report = vp::assemble(sink.sent);
  EXPECT_EQ(report.packets_received, 105u);
  EXPECT_EQ(report.packets_lost, 0u);
  for (std::size_t i = 1; i < report.frames.size(); ++i) {
    EXPECT_EQ(report.frames[i].timestamp, report.frames[i - 1].timestamp + 160u);
    EXPECT_EQ(report.frames[i].sequence, static_cast<std::uint16_t>(report.frames[i - 1].sequence + 1));
  }
  EXPECT_TRUE(report.frames[0].marker);
  EXPECT_TRUE(report.frames[55].marker);
  const auto audio = report.audio.samples();
  for (std::size_t i = 50 * 160; i < 55 * 160; ++i) ASSERT_EQ(audio[i], 0);
  for (std::size_t i = 0; i < 8000; ++i) {
    ASSERT_EQ(audio[i], vp::mulaw_decode(vp::mulaw_encode(first.samples()[i])));
    ASSERT_EQ(audio[55 * 160 + i], vp::mulaw_decode(vp::mulaw_encode(second.samples()[i])));
  }
}

TEST(Streamer, SendErrorGoesIdleAndNotifies) {
  vp::SimulatedClock clock;
  RecordingSink sink(clock);
  sink.fail_after = 2;
  vp::Streamer streamer(session(), sink, clock);
  std::string reported;
  streamer.on_error([&](const std::string& e) { reported = e; });
  EXPECT_TRUE(streamer.step());
  EXPECT_TRUE(streamer.step());
  EXPECT_FALSE(streamer.step());
  EXPECT_EQ(streamer.session().state, vp::SessionState::Idle);
  EXPECT_EQ(reported, "network unreachable");
  EXPECT_FALSE(streamer.step());
}

TEST(Streamer, RejectsWrongRate) {
  vp::SimulatedClock clock;
  RecordingSink sink(clock);
  vp::Streamer streamer(session(), sink, clock);
  EXPECT_THROW(streamer.speak(au::AudioBuffer(16000, {1})), au::AudioError);
}

TEST(Streamer, HangUpStops) {
  vp::SimulatedClock clock;
  RecordingSink sink(clock);
  vp::Streamer streamer(session(), sink, clock);
  streamer.hang_up();
  EXPECT_FALSE(streamer.step());
  EXPECT_EQ(streamer.session().state, vp::SessionState::Idle);
}
