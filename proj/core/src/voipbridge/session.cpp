#include "easyvoice/voipbridge/session.hpp"

#include <charconv>
#include <random>
#include <stdexcept>

#include "easyvoice/voipbridge/mulaw.hpp"

namespace easyvoice::voip {

Endpoint Endpoint::parse(std::string_view text) {
  std::string_view host;
  std::string_view port;
  if (text.starts_with('[')) {
    const auto close = text.find(']');
    if (close == std::string_view::npos || close + 1 >= text.size() || text[close + 1] != ':') {
      throw std::invalid_argument("malformed endpoint '" + std::string(text) + "'");
    }
    host = text.substr(1, close - 1);
    port = text.substr(close + 2);
  } else {
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("endpoint '" + std::string(text) + "' needs host:port");
    }
    host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (host.empty() || port.empty() || ec != std::errc{} || ptr != port.data() + port.size() || value == 0 ||
      value > 65535) {
    throw std::invalid_argument("malformed endpoint '" + std::string(text) + "'");
  }
  return Endpoint{std::string(host), static_cast<std::uint16_t>(value)};
}

std::string Endpoint::to_string() const {
  if (host.find(':') != std::string::npos) return "[" + host + "]:" + std::to_string(port);
  return host + ":" + std::to_string(port);
}

CallSession CallSession::open(Endpoint peer) {
  std::random_device rd;
  std::mt19937 gen(rd());
  std::uniform_int_distribution<std::uint32_t> dist;
  CallSession s;
  s.peer = std::move(peer);
  s.ssrc = dist(gen);
  s.next_sequence = static_cast<std::uint16_t>(dist(gen));
  s.next_timestamp = dist(gen);
  s.state = SessionState::Streaming;
  return s;
}

namespace {

RtpPacket next_packet(CallSession& session, bool marker) {
  RtpPacket p;
  p.marker = marker;
  p.payload_type = kPayloadTypePcmu;
  p.sequence = session.next_sequence++;
  p.timestamp = session.next_timestamp;
  session.next_timestamp += static_cast<std::uint32_t>(kFrameSamples);
  p.ssrc = session.ssrc;
  return p;
}

}  // namespace

std::vector<RtpPacket> packetize(CallSession& session, const audio::AudioBuffer& buf) {
  if (buf.sample_rate_hz() != audio::kTelephonyRate) {
    throw audio::AudioError("packetize needs 8000 Hz audio, got " + std::to_string(buf.sample_rate_hz()) + " Hz");
  }
  const auto samples = buf.samples();
  const std::size_t frames = (samples.size() + kFrameSamples - 1) / kFrameSamples;
  std::vector<RtpPacket> packets;
  packets.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    auto p = next_packet(session, f == 0);
    const auto chunk = samples.subspan(f * kFrameSamples, std::min(kFrameSamples, samples.size() - f * kFrameSamples));
    p.payload = mulaw_encode(chunk);
    p.payload.resize(kFrameSamples, kMulawSilence);
    packets.push_back(std::move(p));
  }
  return packets;
}

RtpPacket silence_packet(CallSession& session) {
  auto p = next_packet(session, false);
  p.payload.assign(kFrameSamples, kMulawSilence);
  return p;
}

}  // namespace easyvoice::voip
