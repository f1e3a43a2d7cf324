#include "easyvoice/voipbridge/loopback.hpp"

#include "easyvoice/voipbridge/mulaw.hpp"

namespace easyvoice::voip {

ReceiveAssembler::ReceiveAssembler(std::size_t reorder_window) : window_(reorder_window) {}

void ReceiveAssembler::push_datagram(std::span<const std::uint8_t> datagram) {
  try {
    push(parse_rtp(datagram));
  } catch (const RtpError&) {
    ++report_.ignored;
  }
}

void ReceiveAssembler::push(const RtpPacket& packet) {
  if (packet.payload_type != kPayloadTypePcmu || packet.payload.size() != kFrameSamples ||
      (report_.ssrc && *report_.ssrc != packet.ssrc)) {
    ++report_.ignored;
    return;
  }
  if (!started_) {
    started_ = true;
    report_.ssrc = packet.ssrc;
    next_ = highest_ = packet.sequence;
  }
  // Extend the 16-bit sequence relative to the highest one seen.
  const auto delta = static_cast<std::int16_t>(static_cast<std::uint16_t>(packet.sequence - static_cast<std::uint16_t>(highest_)));
  const std::int64_t ext = highest_ + delta;

  if (ext < highest_) ++report_.out_of_order;
  if (ext < next_) {
    // Its slot was already played out (or predates the first packet).
    const auto back = static_cast<std::size_t>(next_ - ext);
    if (back > report_.frames.size() || report_.frames[report_.frames.size() - back].concealed) {
      ++report_.late;
    } else {
      ++report_.duplicates;
    }
    return;
  }
  if (!pending_.emplace(ext, packet).second) {
    ++report_.duplicates;
    return;
  }
  if (ext > highest_) highest_ = ext;
  drain(false);
}

void ReceiveAssembler::place(std::int64_t ext_seq, const RtpPacket* packet) {
  PlacedFrame frame;
  frame.sequence = static_cast<std::uint16_t>(ext_seq);
  auto& samples = report_.audio.mutable_samples();
  if (packet != nullptr) {
    frame.timestamp = packet->timestamp;
    frame.marker = packet->marker;
    const auto decoded = mulaw_decode(packet->payload);
    samples.insert(samples.end(), decoded.begin(), decoded.end());
    ++report_.packets_received;
  } else {
    frame.timestamp = last_timestamp_ + static_cast<std::uint32_t>(kFrameSamples);
    frame.concealed = true;
    samples.insert(samples.end(), kFrameSamples, mulaw_decode(kMulawSilence));
    ++report_.packets_lost;
  }
  last_timestamp_ = frame.timestamp;
  report_.frames.push_back(frame);
  ++next_;
}

void ReceiveAssembler::drain(bool all) {
  while (!pending_.empty()) {
    auto it = pending_.begin();
    if (it->first == next_) {
      place(next_, &it->second);
      pending_.erase(it);
    } else if (all || highest_ - next_ >= static_cast<std::int64_t>(window_)) {
      place(next_, nullptr);
    } else {
      break;
    }
  }
}

ReceiveReport ReceiveAssembler::finish() {
  drain(true);
  ReceiveReport out = std::move(report_);
  *this = ReceiveAssembler(window_);
  return out;
}

ReceiveReport assemble(std::span<const RtpPacket> arrivals, std::size_t reorder_window) {
  ReceiveAssembler assembler(reorder_window);
  for (const auto& p : arrivals) assembler.push(p);
  return assembler.finish();
}

ReceiveReport run_loopback_peer(UdpReceiver& rx, const LoopbackOptions& options) {
  using namespace std::chrono;
  ReceiveAssembler assembler;
  const auto start = steady_clock::now();
  const auto deadline = start + options.duration;
  std::optional<steady_clock::time_point> last_packet;
  while (true) {
    const auto now = steady_clock::now();
    if (now >= deadline) break;
    auto wait = duration_cast<milliseconds>(deadline - now);
    if (last_packet && options.idle_exit.count() > 0) {
      const auto quiet_until = *last_packet + options.idle_exit;
      if (now >= quiet_until) break;
      wait = std::min(wait, duration_cast<milliseconds>(quiet_until - now) + milliseconds(1));
    }
    if (auto datagram = rx.receive(std::min(wait, milliseconds(100)))) {
      assembler.push_datagram(*datagram);
      last_packet = steady_clock::now();
    }
  }
  return assembler.finish();
}

ReceiveReport run_loopback_peer(std::uint16_t port, std::chrono::milliseconds duration) {
  UdpReceiver rx(port);
  return run_loopback_peer(rx, LoopbackOptions{duration, std::chrono::milliseconds(0)});
}

}  // namespace easyvoice::voip
