#include "easyvoice/voipbridge/streamer.hpp"

namespace easyvoice::voip {

namespace {

// Beyond this lag the schedule restarts from now instead of bursting.
constexpr Clock::duration kMaxLag = std::chrono::milliseconds(200);

}  // namespace

StreamResult stream(CallSession session, std::span<const RtpPacket> packets, PacketSink& sink, Clock& clock) {
  StreamResult result{std::move(session), 0, std::nullopt};
  result.session.state = SessionState::Streaming;
  const auto start = clock.now();
  for (std::size_t i = 0; i < packets.size(); ++i) {
    clock.sleep_until(start + static_cast<long>(i) * kFramePeriod);
    try {
      sink.send(serialize_rtp(packets[i]));
    } catch (const TransportError& e) {
      result.session.state = SessionState::Idle;
      result.error = e.what();
      return result;
    }
    ++result.sent;
  }
  return result;
}

Streamer::Streamer(CallSession session, PacketSink& sink, Clock& clock)
    : session_(std::move(session)), sink_(sink), clock_(clock) {
  session_.state = SessionState::Streaming;
}

void Streamer::speak(audio::AudioBuffer utterance) {
  if (utterance.sample_rate_hz() != audio::kTelephonyRate) {
    throw audio::AudioError("streamer needs 8000 Hz audio, got " + std::to_string(utterance.sample_rate_hz()) + " Hz");
  }
  std::lock_guard lock(mu_);
  queue_.push_back(std::move(utterance));
}

void Streamer::hang_up() {
  stopped_ = true;
  std::lock_guard lock(mu_);
  session_.state = SessionState::Idle;
}

bool Streamer::step() {
  if (stopped_) return false;
  Clock::duration due;
  {
    std::lock_guard lock(mu_);
    const auto now = clock_.now();
    if (!next_send_ || now - *next_send_ > kMaxLag) next_send_ = now;
    due = *next_send_;
  }
  clock_.sleep_until(due);
  if (stopped_) return false;

  std::vector<std::uint8_t> datagram;
  {
    std::lock_guard lock(mu_);
    if (current_pos_ >= current_.size() && !queue_.empty()) {
      current_ = packetize(session_, queue_.front());
      current_pos_ = 0;
      queue_.pop_front();
    }
    if (current_pos_ < current_.size()) {
      datagram = serialize_rtp(current_[current_pos_++]);
    } else {
      datagram = serialize_rtp(silence_packet(session_));
    }
    *next_send_ += kFramePeriod;
  }

  try {
    sink_.send(datagram);
  } catch (const TransportError& e) {
    std::function<void(const std::string&)> handler;
    {
      std::lock_guard lock(mu_);
      session_.state = SessionState::Idle;
      error_ = e.what();
      handler = on_error_;
    }
    stopped_ = true;
    if (handler) handler(e.what());
    return false;
  }
  return true;
}

void Streamer::run() {
  while (step()) {
  }
}

CallSession Streamer::session() const {
  std::lock_guard lock(mu_);
  return session_;
}

std::optional<std::string> Streamer::error() const {
  std::lock_guard lock(mu_);
  return error_;
}

std::size_t Streamer::queued_utterances() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

bool Streamer::idle() const {
  std::lock_guard lock(mu_);
  return queue_.empty() && current_pos_ >= current_.size();
}

void Streamer::on_error(std::function<void(const std::string&)> handler) {
  std::lock_guard lock(mu_);
  on_error_ = std::move(handler);
}

}  // namespace easyvoice::voip
