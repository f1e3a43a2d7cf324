#include "easyvoice/service/runtime.hpp"

#include <filesystem>
#include <fstream>

#include "easyvoice/service/composer.hpp"
#include "easyvoice/speech/wav.hpp"
#include "easyvoice/textaccel/atomic_file.hpp"
#include "easyvoice/textaccel/text_util.hpp"
#include "easyvoice/voipbridge/streamer.hpp"

namespace easyvoice::service {

SpeakOnceResult speak_once(const AppConfig& cfg, std::string_view text) {
  if (!cfg.peer) throw ConfigError("speak-once needs --peer host:port");
  if (textaccel::trim(text).empty()) throw ConfigError("nothing to speak");

  std::string expanded(text);
  if (cfg.features.abbrev_on && !cfg.abbrev_path.empty()) {
    expanded = textaccel::expand_abbreviations(textaccel::load_abbreviations_file(cfg.abbrev_path), text);
  }
  auto synth = speech::make_synthesizer(cfg.synth, {}, std::chrono::milliseconds(cfg.synth_timeout_ms));
  auto outcome = render_speech(*synth, expanded);
  if (const auto* failure = std::get_if<std::string>(&outcome)) {
    throw speech::SynthesisError("speech synthesis failed: " + *failure);
  }
  const auto& pcm = std::get<audio::AudioBuffer>(outcome);

  auto session = voip::CallSession::open(*cfg.peer);
  SpeakOnceResult r;
  r.expanded = expanded;
  r.duration_ms = pcm.duration_ms();
  r.samples = pcm.size();
  r.ssrc = session.ssrc;
  r.first_sequence = session.next_sequence;
  r.first_timestamp = session.next_timestamp;

  const auto packets = voip::packetize(session, pcm);
  voip::UdpSender sender(*cfg.peer);
  voip::SteadyClock clock;
  const auto sent = voip::stream(session, packets, sender, clock);
  if (sent.error) throw voip::TransportError(*sent.error);
  r.packets = sent.sent;
  return r;
}

nlohmann::json to_json(const SpeakOnceResult& r) {
  return {{"expanded", r.expanded},           {"duration_ms", r.duration_ms},
          {"samples", r.samples},             {"packets", r.packets},
          {"ssrc", r.ssrc},                   {"first_sequence", r.first_sequence},
          {"first_timestamp", r.first_timestamp}};
}

nlohmann::json report_to_json(const voip::ReceiveReport& report) {
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& f : report.frames) {
    frames.push_back({{"sequence", f.sequence}, {"timestamp", f.timestamp}, {"marker", f.marker},
                      {"concealed", f.concealed}});
  }
  nlohmann::json j = {{"packets_received", report.packets_received},
                      {"packets_lost", report.packets_lost},
                      {"out_of_order", report.out_of_order},
                      {"duplicates", report.duplicates},
                      {"late", report.late},
                      {"ignored", report.ignored},
                      {"samples", report.audio.size()},
                      {"sample_rate_hz", report.audio.sample_rate_hz()},
                      {"frames", frames}};
  j["ssrc"] = report.ssrc ? nlohmann::json(*report.ssrc) : nlohmann::json(nullptr);
  return j;
}

void write_loopback_outputs(const voip::ReceiveReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  speech::write_wav_file(report.audio, (base / "received.wav").string());
  textaccel::write_file_atomically((base / "stats.json").string(), report_to_json(report).dump(2) + "\n");
}

}  // namespace easyvoice::service
