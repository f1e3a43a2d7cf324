#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "easyvoice/service/config.hpp"
#include "easyvoice/voipbridge/loopback.hpp"

namespace easyvoice::service {

struct SpeakOnceResult {
  std::string expanded;
  std::int64_t duration_ms = 0;
  std::size_t samples = 0;
  std::size_t packets = 0;
  std::uint32_t ssrc = 0;
  std::uint16_t first_sequence = 0;
  std::uint32_t first_timestamp = 0;
};

/// One utterance to cfg.peer without the UI: expand (when enabled),
/// synthesize, resample, packetize and send paced at 20 ms. Throws on any
/// failure.
SpeakOnceResult speak_once(const AppConfig& cfg, std::string_view text);

nlohmann::json to_json(const SpeakOnceResult& r);
nlohmann::json report_to_json(const voip::ReceiveReport& report);

/// Writes received.wav and stats.json into dir.
void write_loopback_outputs(const voip::ReceiveReport& report, const std::string& dir);

}  // namespace easyvoice::service
