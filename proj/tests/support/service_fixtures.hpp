#pragma once

// Helpers for driving a Composer in-process.

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "easyvoice/service/composer.hpp"
#include "easyvoice/speech/synthesizer.hpp"
#include "easyvoice/voipbridge/loopback.hpp"
#include "easyvoice/voipbridge/session.hpp"

namespace easyvoice::testing {

using nlohmann::json;

/// Collects every utterance handed to the call.
class RecordingOutput final : public service::SpeechOutput {
 public:
  void play(const audio::AudioBuffer& pcm) override { played.push_back(pcm); }
  std::vector<audio::AudioBuffer> played;
};

class FailingSynth final : public speech::Synthesizer {
 public:
  audio::AudioBuffer synthesize(std::string_view) override { throw speech::SynthesisError("engine crashed"); }
  std::string name() const override { return "failing"; }
};

inline textaccel::FrequencyDictionary small_dictionary() {
  return textaccel::FrequencyDictionary({{"the", 100},
                                         {"this", 50},
                                         {"thing", 10},
                                         {"cat", 70},
                                         {"by", 60},
                                         {"way", 40},
                                         {"hello", 30},
                                         {"help", 20}});
}

inline service::ComposerResources small_resources() {
  service::ComposerResources r;
  r.dictionary = small_dictionary();
  r.abbreviations.define("btw", "by the way");
  return r;
}

inline std::unique_ptr<service::Composer> make_composer(service::FeatureFlags flags, service::SpeechOutput* out,
                                                        service::ComposerResources resources = small_resources(),
                                                        std::unique_ptr<speech::Synthesizer> synth = nullptr) {
  if (!synth) synth = std::make_unique<speech::ToneSynthesizer>();
  return std::make_unique<service::Composer>(std::move(resources), flags, scankb::ScanConfig{1000, 2},
                                             std::move(synth), out);
}

inline std::size_t count_kind(const std::vector<json>& msgs, const std::string& kind) {
  std::size_t n = 0;
  for (const auto& m : msgs) n += m.value("kind", "") == kind ? 1 : 0;
  return n;
}

inline bool is_error_free(const std::vector<json>& msgs) { return count_kind(msgs, "error") == 0; }

inline const json* find_kind(const std::vector<json>& msgs, const std::string& kind) {
  for (const auto& m : msgs) {
    if (m.value("kind", "") == kind) return &m;
  }
  return nullptr;
}

/// What a scripted session produced, per feature.
struct GatingObservation {
  std::vector<json> replies;            // every message the composer sent back
  std::size_t nonempty_suggestions = 0;  // suggestions messages listing any word
  std::size_t completion_queries = 0;
  std::size_t archive_messages = 0;  // "archive" replies
  std::size_t archive_size = 0;
  bool archive_file_written = false;
  std::size_t scan_messages = 0;  // scan_state replies plus scanner ticks
  std::string spoken_expanded;    // expansion reported for "btw"
  std::size_t utterances = 0;
};

/// Types, scans, speaks an abbreviation and recalls the archive, with the
/// given features enabled.
inline GatingObservation run_gating_transcript(service::FeatureFlags flags, const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  const auto archive_path = scratch / "archive.json";
  std::filesystem::remove(archive_path);

  RecordingOutput out;
  auto resources = small_resources();
  resources.archive_path = archive_path.string();
  auto composer = make_composer(flags, &out, std::move(resources));

  GatingObservation obs;
  auto run = [&](const json& m) {
    auto r = composer->handle_client_message(m);
    obs.replies.insert(obs.replies.end(), r.begin(), r.end());
  };
  run({{"kind", "get_state"}});
  run({{"kind", "type_text"}, {"text", "th"}});
  run({{"kind", "pick_suggestion"}, {"index", 0}});
  run({{"kind", "press_switch"}});
  for (int i = 0; i < 3; ++i) {
    if (auto tick = composer->tick_scanner(1000)) obs.replies.push_back(*tick);
  }
  run({{"kind", "press_switch"}});
  run({{"kind", "type_text"}, {"text", "btw"}});
  run({{"kind", "speak"}});
  run({{"kind", "pick_archive"}, {"index", 0}});
  run({{"kind", "speak"}, {"text", "hello there"}});
  run({{"kind", "type_text"}, {"text", "he"}});

  for (const auto& m : obs.replies) {
    const auto kind = m.value("kind", "");
    if (kind == "suggestions" && !m["words"].empty()) ++obs.nonempty_suggestions;
    if (kind == "state" && !m["suggestions"].empty()) ++obs.nonempty_suggestions;
    if (kind == "archive") ++obs.archive_messages;
    if (kind == "state" && !m["archive"].empty()) ++obs.archive_messages;
    if (kind == "scan_state") ++obs.scan_messages;
    if (kind == "state" && !m["scan"].is_null()) ++obs.scan_messages;
    if (kind == "spoken" && obs.spoken_expanded.empty()) obs.spoken_expanded = m["expanded"];
  }
  obs.completion_queries = composer->completion_queries();
  obs.archive_size = composer->archive().size();
  obs.archive_file_written = std::filesystem::exists(archive_path);
  obs.utterances = out.played.size();
  return obs;
}

}  // namespace easyvoice::testing
