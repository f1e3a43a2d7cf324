#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "easyvoice/audio/audio_buffer.hpp"
#include "easyvoice/scankb/layout.hpp"
#include "easyvoice/scankb/scanner.hpp"
#include "easyvoice/service/config.hpp"
#include "easyvoice/service/features.hpp"
#include "easyvoice/service/protocol.hpp"
#include "easyvoice/speech/synthesizer.hpp"
#include "easyvoice/textaccel/abbreviations.hpp"
#include "easyvoice/textaccel/archive.hpp"
#include "easyvoice/textaccel/dictionary.hpp"

namespace easyvoice::service {

using json = nlohmann::json;

/// Where finished 8 kHz utterances go; in production the RTP streamer.
class SpeechOutput {
 public:
  virtual ~SpeechOutput() = default;
  virtual void play(const audio::AudioBuffer& pcm_8k) = 0;
  /// "streaming", "idle", ...; shown in state snapshots.
  virtual std::string status() const { return "streaming"; }
};

/// Text accepted for speaking, with abbreviations already applied.
struct PreparedSpeech {
  std::string text;
  std::string expanded;
};

/// 8 kHz audio, or the reason synthesis failed.
using SynthOutcome = std::variant<audio::AudioBuffer, std::string>;

/// Synthesize and bring to 8 kHz. Never throws.
SynthOutcome render_speech(speech::Synthesizer& synth, std::string_view expanded);

struct ComposerResources {
  textaccel::FrequencyDictionary dictionary;
  textaccel::AbbreviationTable abbreviations;
  textaccel::MessageArchive archive;
  scankb::ScanNode layout = scankb::default_layout();
  std::string archive_path;  // persisted on change when set
  std::string abbrev_path;   // rewritten by define_abbrev when set
};

/// Loads files named by cfg for the enabled features.
ComposerResources load_resources(const AppConfig& cfg);

// The single composer session: input text, suggestions, archive and scan
// cursor, mutated only through client messages and scanner ticks. Not
// thread-safe; the owner serializes all calls.
class Composer {
 public:
  Composer(ComposerResources resources, FeatureFlags features, scankb::ScanConfig scan,
           std::unique_ptr<speech::Synthesizer> synth, SpeechOutput* output);

  /// Applies one client message and returns the messages to send back.
  /// Malformed input yields a single error message and no state change.
  std::vector<json> handle_client_message(const json& message);
  std::vector<json> handle_client_text(std::string_view raw);

  /// Full pipeline, synchronous unless a speak dispatcher is installed.
  std::vector<json> speak(std::string_view text);

  /// Advances the scanner; nothing happens while scanning is off.
  std::optional<json> tick_scanner(std::int64_t dt_ms);

  /// Validates and expands text. Returns an error message on rejection.
  std::variant<PreparedSpeech, json> prepare_speak(std::string_view text);
  /// Second half of speak: hands audio to the output, archives, clears input.
  std::vector<json> finish_speak(const PreparedSpeech& prepared, const SynthOutcome& outcome);

  /// Installs asynchronous synthesis. The dispatcher must eventually call
  /// finish_speak on the composer's owning thread.
  void set_speak_dispatcher(std::function<void(PreparedSpeech)> dispatcher);

  json snapshot() const;

  const std::string& text() const noexcept { return text_; }
  const std::vector<std::string>& suggestions() const noexcept { return suggestions_; }
  const textaccel::MessageArchive& archive() const noexcept { return resources_.archive; }
  const textaccel::AbbreviationTable& abbreviations() const noexcept { return resources_.abbreviations; }
  const scankb::ScanState& scan_state() const noexcept { return scan_; }
  const scankb::ScanNode& layout() const noexcept { return resources_.layout; }
  const FeatureFlags& features() const noexcept { return features_; }
  speech::Synthesizer& synthesizer() noexcept { return *synth_; }

  /// Number of dictionary lookups performed so far.
  std::size_t completion_queries() const noexcept { return completion_queries_; }

 private:
  std::vector<json> on_type_text(const json& m);
  std::vector<json> on_press_switch();
  std::vector<json> on_pick_suggestion(const json& m);
  std::vector<json> on_pick_archive(const json& m);
  std::vector<json> on_speak(const json& m);
  std::vector<json> on_set_feature(const json& m);
  std::vector<json> on_define_abbrev(const json& m);

  std::vector<json> apply_action(const scankb::KeyAction& action);
  std::vector<json> set_text(std::string text);
  void refresh_suggestions();
  std::string current_prefix() const;
  void persist_archive(std::vector<json>& out);

  ComposerResources resources_;
  FeatureFlags features_;
  scankb::ScanConfig scan_config_;
  std::unique_ptr<speech::Synthesizer> synth_;
  SpeechOutput* output_;
  std::function<void(PreparedSpeech)> dispatcher_;

  std::string text_;
  std::vector<std::string> suggestions_;
  scankb::ScanState scan_;
  std::size_t completion_queries_ = 0;
};

}  // namespace easyvoice::service
