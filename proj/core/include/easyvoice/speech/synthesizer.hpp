#pragma once

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "easyvoice/audio/audio_buffer.hpp"
#include "easyvoice/speech/tone_synth.hpp"

namespace easyvoice::speech {

class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Synthesizer {
 public:
  virtual ~Synthesizer() = default;
  /// Throws SynthesisError (or WavError for a malformed engine output).
  virtual audio::AudioBuffer synthesize(std::string_view text) = 0;
  virtual std::string name() const = 0;
};

class ToneSynthesizer final : public Synthesizer {
 public:
  explicit ToneSynthesizer(ToneSynthConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }
  audio::AudioBuffer synthesize(std::string_view text) override { return synthesize_tone(text, cfg_); }
  std::string name() const override { return "tone"; }
  const ToneSynthConfig& config() const noexcept { return cfg_; }

 private:
  ToneSynthConfig cfg_;
};

// Command line for an external engine. The template is split into words
// (single and double quotes group, no other shell syntax) and `{text}` /
// `{out}` are substituted inside each word, so the text always reaches the
// engine as part of one argument.
struct ExternalSynthSpec {
  std::string command_template;
  std::chrono::milliseconds timeout{10000};

  /// Throws SynthesisError when a placeholder is missing or quoting is unbalanced.
  void validate() const;
};

std::vector<std::string> split_command_template(std::string_view tmpl);
std::vector<std::string> expand_command(const ExternalSynthSpec& spec, std::string_view text, std::string_view out_path);

/// Runs the engine and parses the WAV it writes to `{out}`. Blocks until
/// the process exits or the timeout kills it.
audio::AudioBuffer synthesize_external(const ExternalSynthSpec& spec, std::string_view text);

class ExternalSynthesizer final : public Synthesizer {
 public:
  explicit ExternalSynthesizer(ExternalSynthSpec spec) : spec_(std::move(spec)) { spec_.validate(); }
  audio::AudioBuffer synthesize(std::string_view text) override { return synthesize_external(spec_, text); }
  std::string name() const override { return "cmd:" + spec_.command_template; }

 private:
  ExternalSynthSpec spec_;
};

/// "tone" or "cmd:<template>".
std::unique_ptr<Synthesizer> make_synthesizer(std::string_view choice, const ToneSynthConfig& tone = {},
                                              std::chrono::milliseconds timeout = std::chrono::milliseconds{10000});

}  // namespace easyvoice::speech
