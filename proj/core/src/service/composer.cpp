#include "easyvoice/service/composer.hpp"

#include <filesystem>

#include "easyvoice/speech/resample.hpp"
#include "easyvoice/textaccel/text_util.hpp"

namespace easyvoice::service {

namespace {

std::size_t index_field(const json& m, const char* key) {
  if (!m.contains(key) || !m[key].is_number_integer()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
  }
  const auto v = m[key].get<std::int64_t>();
  if (v < 0) throw std::invalid_argument(std::string("field '") + key + "' must not be negative");
  return static_cast<std::size_t>(v);
}

std::string string_field(const json& m, const char* key) {
  if (!m.contains(key) || !m[key].is_string()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be a string");
  }
  return m[key].get<std::string>();
}

bool exists(const std::string& path) { return !path.empty() && std::filesystem::exists(path); }

}  // namespace

SynthOutcome render_speech(speech::Synthesizer& synth, std::string_view expanded) {
  try {
    return speech::resample_linear(synth.synthesize(expanded), audio::kTelephonyRate);
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
}

ComposerResources load_resources(const AppConfig& cfg) {
  ComposerResources r;
  const auto& f = cfg.features;
  if (f.completion_on || exists(cfg.dict_path)) r.dictionary = textaccel::load_dictionary_file(cfg.dict_path);
  if ((f.abbrev_on && !cfg.abbrev_path.empty()) || exists(cfg.abbrev_path)) {
    r.abbreviations = textaccel::load_abbreviations_file(cfg.abbrev_path);
  }
  r.abbrev_path = cfg.abbrev_path;
  if (!cfg.archive_path.empty()) r.archive = textaccel::load_archive_file(cfg.archive_path);
  r.archive_path = cfg.archive_path;
  if (!cfg.layout_path.empty()) r.layout = scankb::load_layout_file(cfg.layout_path);
  return r;
}

Composer::Composer(ComposerResources resources, FeatureFlags features, scankb::ScanConfig scan,
                   std::unique_ptr<speech::Synthesizer> synth, SpeechOutput* output)
    : resources_(std::move(resources)),
      features_(features),
      scan_config_(scan),
      synth_(std::move(synth)),
      output_(output) {
  scan_config_.validate();
  if (!synth_) throw std::invalid_argument("composer needs a synthesizer");
  if (!resources_.layout.is_group()) throw scankb::LayoutError("layout root must be a group");
  refresh_suggestions();
}

std::vector<json> Composer::handle_client_text(std::string_view raw) {
  json message;
  try {
    message = json::parse(raw);
  } catch (const json::exception& e) {
    return {msg::error(std::string("malformed JSON: ") + e.what())};
  }
  return handle_client_message(message);
}

std::vector<json> Composer::handle_client_message(const json& m) {
  if (!m.is_object() || !m.contains("kind") || !m["kind"].is_string()) {
    return {msg::error("message must be an object with a string 'kind'")};
  }
  const auto kind = m["kind"].get<std::string>();
  try {
    if (kind == "type_text") return on_type_text(m);
    if (kind == "press_switch") return on_press_switch();
    if (kind == "pick_suggestion") return on_pick_suggestion(m);
    if (kind == "pick_archive") return on_pick_archive(m);
    if (kind == "speak") return on_speak(m);
    if (kind == "set_feature") return on_set_feature(m);
    if (kind == "define_abbrev") return on_define_abbrev(m);
    if (kind == "get_state") return {snapshot()};
  } catch (const std::exception& e) {
    return {msg::error(e.what(), kind)};
  }
  return {msg::error("unknown message kind '" + kind + "'", kind)};
}

std::vector<json> Composer::on_type_text(const json& m) { return set_text(string_field(m, "text")); }

std::vector<json> Composer::on_press_switch() {
  if (!features_.scankb_on) return {msg::error("scanning keyboard is off", "press_switch")};
  auto [next, action] = scankb::press(resources_.layout, scan_);
  scan_ = std::move(next);
  std::vector<json> out{msg::scan_state(resources_.layout, scan_)};
  if (action) {
    auto more = apply_action(*action);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

std::vector<json> Composer::apply_action(const scankb::KeyAction& action) {
  using namespace scankb;
  if (const auto* a = std::get_if<AppendChar>(&action)) return set_text(text_ + a->character);
  if (std::holds_alternative<Space>(action)) return set_text(text_ + " ");
  if (std::holds_alternative<Backspace>(action)) {
    return set_text(text_.substr(0, text_.size() - textaccel::last_codepoint_length(text_)));
  }
  if (std::holds_alternative<Speak>(action)) return speak(text_);
  const auto& toggle = std::get<ToggleFeature>(action);
  const std::string name(feature_name(toggle.feature));
  return on_set_feature(json{{"kind", "set_feature"}, {name, !features_.enabled(toggle.feature)}});
}

std::vector<json> Composer::on_pick_suggestion(const json& m) {
  if (!features_.completion_on) return {msg::error("word completion is off", "pick_suggestion")};
  const auto index = index_field(m, "index");
  if (index >= suggestions_.size()) {
    return {msg::error("suggestion index " + std::to_string(index) + " out of range", "pick_suggestion")};
  }
  const auto prefix_len = current_prefix().size();
  return set_text(text_.substr(0, text_.size() - prefix_len) + suggestions_[index] + " ");
}

std::vector<json> Composer::on_pick_archive(const json& m) {
  if (!features_.archive_on) return {msg::error("message archive is off", "pick_archive")};
  const auto index = index_field(m, "index");
  if (index >= resources_.archive.size()) {
    return {msg::error("archive index " + std::to_string(index) + " out of range", "pick_archive")};
  }
  auto message = resources_.archive.pick(index);
  std::vector<json> out{msg::archive(resources_.archive)};
  persist_archive(out);
  auto more = set_text(std::move(message));
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<json> Composer::on_speak(const json& m) {
  if (m.contains("text")) return speak(string_field(m, "text"));
  return speak(text_);
}

std::vector<json> Composer::on_set_feature(const json& m) {
  auto flags = features_;
  const bool nested = m.contains("features") && m["features"].is_object();
  const auto touched = apply_feature_json(flags, nested ? m["features"] : m);
  if (touched.empty()) return {msg::error("set_feature names no known feature", "set_feature")};
  const auto before = features_;
  features_ = flags;

  std::vector<json> out{msg::features(features_)};
  if (before.completion_on != features_.completion_on) {
    refresh_suggestions();
    out.push_back(msg::suggestions(suggestions_));
  }
  if (before.scankb_on != features_.scankb_on) {
    scan_ = {};
    if (features_.scankb_on) out.push_back(msg::scan_state(resources_.layout, scan_));
  }
  if (!before.archive_on && features_.archive_on) out.push_back(msg::archive(resources_.archive));
  return out;
}

std::vector<json> Composer::on_define_abbrev(const json& m) {
  const auto abbr = string_field(m, "abbr");
  const auto expansion = string_field(m, "expansion");
  auto table = resources_.abbreviations;
  table.define(abbr, expansion);
  resources_.abbreviations = std::move(table);
  std::vector<json> out{msg::abbreviations(resources_.abbreviations)};
  if (!resources_.abbrev_path.empty()) {
    try {
      textaccel::save_abbreviations_file(resources_.abbreviations, resources_.abbrev_path);
    } catch (const std::exception& e) {
      out.push_back(msg::error(std::string("could not save abbreviations: ") + e.what(), "define_abbrev"));
    }
  }
  return out;
}

std::variant<PreparedSpeech, json> Composer::prepare_speak(std::string_view text) {
  using Result = std::variant<PreparedSpeech, json>;
  if (textaccel::trim(text).empty()) return Result(std::in_place_type<json>, msg::error("nothing to speak", "speak"));
  if (output_ == nullptr) {
    return Result(std::in_place_type<json>, msg::error("no call session configured", "speak"));
  }
  PreparedSpeech p{std::string(text), std::string(text)};
  if (features_.abbrev_on) p.expanded = textaccel::expand_abbreviations(resources_.abbreviations, text);
  return p;
}

std::vector<json> Composer::speak(std::string_view text) {
  auto prepared = prepare_speak(text);
  if (auto* error = std::get_if<json>(&prepared)) return {std::move(*error)};
  auto& p = std::get<PreparedSpeech>(prepared);
  if (dispatcher_) {
    auto expanded = p.expanded;
    dispatcher_(std::move(p));
    return {msg::speaking(expanded)};
  }
  return finish_speak(p, render_speech(*synth_, p.expanded));
}

std::vector<json> Composer::finish_speak(const PreparedSpeech& prepared, const SynthOutcome& outcome) {
  if (const auto* failure = std::get_if<std::string>(&outcome)) {
    return {msg::error("speech synthesis failed: " + *failure, "speak")};
  }
  const auto& pcm = std::get<audio::AudioBuffer>(outcome);
  if (output_ == nullptr) return {msg::error("no call session configured", "speak")};
  try {
    output_->play(pcm);
  } catch (const std::exception& e) {
    return {msg::error(std::string("could not send audio: ") + e.what(), "speak")};
  }

  msg::SpeakAck ack{prepared.text, prepared.expanded, pcm.duration_ms(), pcm.size()};
  std::vector<json> out{msg::spoken(ack)};
  if (features_.archive_on) {
    resources_.archive.add(prepared.text);
    out.push_back(msg::archive(resources_.archive));
    persist_archive(out);
  }
  if (text_ == prepared.text) {
    auto more = set_text("");
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

void Composer::set_speak_dispatcher(std::function<void(PreparedSpeech)> dispatcher) {
  dispatcher_ = std::move(dispatcher);
}

std::optional<json> Composer::tick_scanner(std::int64_t dt_ms) {
  if (!features_.scankb_on || dt_ms <= 0) return std::nullopt;
  scan_ = scankb::tick(resources_.layout, std::move(scan_), scan_config_, dt_ms);
  return std::optional<json>(std::in_place, msg::scan_state(resources_.layout, scan_));
}

json Composer::snapshot() const {
  json scan = nullptr;
  if (features_.scankb_on) {
    scan = msg::scan_state(resources_.layout, scan_);
    scan.erase("kind");
  }
  return {{"kind", "state"},
          {"text", text_},
          {"suggestions", suggestions_},
          {"archive", features_.archive_on ? json(resources_.archive.messages()) : json::array()},
          {"scan", scan},
          {"scan_period_ms", scan_config_.scan_period_ms},
          {"layout", scankb::layout_to_json(resources_.layout)},
          {"features", to_json(features_)},
          {"abbreviations", msg::abbreviations(resources_.abbreviations)["entries"]},
          {"call", output_ != nullptr ? output_->status() : "none"},
          {"synth", synth_->name()}};
}

std::vector<json> Composer::set_text(std::string text) {
  text_ = std::move(text);
  refresh_suggestions();
  return {msg::text(text_), msg::suggestions(suggestions_)};
}

void Composer::refresh_suggestions() {
  if (!features_.completion_on) {
    suggestions_.clear();
    return;
  }
  suggestions_ = resources_.dictionary.complete(current_prefix());
  ++completion_queries_;
}

std::string Composer::current_prefix() const {
  std::size_t start = text_.size();
  while (start > 0 && !textaccel::is_delimiter(text_[start - 1])) --start;
  return text_.substr(start);
}

void Composer::persist_archive(std::vector<json>& out) {
  if (resources_.archive_path.empty()) return;
  try {
    textaccel::save_archive_file(resources_.archive, resources_.archive_path);
  } catch (const std::exception& e) {
    out.push_back(msg::error(std::string("could not save archive: ") + e.what()));
  }
}

}  // namespace easyvoice::service
