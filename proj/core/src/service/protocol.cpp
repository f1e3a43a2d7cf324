#include "easyvoice/service/protocol.hpp"

namespace easyvoice::service::msg {

json error(std::string_view detail, std::string_view request_kind) {
  json j = {{"kind", "error"}, {"detail", detail}};
  if (!request_kind.empty()) j["request"] = request_kind;
  return j;
}

json text(std::string_view current) { return {{"kind", "text"}, {"text", current}}; }

json suggestions(const std::vector<std::string>& words) { return {{"kind", "suggestions"}, {"words", words}}; }

json archive(const textaccel::MessageArchive& archive) {
  return {{"kind", "archive"}, {"messages", archive.messages()}};
}

json scan_state(const scankb::ScanNode& layout, const scankb::ScanState& state) {
  const auto& option = scankb::highlighted(layout, state);
  return {{"kind", "scan_state"},
          {"path", state.path},
          {"cursor", state.cursor},
          {"label", option.label},
          {"group", option.is_group()}};
}

json features(const FeatureFlags& flags) { return {{"kind", "features"}, {"features", to_json(flags)}}; }

json spoken(const SpeakAck& ack) {
  return {{"kind", "spoken"},
          {"text", ack.text},
          {"expanded", ack.expanded},
          {"duration_ms", ack.duration_ms},
          {"samples", ack.samples}};
}

json speaking(std::string_view expanded) { return {{"kind", "speaking"}, {"expanded", expanded}}; }

json abbreviations(const textaccel::AbbreviationTable& table) {
  json entries = json::object();
  for (const auto& [abbr, expansion] : table.entries()) entries[abbr] = expansion;
  return {{"kind", "abbreviations"}, {"entries", entries}};
}

json call(std::string_view state, std::string_view detail) {
  json j = {{"kind", "call"}, {"state", state}};
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

bool is_error(const json& message) {
  return message.is_object() && message.contains("kind") && message["kind"] == "error";
}

}  // namespace easyvoice::service::msg
