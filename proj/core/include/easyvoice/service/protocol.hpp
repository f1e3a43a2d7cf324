#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "easyvoice/scankb/scanner.hpp"
#include "easyvoice/service/features.hpp"
#include "easyvoice/textaccel/abbreviations.hpp"
#include "easyvoice/textaccel/archive.hpp"

// JSON messages exchanged with UI clients over /ws. Every message is an
// object with a "kind" field.
namespace easyvoice::service::msg {

using nlohmann::json;

inline constexpr std::array<std::string_view, 8> kClientKinds = {
    "type_text", "press_switch", "pick_suggestion", "pick_archive", "speak", "set_feature", "define_abbrev", "get_state"};

struct SpeakAck {
  std::string text;      // as typed
  std::string expanded;  // what was synthesized
  std::int64_t duration_ms = 0;
  std::size_t samples = 0;  // at 8 kHz
};

json error(std::string_view detail, std::string_view request_kind = {});
json text(std::string_view current);
json suggestions(const std::vector<std::string>& words);
json archive(const textaccel::MessageArchive& archive);
json scan_state(const scankb::ScanNode& layout, const scankb::ScanState& state);
json features(const FeatureFlags& flags);
json spoken(const SpeakAck& ack);
json speaking(std::string_view expanded);
json abbreviations(const textaccel::AbbreviationTable& table);
json call(std::string_view state, std::string_view detail = {});

bool is_error(const json& message);

}  // namespace easyvoice::service::msg
