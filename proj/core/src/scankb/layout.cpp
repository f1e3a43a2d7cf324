#include "easyvoice/scankb/layout.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "easyvoice/textaccel/text_util.hpp"

namespace easyvoice::scankb {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxDepth = 64;

KeyAction action_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) {
    throw LayoutError(where + ": action must be an object with exactly one key");
  }
  const auto it = j.begin();
  const std::string& kind = it.key();
  const json& value = it.value();
  if (kind == "append") {
    if (!value.is_string()) throw LayoutError(where + ": append expects a string");
    try {
      return make_append(value.get<std::string>());
    } catch (const LayoutError& e) {
      throw LayoutError(where + ": " + e.what());
    }
  }
  if (kind == "space") return Space{};
  if (kind == "backspace") return Backspace{};
  if (kind == "speak") return Speak{};
  if (kind == "toggle") {
    const auto f = value.is_string() ? feature_from_name(value.get<std::string>()) : std::nullopt;
    if (!f) throw LayoutError(where + ": toggle expects one of archive, completion, abbrev, scankb");
    return ToggleFeature{*f};
  }
  throw LayoutError(where + ": unknown action kind '" + kind + "'");
}

json action_to_json(const KeyAction& action) {
  return std::visit(
      [](const auto& a) -> json {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AppendChar>) return {{"append", a.character}};
        if constexpr (std::is_same_v<T, Space>) return {{"space", true}};
        if constexpr (std::is_same_v<T, Backspace>) return {{"backspace", true}};
        if constexpr (std::is_same_v<T, Speak>) return {{"speak", true}};
        if constexpr (std::is_same_v<T, ToggleFeature>) return {{"toggle", std::string(feature_name(a.feature))}};
      },
      action);
}

ScanNode node_from_json(const json& j, const std::string& where, std::size_t depth) {
  if (depth > kMaxDepth) throw LayoutError(where + ": layout nested deeper than 64 levels");
  if (!j.is_object()) throw LayoutError(where + ": node must be an object");
  if (!j.contains("label") || !j["label"].is_string()) throw LayoutError(where + ": node needs a string label");
  const auto label = j["label"].get<std::string>();
  const auto here = where + "/" + label;

  const bool has_children = j.contains("children");
  const bool has_action = j.contains("action");
  if (has_children == has_action) throw LayoutError(here + ": node needs exactly one of children or action");

  if (has_action) return ScanNode::leaf(label, action_from_json(j["action"], here));

  const auto& kids = j["children"];
  if (!kids.is_array()) throw LayoutError(here + ": children must be an array");
  if (kids.empty()) throw LayoutError(here + ": group has no children");
  std::vector<ScanNode> children;
  children.reserve(kids.size());
  for (const auto& k : kids) children.push_back(node_from_json(k, here, depth + 1));
  return ScanNode::group(label, std::move(children));
}

}  // namespace

std::string_view feature_name(Feature f) noexcept {
  switch (f) {
    case Feature::Archive: return "archive";
    case Feature::Completion: return "completion";
    case Feature::Abbrev: return "abbrev";
    case Feature::Scankb: return "scankb";
  }
  return "";
}

std::optional<Feature> feature_from_name(std::string_view name) noexcept {
  for (auto f : {Feature::Archive, Feature::Completion, Feature::Abbrev, Feature::Scankb}) {
    if (feature_name(f) == name) return f;
  }
  return std::nullopt;
}

AppendChar make_append(std::string_view text) {
  if (text.empty() || textaccel::utf8_decode(text).size() != 1) {
    throw LayoutError("append needs exactly one character, got '" + std::string(text) + "'");
  }
  return AppendChar{std::string(text)};
}

std::string describe(const KeyAction& action) { return action_to_json(action).dump(); }

ScanNode ScanNode::leaf(std::string label, KeyAction action) {
  return ScanNode{std::move(label), std::move(action), {}};
}

ScanNode ScanNode::group(std::string label, std::vector<ScanNode> children) {
  if (children.empty()) throw LayoutError("group '" + label + "' has no children");
  return ScanNode{std::move(label), std::nullopt, std::move(children)};
}

ScanNode layout_from_json(const json& doc) {
  auto root = node_from_json(doc, "", 0);
  if (!root.is_group()) throw LayoutError("layout root must be a group");
  return root;
}

ScanNode load_layout(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw LayoutError(std::string("layout is not valid JSON: ") + e.what());
  }
  return layout_from_json(doc);
}

ScanNode load_layout_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LayoutError("cannot open layout file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return load_layout(ss.str());
  } catch (const LayoutError& e) {
    throw LayoutError(path + ": " + e.what());
  }
}

json layout_to_json(const ScanNode& node) {
  json j = {{"label", node.label}};
  if (node.is_group()) {
    j["children"] = json::array();
    for (const auto& c : node.children) j["children"].push_back(layout_to_json(c));
  } else {
    j["action"] = action_to_json(*node.action);
  }
  return j;
}

ScanNode default_layout() {
  auto letters = [](std::string label, char from, char to) {
    std::vector<ScanNode> keys;
    for (char c = from; c <= to; ++c) {
      keys.push_back(ScanNode::leaf(std::string(1, c), AppendChar{std::string(1, textaccel::ascii_lower(c))}));
    }
    return ScanNode::group(std::move(label), std::move(keys));
  };
  std::vector<ScanNode> rows;
  rows.push_back(letters("A-G", 'A', 'G'));
  rows.push_back(letters("H-N", 'H', 'N'));
  rows.push_back(letters("O-U", 'O', 'U'));
  rows.push_back(letters("V-Z", 'V', 'Z'));
  rows.push_back(ScanNode::group("Controls", {ScanNode::leaf("Space", Space{}), ScanNode::leaf("Backspace", Backspace{}),
                                              ScanNode::leaf("Speak", Speak{})}));
  return ScanNode::group("root", std::move(rows));
}

std::size_t count_leaves(const ScanNode& node) noexcept {
  if (!node.is_group()) return 1;
  std::size_t n = 0;
  for (const auto& c : node.children) n += count_leaves(c);
  return n;
}

}  // namespace easyvoice::scankb
