#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace easyvoice::scankb {

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Features a key may toggle; names match the service's set_feature keys.
enum class Feature { Archive, Completion, Abbrev, Scankb };

std::string_view feature_name(Feature f) noexcept;
std::optional<Feature> feature_from_name(std::string_view name) noexcept;

struct AppendChar {
  std::string character;  // exactly one UTF-8 code point
  friend bool operator==(const AppendChar&, const AppendChar&) = default;
};
struct Backspace {
  friend bool operator==(const Backspace&, const Backspace&) = default;
};
struct Space {
  friend bool operator==(const Space&, const Space&) = default;
};
struct Speak {
  friend bool operator==(const Speak&, const Speak&) = default;
};
struct ToggleFeature {
  Feature feature;
  friend bool operator==(const ToggleFeature&, const ToggleFeature&) = default;
};

using KeyAction = std::variant<AppendChar, Backspace, Space, Speak, ToggleFeature>;

/// Throws LayoutError unless text is exactly one UTF-8 code point.
AppendChar make_append(std::string_view text);

std::string describe(const KeyAction& action);

/// A leaf key (action set, no children) or a group option (children, no action).
struct ScanNode {
  std::string label;
  std::optional<KeyAction> action;
  std::vector<ScanNode> children;

  bool is_group() const noexcept { return !action.has_value(); }

  static ScanNode leaf(std::string label, KeyAction action);
  static ScanNode group(std::string label, std::vector<ScanNode> children);

  friend bool operator==(const ScanNode&, const ScanNode&) = default;
};

/// Parses and validates a layout document. The root must be a group; every
/// group needs at least one child; leaves carry exactly one action:
/// {"append":"a"}, {"space":true}, {"backspace":true}, {"speak":true} or
/// {"toggle":"completion"}.
ScanNode load_layout(std::string_view document);
ScanNode load_layout_file(const std::string& path);

ScanNode layout_from_json(const nlohmann::json& doc);
nlohmann::json layout_to_json(const ScanNode& node);

/// Letters A-Z in four groups plus a control group {Space, Backspace, Speak}.
ScanNode default_layout();

std::size_t count_leaves(const ScanNode& node) noexcept;

}  // namespace easyvoice::scankb
