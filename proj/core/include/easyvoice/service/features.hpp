#pragma once

#include <nlohmann/json.hpp>

#include "easyvoice/scankb/layout.hpp"

namespace easyvoice::service {

using scankb::Feature;

/// Per-feature on/off switches; everything starts enabled.
struct FeatureFlags {
  bool archive_on = true;
  bool completion_on = true;
  bool abbrev_on = true;
  bool scankb_on = true;

  bool enabled(Feature f) const noexcept;
  void set(Feature f, bool on) noexcept;

  friend bool operator==(const FeatureFlags&, const FeatureFlags&) = default;
};

nlohmann::json to_json(const FeatureFlags& flags);

/// Applies any of {"archive","completion","abbrev","scankb"} booleans found
/// in obj; other keys are ignored. Throws std::invalid_argument for a
/// non-boolean value. Returns the features that were mentioned.
std::vector<Feature> apply_feature_json(FeatureFlags& flags, const nlohmann::json& obj);

}  // namespace easyvoice::service
