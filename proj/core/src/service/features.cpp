#include "easyvoice/service/features.hpp"

#include <stdexcept>
#include <string>

namespace easyvoice::service {

namespace {
constexpr Feature kAll[] = {Feature::Archive, Feature::Completion, Feature::Abbrev, Feature::Scankb};
}

bool FeatureFlags::enabled(Feature f) const noexcept {
  switch (f) {
    case Feature::Archive: return archive_on;
    case Feature::Completion: return completion_on;
    case Feature::Abbrev: return abbrev_on;
    case Feature::Scankb: return scankb_on;
  }
  return false;
}

void FeatureFlags::set(Feature f, bool on) noexcept {
  switch (f) {
    case Feature::Archive: archive_on = on; break;
    case Feature::Completion: completion_on = on; break;
    case Feature::Abbrev: abbrev_on = on; break;
    case Feature::Scankb: scankb_on = on; break;
  }
}

nlohmann::json to_json(const FeatureFlags& flags) {
  nlohmann::json j = nlohmann::json::object();
  for (auto f : kAll) j[std::string(scankb::feature_name(f))] = flags.enabled(f);
  return j;
}

std::vector<Feature> apply_feature_json(FeatureFlags& flags, const nlohmann::json& obj) {
  std::vector<Feature> touched;
  for (auto f : kAll) {
    const std::string key(scankb::feature_name(f));
    if (!obj.contains(key)) continue;
    if (!obj[key].is_boolean()) throw std::invalid_argument("feature '" + key + "' must be true or false");
    flags.set(f, obj[key].get<bool>());
    touched.push_back(f);
  }
  return touched;
}

}  // namespace easyvoice::service
