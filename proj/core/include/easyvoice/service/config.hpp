#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "easyvoice/service/features.hpp"
#include "easyvoice/voipbridge/session.hpp"

namespace easyvoice::service {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory holding the shipped dictionary, abbreviations and layout.
std::string default_data_dir();

struct AppConfig {
  std::optional<voip::Endpoint> peer;
  std::uint16_t listen_port = 4000;
  std::string ui_host = "127.0.0.1";
  std::uint16_t ui_port = 8080;
  std::string dict_path;
  std::string abbrev_path;
  std::string layout_path;
  std::string archive_path;  // empty: archive kept in memory only
  std::string static_dir;    // empty: no UI bundle served
  std::int64_t scan_period_ms = 1000;
  std::string synth = "tone";
  std::int64_t synth_timeout_ms = 10000;
  FeatureFlags features;

  /// Built-in defaults pointing at the shipped data files.
  static AppConfig defaults();

  /// Overlays keys present in a config document. Throws ConfigError for
  /// unknown keys or wrongly typed values.
  void merge_json(const nlohmann::json& doc);
  void merge_file(const std::string& path);

  /// Human-readable problems; empty when the configuration can start.
  std::vector<std::string> problems() const;
};

nlohmann::json to_json(const AppConfig& cfg);

}  // namespace easyvoice::service
