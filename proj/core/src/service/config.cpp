#include "easyvoice/service/config.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "easyvoice/scankb/layout.hpp"
#include "easyvoice/speech/synthesizer.hpp"
#include "easyvoice/textaccel/abbreviations.hpp"
#include "easyvoice/textaccel/archive.hpp"
#include "easyvoice/textaccel/dictionary.hpp"

#ifndef EASYVOICE_DEFAULT_DATA_DIR
#define EASYVOICE_DEFAULT_DATA_DIR "data"
#endif
#ifndef EASYVOICE_INSTALLED_DATA_DIR
#define EASYVOICE_INSTALLED_DATA_DIR EASYVOICE_DEFAULT_DATA_DIR
#endif

namespace easyvoice::service {

using nlohmann::json;

namespace {

std::uint16_t port_from(const json& v, const char* key) {
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  const auto p = v.get<std::int64_t>();
  if (p < 1 || p > 65535) throw ConfigError(std::string(key) + " must be in [1, 65535], got " + std::to_string(p));
  return static_cast<std::uint16_t>(p);
}

std::string string_from(const json& v, const char* key) {
  if (!v.is_string()) throw ConfigError(std::string(key) + " must be a string");
  return v.get<std::string>();
}

std::int64_t int_from(const json& v, const char* key) {
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

bool readable(const std::string& path) { return ::access(path.c_str(), R_OK) == 0; }

}  // namespace

std::string default_data_dir() {
  if (const char* env = std::getenv("EASYVOICE_DATA_DIR"); env != nullptr && *env != '\0') return env;
  // The build tree's data directory while developing, the installed copy otherwise.
  if (std::filesystem::is_directory(EASYVOICE_DEFAULT_DATA_DIR)) return EASYVOICE_DEFAULT_DATA_DIR;
  return EASYVOICE_INSTALLED_DATA_DIR;
}

AppConfig AppConfig::defaults() {
  AppConfig cfg;
  const std::filesystem::path data(default_data_dir());
  cfg.dict_path = (data / "dictionary.tsv").string();
  cfg.abbrev_path = (data / "abbreviations.tsv").string();
  cfg.layout_path = (data / "layout.json").string();
  return cfg;
}

void AppConfig::merge_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "peer") {
      try {
        peer = voip::Endpoint::parse(string_from(v, "peer"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "listen") {
      listen_port = port_from(v, "listen");
    } else if (key == "ui_host") {
      ui_host = string_from(v, "ui_host");
    } else if (key == "ui_port") {
      ui_port = port_from(v, "ui_port");
    } else if (key == "dict_path") {
      dict_path = string_from(v, "dict_path");
    } else if (key == "abbrev_path") {
      abbrev_path = string_from(v, "abbrev_path");
    } else if (key == "layout_path") {
      layout_path = string_from(v, "layout_path");
    } else if (key == "archive_path") {
      archive_path = string_from(v, "archive_path");
    } else if (key == "static_dir") {
      static_dir = string_from(v, "static_dir");
    } else if (key == "scan_period_ms") {
      scan_period_ms = int_from(v, "scan_period_ms");
    } else if (key == "synth") {
      synth = string_from(v, "synth");
    } else if (key == "synth_timeout_ms") {
      synth_timeout_ms = int_from(v, "synth_timeout_ms");
    } else if (key == "features") {
      if (!v.is_object()) throw ConfigError("features must be an object");
      try {
        apply_feature_json(features, v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
}

void AppConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    merge_json(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<std::string> AppConfig::problems() const {
  std::vector<std::string> out;
  if (scan_period_ms < 50) out.push_back("scan period must be at least 50 ms");
  if (synth_timeout_ms <= 0) out.push_back("synthesizer timeout must be positive");
  try {
    speech::make_synthesizer(synth, {}, std::chrono::milliseconds(std::max<std::int64_t>(1, synth_timeout_ms)));
  } catch (const std::exception& e) {
    out.push_back(e.what());
  }

  auto check = [&](bool on, const std::string& path, const char* what, auto&& load) {
    if (!on) return;
    if (path.empty()) {
      out.push_back(std::string("no ") + what + " file configured");
    } else if (!readable(path)) {
      out.push_back(std::string(what) + " file not readable: " + path);
    } else {
      try {
        load(path);
      } catch (const std::exception& e) {
        out.push_back(e.what());
      }
    }
  };
  check(features.completion_on, dict_path, "dictionary", [](const std::string& p) { textaccel::load_dictionary_file(p); });
  check(features.abbrev_on, abbrev_path, "abbreviation",
        [](const std::string& p) { textaccel::load_abbreviations_file(p); });
  if (features.scankb_on && !layout_path.empty()) {
    check(true, layout_path, "layout", [](const std::string& p) { scankb::load_layout_file(p); });
  }
  if (features.archive_on && !archive_path.empty()) {
    const auto parent = std::filesystem::path(archive_path).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
      out.push_back("archive directory does not exist: " + parent.string());
    } else {
      try {
        textaccel::load_archive_file(archive_path);
      } catch (const std::exception& e) {
        out.push_back(e.what());
      }
    }
  }
  if (!static_dir.empty() && !std::filesystem::is_directory(static_dir)) {
    out.push_back("static directory does not exist: " + static_dir);
  }
  return out;
}

json to_json(const AppConfig& cfg) {
  json j = {{"listen", cfg.listen_port},
            {"ui_host", cfg.ui_host},
            {"ui_port", cfg.ui_port},
            {"dict_path", cfg.dict_path},
            {"abbrev_path", cfg.abbrev_path},
            {"layout_path", cfg.layout_path},
            {"archive_path", cfg.archive_path},
            {"static_dir", cfg.static_dir},
            {"scan_period_ms", cfg.scan_period_ms},
            {"synth", cfg.synth},
            {"synth_timeout_ms", cfg.synth_timeout_ms},
            {"features", to_json(cfg.features)}};
  if (cfg.peer) j["peer"] = cfg.peer->to_string();
  return j;
}

}  // namespace easyvoice::service
