#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "easyvoice/service/config.hpp"
#include "easyvoice/service/runtime.hpp"
#include "easyvoice/service/server.hpp"
#include "easyvoice/voipbridge/loopback.hpp"

namespace easyvoice::cli {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Flags shared by every subcommand; unset values leave the config alone.
struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> peer;
  std::optional<int> listen;
  std::optional<int> ui_port;
  std::optional<std::string> dict;
  std::optional<std::string> abbrev;
  std::optional<std::string> layout;
  std::optional<std::string> archive;
  std::optional<std::int64_t> scan_period;
  std::optional<std::string> synth;
  bool no_archive = false;
  bool no_completion = false;
  bool no_abbrev = false;
  bool no_scankb = false;
};

void add_common(CLI::App& sub, CommonFlags& f) {
  sub.add_option("--config", f.config, "JSON config file (default: $EASYVOICE_CONFIG)");
  sub.add_option("--peer", f.peer, "Far end of the call, host:port");
  sub.add_option("--listen", f.listen, "UDP port for the loopback peer")->check(CLI::Range(0, 65535));
  sub.add_option("--ui-port", f.ui_port, "HTTP/WebSocket port for the UI")->check(CLI::Range(1, 65535));
  sub.add_option("--dict", f.dict, "Word frequency dictionary (word<TAB>count)");
  sub.add_option("--abbrev", f.abbrev, "Abbreviation file (abbr<TAB>expansion)");
  sub.add_option("--layout", f.layout, "Scanning keyboard layout (JSON)");
  sub.add_option("--archive", f.archive, "Message archive file (JSON)");
  sub.add_option("--scan-period", f.scan_period, "Scanning period in ms")->check(CLI::Range(50, 600000));
  sub.add_option("--synth", f.synth, "Speech engine: tone | cmd:<template with {text} and {out}>");
  sub.add_flag("--no-archive", f.no_archive, "Disable the message archive");
  sub.add_flag("--no-completion", f.no_completion, "Disable word completion");
  sub.add_flag("--no-abbrev", f.no_abbrev, "Disable abbreviation expansion");
  sub.add_flag("--no-scankb", f.no_scankb, "Disable the scanning keyboard");
}

service::AppConfig build_config(const CommonFlags& f) {
  auto cfg = service::AppConfig::defaults();
  std::optional<std::string> path = f.config;
  if (!path) {
    if (const char* env = std::getenv("EASYVOICE_CONFIG"); env != nullptr && *env != '\0') path = env;
  }
  if (path) cfg.merge_file(*path);

  if (f.peer) {
    try {
      cfg.peer = voip::Endpoint::parse(*f.peer);
    } catch (const std::invalid_argument& e) {
      throw service::ConfigError(e.what());
    }
  }
  if (f.listen && *f.listen > 0) cfg.listen_port = static_cast<std::uint16_t>(*f.listen);
  if (f.ui_port) cfg.ui_port = static_cast<std::uint16_t>(*f.ui_port);
  if (f.dict) cfg.dict_path = *f.dict;
  if (f.abbrev) cfg.abbrev_path = *f.abbrev;
  if (f.layout) cfg.layout_path = *f.layout;
  if (f.archive) cfg.archive_path = *f.archive;
  if (f.scan_period) cfg.scan_period_ms = *f.scan_period;
  if (f.synth) cfg.synth = *f.synth;
  if (f.no_archive) cfg.features.archive_on = false;
  if (f.no_completion) cfg.features.completion_on = false;
  if (f.no_abbrev) cfg.features.abbrev_on = false;
  if (f.no_scankb) cfg.features.scankb_on = false;
  return cfg;
}

bool report_problems(const service::AppConfig& cfg, std::ostream& err) {
  const auto problems = cfg.problems();
  for (const auto& p : problems) err << "config error: " << p << '\n';
  return problems.empty();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Typed speech injected into an RTP voice call", "easyvoice"};
  app.require_subcommand(1);
  app.fallthrough(false);

  CommonFlags serve_flags;
  std::string ui_host;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Run the service: UI endpoint, scanner and outbound call stream");
  add_common(*serve, serve_flags);
  serve->add_option("--ui-host", ui_host, "Address to bind the UI endpoint");
  serve->add_option("--static-dir", static_dir, "Directory with the UI bundle");

  CommonFlags loop_flags;
  std::int64_t duration_ms = 10000;
  std::int64_t idle_exit_ms = 0;
  std::string out_dir = ".";
  auto* loopback = app.add_subcommand("loopback", "Far-end test peer: record what the remote party hears");
  add_common(*loopback, loop_flags);
  loopback->add_option("--duration", duration_ms, "Maximum listening time in ms")->check(CLI::Range(1, 86400000));
  loopback->add_option("--idle-exit", idle_exit_ms, "Stop after this many ms without packets (0 = never)")
      ->check(CLI::Range(0, 86400000));
  loopback->add_option("--out-dir", out_dir, "Where received.wav and stats.json are written");

  CommonFlags once_flags;
  std::string text;
  auto* speak_once = app.add_subcommand("speak-once", "Speak one message to the peer and exit");
  add_common(*speak_once, once_flags);
  speak_once->add_option("--text", text, "Text to speak")->required();

  CommonFlags check_flags;
  auto* check = app.add_subcommand("check-config", "Validate configuration and data files");
  add_common(*check, check_flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << target->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (serve->parsed()) {
      auto cfg = build_config(serve_flags);
      if (!ui_host.empty()) cfg.ui_host = ui_host;
      if (!static_dir.empty()) cfg.static_dir = static_dir;
      if (!report_problems(cfg, err)) return kExitFailure;
      service::Server server(cfg);
      server.start();
      server.wait_for_shutdown();
      server.stop();
      return 0;
    }
    if (loopback->parsed()) {
      auto cfg = build_config(loop_flags);
      const std::uint16_t port = loop_flags.listen ? static_cast<std::uint16_t>(*loop_flags.listen) : cfg.listen_port;
      voip::UdpReceiver rx(port);
      out << "listening on port " << rx.port() << std::endl;
      const auto report = voip::run_loopback_peer(
          rx, {std::chrono::milliseconds(duration_ms), std::chrono::milliseconds(idle_exit_ms)});
      service::write_loopback_outputs(report, out_dir);
      auto summary = service::report_to_json(report);
      summary.erase("frames");
      out << summary.dump() << std::endl;
      return 0;
    }
    if (speak_once->parsed()) {
      const auto cfg = build_config(once_flags);
      out << service::to_json(service::speak_once(cfg, text)).dump() << std::endl;
      return 0;
    }
    if (check->parsed()) {
      const auto cfg = build_config(check_flags);
      if (!report_problems(cfg, err)) return kExitFailure;
      out << "configuration OK\n" << service::to_json(cfg).dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace easyvoice::cli
