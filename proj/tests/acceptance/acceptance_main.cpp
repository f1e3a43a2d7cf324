// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails or runs past its time limit.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "easyvoice/scankb/scanner.hpp"
#include "easyvoice/speech/tone_synth.hpp"
#include "easyvoice/speech/wav.hpp"
#include "easyvoice/textaccel/abbreviations.hpp"
#include "easyvoice/textaccel/dictionary.hpp"
#include "easyvoice/voipbridge/mulaw.hpp"
#include "oracles.hpp"
#include "service_fixtures.hpp"

namespace et = easyvoice::testing;
namespace fs = std::filesystem;
namespace kb = easyvoice::scankb;
namespace sv = easyvoice::service;
namespace tx = easyvoice::textaccel;
namespace vp = easyvoice::voip;
using nlohmann::json;

namespace {

/// Thrown by check() to fail the current criterion with a reason.
struct CriterionFailure {
  std::string reason;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw CriterionFailure{what};
}

struct Criterion {
  std::string name;
  double limit_s;
  std::function<std::string()> body;  // returns a short summary
};

// --- completion --------------------------------------------------------------

std::string completion_contract() {
  std::mt19937_64 rng(20070601);
  const std::string alphabet = "etaoinshrdlucmTHE";
  std::size_t queries = 0;
  std::size_t longest = 0;
  for (int d = 0; d < 200; ++d) {
    const std::size_t target = 1 + rng() % 10000;
    std::set<std::string> seen;
    std::vector<tx::DictionaryEntry> entries;
    std::vector<et::OracleEntry> oracle;
    std::size_t attempts = 0;
    while (entries.size() < target && attempts++ < 4 * target) {
      std::string w;
      for (auto n = 1 + rng() % 8; n > 0; --n) w += alphabet[rng() % alphabet.size()];
      if (!seen.insert(et::lower_ascii(w)).second) continue;
      const std::uint64_t f = rng() % 3 == 0 ? rng() % 5 : rng() % 1000000;
      entries.push_back({w, f});
      oracle.push_back({w, f});
    }
    tx::FrequencyDictionary dict(entries);
    for (int q = 0; q < 20; ++q) {
      std::string prefix;
      for (auto n = rng() % 7; n > 0; --n) prefix += alphabet[rng() % alphabet.size()];
      const auto got = dict.complete(prefix);
      check(got == et::brute_force_complete(oracle, prefix, 8),
            "dictionary " + std::to_string(d) + " prefix '" + prefix + "' differs from oracle");
      check(got.size() <= 8, "more than 8 suggestions");
      longest = std::max(longest, got.size());
      ++queries;
    }
  }
  return "200 dictionaries, " + std::to_string(queries) + " prefixes match oracle, max " + std::to_string(longest) +
         " suggestions";
}

// --- abbreviations -----------------------------------------------------------

std::string abbreviation_expansion() {
  et::RecordingOutput out;
  sv::ComposerResources r;
  r.abbreviations.define("btw", "by the way");
  auto composer = et::make_composer({}, &out, std::move(r));
  auto replies = composer->handle_client_message({{"kind", "speak"}, {"text", "btw"}});
  const auto* ack = et::find_kind(replies, "spoken");
  check(ack != nullptr, "no spoken acknowledgement");
  check((*ack)["expanded"] == "by the way", "ack.expanded = " + (*ack)["expanded"].dump());
  check(out.played.size() == 1 && out.played[0] == easyvoice::speech::synthesize_tone("by the way"),
        "audio is not the synthesis of the expansion");

  tx::AbbreviationTable table;
  table.define("btw", "by the way");
  std::mt19937_64 rng(42);
  const std::string alphabet = "acdefghtwy ,.;:!?-'\"\n";  // no 'b': "btw" cannot form
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    for (auto n = rng() % 60; n > 0; --n) s += alphabet[rng() % alphabet.size()];
    check(tx::expand_abbreviations(table, s) == s, "identity failed for '" + s + "'");
  }
  return "btw -> \"by the way\" spoken; 1000 texts unchanged";
}

// --- scanning ----------------------------------------------------------------

kb::ScanNode random_layout(std::mt19937_64& rng, int depth, int& counter) {
  std::vector<kb::ScanNode> children;
  for (auto n = 1 + rng() % 6; n > 0; --n) {
    if (depth < 3 && rng() % 3 == 0) {
      children.push_back(random_layout(rng, depth + 1, counter));
    } else {
      children.push_back(kb::ScanNode::leaf("k" + std::to_string(counter++), kb::Space{}));
    }
  }
  return kb::ScanNode::group("g", std::move(children));
}

et::RefNode shape(const kb::ScanNode& n) {
  et::RefNode r;
  if (n.is_group()) {
    for (const auto& c : n.children) r.children.push_back(shape(c));
  }
  return r;
}

std::string scanning_determinism() {
  std::mt19937_64 rng(1992);
  std::size_t events = 0;
  for (int l = 0; l < 100; ++l) {
    int counter = 0;
    const auto layout = random_layout(rng, 0, counter);
    const auto ref_shape = shape(layout);
    const kb::ScanConfig cfg{50 + static_cast<std::int64_t>(rng() % 500), 1 + static_cast<int>(rng() % 3)};
    et::ReferenceScanner ref(ref_shape, cfg.scan_period_ms, cfg.max_cycles);
    kb::ScanState s;
    for (int step = 0; step < 200; ++step, ++events) {
      if (rng() % 4 == 0) {
        const bool ref_leaf = ref.press();
        auto [next, action] = kb::press(layout, s);
        check(action.has_value() == ref_leaf, "press outcome differs from reference");
        s = next;
      } else {
        const auto a = 1 + static_cast<std::int64_t>(rng() % (3 * cfg.scan_period_ms));
        const auto b = 1 + static_cast<std::int64_t>(rng() % (3 * cfg.scan_period_ms));
        const auto whole = kb::tick(layout, s, cfg, a + b);
        s = kb::tick(layout, kb::tick(layout, s, cfg, a), cfg, b);
        check(s == whole, "tick additivity violated in layout " + std::to_string(l));
        ref.advance(a + b);
      }
      check(kb::is_valid(layout, s), "invalid scan state");
      const auto& r = ref.state();
      check(s.path == r.path && s.cursor == r.cursor && s.elapsed_ms == r.elapsed && s.cycles == r.cycles,
            "state differs from millisecond reference in layout " + std::to_string(l));
    }
  }

  const auto abc = kb::ScanNode::group("root", {kb::ScanNode::leaf("A", kb::make_append("a")),
                                                kb::ScanNode::leaf("B", kb::make_append("b")),
                                                kb::ScanNode::leaf("C", kb::make_append("c"))});
  const auto at_2100 = kb::tick(abc, {}, {1000, 2}, 2100);
  const auto action = kb::press(abc, at_2100).second;
  check(action && *action == kb::KeyAction(kb::AppendChar{"c"}), "press at t=2100 ms did not select C");
  return "100 layouts, " + std::to_string(events) + " events; press at 2100 ms selects C";
}

// --- mu-law ------------------------------------------------------------------

std::string mulaw_exhaustive() {
  int worst_in_range = 0;
  for (int x = -32768; x <= 32767; ++x) {
    const auto code = vp::mulaw_encode(static_cast<std::int16_t>(x));
    check(code == et::reference_mulaw_encode(x), "encoder differs from reference at " + std::to_string(x));
    const int y = vp::mulaw_decode(code);
    check(y == et::reference_mulaw_decode(code), "decoder differs from reference at " + std::to_string(x));
    const int err = std::abs(y - x);
    const int step = et::reference_segment_step(x);
    check(err <= step, "error beyond segment step at " + std::to_string(x));
    if (std::abs(x) <= 32635) {
      check(2 * err <= step, "error beyond half step at " + std::to_string(x));
      worst_in_range = std::max(worst_in_range, err);
    }
  }
  check(vp::mulaw_decode(vp::mulaw_encode(std::int16_t{0})) == 0, "decode(encode(0)) != 0");
  return "65536 samples within segment bound (worst unclipped error " + std::to_string(worst_in_range) + ")";
}

// --- end to end --------------------------------------------------------------

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string injection_fidelity() {
  const fs::path out_dir = fs::temp_directory_path() / "easyvoice_acceptance_loopback";
  fs::remove_all(out_dir);
  const std::string cli = EASYVOICE_CLI;
  const std::string loopback_cmd = shell_quote(cli) + " loopback --listen 0 --duration 4000 --idle-exit 300 --out-dir " +
                                   shell_quote(out_dir.string());
  FILE* peer = ::popen(loopback_cmd.c_str(), "r");
  check(peer != nullptr, "could not start loopback peer");

  char line[512];
  std::string first = std::fgets(line, sizeof line, peer) != nullptr ? line : "";
  std::smatch m;
  if (!std::regex_search(first, m, std::regex("listening on port (\\d+)"))) {
    ::pclose(peer);
    throw CriterionFailure{"loopback did not report its port: " + first};
  }
  const std::string port = m[1];

  const std::string speak_cmd =
      shell_quote(cli) + " speak-once --peer 127.0.0.1:" + port + " --text hi --synth tone > /dev/null";
  const int speak_status = std::system(speak_cmd.c_str());
  std::string summary;
  while (std::fgets(line, sizeof line, peer) != nullptr) summary += line;
  const int peer_status = ::pclose(peer);
  check(speak_status == 0, "speak-once failed");
  check(WIFEXITED(peer_status) && WEXITSTATUS(peer_status) == 0, "loopback peer failed");

  std::ifstream stats_file(out_dir / "stats.json");
  const auto stats = json::parse(stats_file);
  check(stats["packets_received"] == 8, "received " + stats["packets_received"].dump() + " packets, want 8");
  check(stats["packets_lost"] == 0, "packets lost");
  const auto& frames = stats["frames"];
  check(frames.size() == 8, "expected 8 frames");
  for (std::size_t i = 1; i < frames.size(); ++i) {
    check(frames[i]["sequence"].get<std::uint16_t>() ==
              static_cast<std::uint16_t>(frames[i - 1]["sequence"].get<std::uint16_t>() + 1),
          "sequence numbers not consecutive");
    check(frames[i]["timestamp"].get<std::uint32_t>() == frames[i - 1]["timestamp"].get<std::uint32_t>() + 160,
          "timestamps do not step by 160");
  }

  const auto received = easyvoice::speech::read_wav_file((out_dir / "received.wav").string());
  const auto source = easyvoice::speech::synthesize_tone("hi");
  check(source.size() == 1280, "source is not 1280 samples");
  check(received.size() == source.size(), "received " + std::to_string(received.size()) + " samples");
  for (std::size_t i = 0; i < source.size(); ++i) {
    check(received.samples()[i] == vp::mulaw_decode(vp::mulaw_encode(source.samples()[i])),
          "sample " + std::to_string(i) + " differs from mu-law round trip");
  }
  fs::remove_all(out_dir);
  return "8 packets, consecutive sequence, +160 timestamps, 1280 samples bit-identical";
}

// --- echo avoidance ----------------------------------------------------------

std::string echo_avoidance() {
  // Link dependencies of the injection path, as configured by the build.
  std::ifstream deps(EASYVOICE_VOIP_DEPS);
  check(static_cast<bool>(deps), "dependency listing missing");
  const std::set<std::string> allowed_links = {"audio", "Threads::Threads", "easyvoice::audio"};
  for (std::string line; std::getline(deps, line);) {
    const auto eq = line.find('=');
    std::stringstream list(line.substr(eq + 1));
    for (std::string lib; std::getline(list, lib, ';');) {
      if (lib.empty()) continue;
      check(allowed_links.count(lib) == 1, "injection path links " + lib);
    }
  }

  // Every header the injection path includes.
  const std::regex std_header("<[a-z_]+>");
  const std::set<std::string> posix = {"<netdb.h>", "<netinet/in.h>", "<arpa/inet.h>", "<poll.h>", "<sys/socket.h>",
                                       "<sys/types.h>", "<unistd.h>", "<fcntl.h>", "<cerrno>"};
  const std::regex own("\"easyvoice/(voipbridge/[a-z_]+|audio/audio_buffer)\\.hpp\"");
  const std::regex device("alsa|pulse|portaudio|jack|sdl|openal|snd_|/dev/dsp|speaker|microphone|capture|playback",
                          std::regex::icase);
  std::size_t files = 0;
  const fs::path root = EASYVOICE_SOURCE_DIR;
  for (const auto* dir : {"core/include/easyvoice/voipbridge", "core/src/voipbridge", "core/include/easyvoice/audio",
                          "core/src/audio"}) {
    for (const auto& entry : fs::directory_iterator(root / dir)) {
      ++files;
      std::ifstream in(entry.path());
      std::size_t n = 0;
      for (std::string line; std::getline(in, line);) {
        ++n;
        const auto where = entry.path().filename().string() + ":" + std::to_string(n);
        check(!std::regex_search(line, device), "device reference at " + where);
        if (line.rfind("#include", 0) != 0) continue;
        const auto header = line.substr(line.find_first_of("<\""));
        check(std::regex_match(header, std_header) || posix.count(header) == 1 || std::regex_match(header, own),
              "unexpected include " + header + " at " + where);
      }
    }
  }
  return std::to_string(files) + " files: no device include, symbol or link dependency";
}

// --- feature gating ----------------------------------------------------------

std::string feature_gating() {
  const auto base = fs::temp_directory_path() / "easyvoice_acceptance_gating";
  const auto on = et::run_gating_transcript({}, base / "all");
  check(on.nonempty_suggestions > 0 && on.completion_queries > 0, "completion inactive with all features on");
  check(on.archive_messages > 0 && on.archive_size > 0 && on.archive_file_written, "archive inactive with all on");
  check(on.spoken_expanded == "by the way", "abbreviation inactive with all on");
  check(on.scan_messages > 0, "scanning inactive with all on");

  sv::FeatureFlags f;
  f.completion_on = false;
  auto obs = et::run_gating_transcript(f, base / "completion");
  check(obs.nonempty_suggestions == 0 && obs.completion_queries == 0, "suggestions computed with completion off");

  f = {};
  f.archive_on = false;
  obs = et::run_gating_transcript(f, base / "archive");
  check(obs.archive_messages == 0 && obs.archive_size == 0 && !obs.archive_file_written,
        "archive touched with archive off");

  f = {};
  f.abbrev_on = false;
  obs = et::run_gating_transcript(f, base / "abbrev");
  check(obs.spoken_expanded == "btw", "expansion applied with abbreviations off");

  f = {};
  f.scankb_on = false;
  obs = et::run_gating_transcript(f, base / "scankb");
  check(obs.scan_messages == 0, "scan messages with scanning off");
  fs::remove_all(base);
  return "each feature off: its side effects absent from the transcript";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"completion-contract", 10.0, completion_contract},
      {"abbreviation-expansion", 5.0, abbreviation_expansion},
      {"scanning-determinism", 10.0, scanning_determinism},
      {"mulaw-exhaustive-roundtrip", 5.0, mulaw_exhaustive},
      {"end-to-end-injection-fidelity", 5.0, injection_fidelity},
      {"echo-avoidance-structural", 5.0, echo_avoidance},
      {"feature-gating", 5.0, feature_gating},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const CriterionFailure& f) {
      ok = false;
      detail = f.reason;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > c.limit_s) {
      ok = false;
      detail += " (too slow)";
    }
    failures += ok ? 0 : 1;
    std::printf("%s %-30s %6.2f s (limit %4.1f s)  %s\n", ok ? "PASS" : "FAIL", c.name.c_str(), secs, c.limit_s,
                detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
              criteria.size());
  return failures == 0 ? 0 : 1;
}
