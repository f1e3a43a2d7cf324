#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <thread>

#include "easyvoice/speech/synthesizer.hpp"
#include "easyvoice/speech/wav.hpp"

extern char** environ;

namespace easyvoice::speech {

namespace {

constexpr std::string_view kTextSlot = "{text}";
constexpr std::string_view kOutSlot = "{out}";
constexpr std::size_t kMaxDiagnostics = 4096;

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

// Scratch directory for the engine's output file, removed on scope exit.
class ScratchDir {
 public:
  ScratchDir() {
    auto tmpl = (std::filesystem::temp_directory_path() / "easyvoice-tts-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) {
      throw SynthesisError(std::string("cannot create scratch directory: ") + std::strerror(errno));
    }
    path_ = tmpl;
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct ChildResult {
  bool timed_out = false;
  int status = 0;
  std::string output;
};

ChildResult run_child(const std::vector<std::string>& argv, std::chrono::milliseconds timeout) {
  std::array<int, 2> fds{};
  if (::pipe2(fds.data(), O_CLOEXEC) != 0) throw SynthesisError("pipe failed");
  Fd read_end(fds[0]);
  Fd write_end(fds[1]);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 0, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_adddup2(&actions, write_end.get(), 1);
  posix_spawn_file_actions_adddup2(&actions, write_end.get(), 2);

  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::vector<char*> cargv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, cargv[0], &actions, &attr, cargv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  write_end.reset();
  if (rc != 0) throw SynthesisError("cannot start '" + argv[0] + "': " + std::strerror(rc));

  ChildResult result;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  bool reading = true;
  std::array<char, 1024> chunk{};
  while (true) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      ::kill(-pid, SIGKILL);
      ::waitpid(pid, &result.status, 0);
      result.timed_out = true;
      return result;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    if (reading) {
      pollfd p{read_end.get(), POLLIN, 0};
      const int ready = ::poll(&p, 1, static_cast<int>(std::min<long long>(left, 50)));
      if (ready > 0) {
        const auto n = ::read(read_end.get(), chunk.data(), chunk.size());
        if (n > 0) {
          result.output.append(chunk.data(), static_cast<std::size_t>(n));
          if (result.output.size() > kMaxDiagnostics) {
            result.output.erase(0, result.output.size() - kMaxDiagnostics);
          }
        } else if (n == 0 || errno != EINTR) {
          reading = false;
        }
      }
    } else {
      std::this_thread::sleep_for(std::chrono::milliseconds(std::min<long long>(left, 5)));
    }
    const pid_t done = ::waitpid(pid, &result.status, WNOHANG);
    if (done == pid) {
      // Drain what the engine printed before exiting.
      ssize_t n = 0;
      while (reading && (n = ::read(read_end.get(), chunk.data(), chunk.size())) > 0) {
        result.output.append(chunk.data(), static_cast<std::size_t>(n));
      }
      if (result.output.size() > kMaxDiagnostics) result.output.erase(0, result.output.size() - kMaxDiagnostics);
      return result;
    }
  }
}

}  // namespace

std::vector<std::string> split_command_template(std::string_view tmpl) {
  std::vector<std::string> words;
  std::string word;
  bool in_word = false;
  char quote = 0;
  for (char c : tmpl) {
    if (quote != 0) {
      if (c == quote) {
        quote = 0;
      } else {
        word += c;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t' || c == '\n') {
      if (in_word) words.push_back(std::move(word));
      word.clear();
      in_word = false;
    } else {
      word += c;
      in_word = true;
    }
  }
  if (quote != 0) throw SynthesisError("unbalanced quote in command template");
  if (in_word) words.push_back(std::move(word));
  return words;
}

void ExternalSynthSpec::validate() const {
  const auto words = split_command_template(command_template);
  if (words.empty()) throw SynthesisError("empty command template");
  if (command_template.find(kTextSlot) == std::string::npos) throw SynthesisError("command template lacks {text}");
  if (command_template.find(kOutSlot) == std::string::npos) throw SynthesisError("command template lacks {out}");
  if (timeout.count() <= 0) throw SynthesisError("timeout must be positive");
}

std::vector<std::string> expand_command(const ExternalSynthSpec& spec, std::string_view text,
                                        std::string_view out_path) {
  auto words = split_command_template(spec.command_template);
  for (auto& w : words) {
    // Single pass: substituted text is never re-scanned for slots.
    std::string rebuilt;
    std::size_t pos = 0;
    while (pos < w.size()) {
      if (w.compare(pos, kTextSlot.size(), kTextSlot) == 0) {
        rebuilt += text;
        pos += kTextSlot.size();
      } else if (w.compare(pos, kOutSlot.size(), kOutSlot) == 0) {
        rebuilt += out_path;
        pos += kOutSlot.size();
      } else {
        rebuilt += w[pos++];
      }
    }
    w = std::move(rebuilt);
  }
  return words;
}

audio::AudioBuffer synthesize_external(const ExternalSynthSpec& spec, std::string_view text) {
  spec.validate();
  ScratchDir scratch;
  const auto out_path = (scratch.path() / "speech.wav").string();
  const auto argv = expand_command(spec, text, out_path);

  auto result = run_child(argv, spec.timeout);
  if (result.timed_out) {
    throw SynthesisError("speech engine '" + argv[0] + "' timed out after " + std::to_string(spec.timeout.count()) +
                         " ms");
  }
  if (!WIFEXITED(result.status) || WEXITSTATUS(result.status) != 0) {
    const auto how = WIFEXITED(result.status) ? "exit status " + std::to_string(WEXITSTATUS(result.status))
                                              : "signal " + std::to_string(WTERMSIG(result.status));
    std::string msg = "speech engine '" + argv[0] + "' failed with " + how;
    if (!result.output.empty()) msg += ": " + result.output;
    throw SynthesisError(msg);
  }
  if (!std::filesystem::exists(out_path)) throw SynthesisError("speech engine '" + argv[0] + "' wrote no output");
  return read_wav_file(out_path);
}

std::unique_ptr<Synthesizer> make_synthesizer(std::string_view choice, const ToneSynthConfig& tone,
                                              std::chrono::milliseconds timeout) {
  if (choice == "tone") return std::make_unique<ToneSynthesizer>(tone);
  if (choice.starts_with("cmd:")) {
    return std::make_unique<ExternalSynthesizer>(ExternalSynthSpec{std::string(choice.substr(4)), timeout});
  }
  throw SynthesisError("unknown synthesizer '" + std::string(choice) + "' (expected tone or cmd:<template>)");
}

}  // namespace easyvoice::speech
