#include "easyvoice/service/server.hpp"

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

#include "easyvoice/service/composer.hpp"
#include "easyvoice/voipbridge/streamer.hpp"

namespace easyvoice::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class StreamerOutput final : public SpeechOutput {
 public:
  explicit StreamerOutput(voip::Streamer& streamer) : streamer_(streamer) {}
  void play(const audio::AudioBuffer& pcm_8k) override { streamer_.speak(pcm_8k); }
  std::string status() const override {
    return streamer_.session().state == voip::SessionState::Streaming ? "streaming" : "idle";
  }

 private:
  voip::Streamer& streamer_;
};

std::string_view mime_type(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

}  // namespace

struct Server::Impl {
  class WsSession;
  class HttpSession;

  AppConfig cfg;
  asio::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  asio::steady_timer scan_timer{ioc};
  asio::thread_pool synth_pool{1};
  asio::signal_set signals{ioc, SIGINT, SIGTERM};

  voip::SteadyClock clock;
  std::unique_ptr<voip::UdpSender> sender;
  std::unique_ptr<voip::Streamer> streamer;
  std::unique_ptr<StreamerOutput> output;
  std::unique_ptr<Composer> composer;
  std::set<std::shared_ptr<WsSession>> sessions;

  std::jthread io_thread;
  std::jthread pacing_thread;
  std::mutex stop_mu;
  std::condition_variable stop_cv;
  bool stopped = false;
  std::uint16_t bound_port = 0;

  explicit Impl(AppConfig c) : cfg(std::move(c)) {
    auto synth = speech::make_synthesizer(cfg.synth, {}, std::chrono::milliseconds(cfg.synth_timeout_ms));
    if (cfg.peer) {
      sender = std::make_unique<voip::UdpSender>(*cfg.peer);
      streamer = std::make_unique<voip::Streamer>(voip::CallSession::open(*cfg.peer), *sender, clock);
      output = std::make_unique<StreamerOutput>(*streamer);
    }
    composer = std::make_unique<Composer>(load_resources(cfg), cfg.features,
                                          scankb::ScanConfig{cfg.scan_period_ms, 2}, std::move(synth), output.get());
    composer->set_speak_dispatcher([this](PreparedSpeech p) {
      asio::post(synth_pool, [this, p = std::move(p)] {
        auto outcome = render_speech(composer->synthesizer(), p.expanded);
        asio::post(ioc, [this, p, outcome = std::move(outcome)] {
          for (auto& m : composer->finish_speak(p, outcome)) broadcast(m);
        });
      });
    });
    if (streamer) {
      streamer->on_error([this](const std::string& what) {
        spdlog::error("call stream stopped: {}", what);
        asio::post(ioc, [this, what] { broadcast(msg::call("idle", what)); });
      });
    }
  }

  void broadcast(const json& m);
  void start();
  void accept();
  void schedule_scan(std::chrono::steady_clock::time_point due);
  void shutdown();
};

class Server::Impl::WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket socket, Impl& owner) : ws_(std::move(socket)), owner_(owner) {}

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->owner_.sessions.insert(self);
      self->send(self->owner_.composer->snapshot());
      self->read();
    });
  }

  void send(const json& m) {
    outbox_.push_back(m.dump());
    if (outbox_.size() == 1) write();
  }

  void close() {
    beast::error_code ec;
    beast::get_lowest_layer(ws_).socket().close(ec);
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->owner_.sessions.erase(self);
        return;
      }
      const auto raw = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      for (auto& reply : self->owner_.composer->handle_client_text(raw)) {
        if (msg::is_error(reply)) {
          self->send(reply);
        } else {
          self->owner_.broadcast(reply);
        }
      }
      self->read();
    });
  }

  void write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->owner_.sessions.erase(self);
        return;
      }
      self->outbox_.pop_front();
      if (!self->outbox_.empty()) self->write();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  Impl& owner_;
};

class Server::Impl::HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket socket, Impl& owner) : stream_(std::move(socket)), owner_(owner) {}

  void run() { read(); }

 private:
  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->handle();
    });
  }

  void handle() {
    if (websocket::is_upgrade(req_)) {
      if (req_.target() == "/ws") {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), owner_)->run(std::move(req_));
        return;
      }
      return reply(http::status::not_found, "text/plain", "no such endpoint\n");
    }
    if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
      return reply(http::status::method_not_allowed, "text/plain", "only GET is supported\n");
    }
    std::string target(req_.target());
    if (const auto q = target.find('?'); q != std::string::npos) target.resize(q);
    if (target == "/state") return reply(http::status::ok, "application/json", owner_.composer->snapshot().dump());
    serve_static(target);
  }

  void serve_static(std::string target) {
    namespace fs = std::filesystem;
    if (owner_.cfg.static_dir.empty()) {
      if (target == "/") {
        return reply(http::status::ok, "text/plain", "easyvoice service: connect a UI to /ws, or GET /state\n");
      }
      return reply(http::status::not_found, "text/plain", "not found\n");
    }
    if (target.empty() || target.back() == '/') target += "index.html";
    const fs::path rel = fs::path(target).relative_path();
    for (const auto& part : rel) {
      if (part == "..") return reply(http::status::bad_request, "text/plain", "bad path\n");
    }
    const auto file = fs::path(owner_.cfg.static_dir) / rel;
    std::ifstream in(file, std::ios::binary);
    if (!in || !fs::is_regular_file(file)) return reply(http::status::not_found, "text/plain", "not found\n");
    std::ostringstream body;
    body << in.rdbuf();
    reply(http::status::ok, mime_type(file), body.str());
  }

  void reply(http::status status, std::string_view type, std::string body) {
    auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
    res->set(http::field::server, "easyvoice");
    res->set(http::field::content_type, beast::string_view(type.data(), type.size()));
    res->keep_alive(req_.keep_alive());
    if (req_.method() != http::verb::head) res->body() = std::move(body);
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (res->keep_alive()) {
        self->read();
      } else {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
      }
    });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  Impl& owner_;
};

void Server::Impl::broadcast(const json& m) {
  // Copy: a failing send may erase from the set.
  auto targets = sessions;
  for (const auto& s : targets) s->send(m);
}

void Server::Impl::start() {
  const auto address = asio::ip::make_address(cfg.ui_host);
  const tcp::endpoint endpoint(address, cfg.ui_port);
  acceptor.open(endpoint.protocol());
  acceptor.set_option(asio::socket_base::reuse_address(true));
  acceptor.bind(endpoint);
  acceptor.listen();
  bound_port = acceptor.local_endpoint().port();
  accept();

  schedule_scan(std::chrono::steady_clock::now() + std::chrono::milliseconds(cfg.scan_period_ms));
  signals.async_wait([this](beast::error_code ec, int) {
    if (!ec) shutdown();
  });

  if (streamer) {
    pacing_thread = std::jthread([this] { streamer->run(); });
  }
  io_thread = std::jthread([this] { ioc.run(); });
  spdlog::info("ui on http://{}:{}/ (ws at /ws); peer {}", cfg.ui_host, bound_port,
               cfg.peer ? cfg.peer->to_string() : std::string("none"));
}

void Server::Impl::accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<HttpSession>(std::move(socket), *this)->run();
    accept();
  });
}

void Server::Impl::schedule_scan(std::chrono::steady_clock::time_point due) {
  scan_timer.expires_at(due);
  scan_timer.async_wait([this, due](beast::error_code ec) {
    if (ec) return;
    if (auto m = composer->tick_scanner(cfg.scan_period_ms)) broadcast(*m);
    schedule_scan(due + std::chrono::milliseconds(cfg.scan_period_ms));
  });
}

void Server::Impl::shutdown() {
  {
    std::lock_guard lock(stop_mu);
    if (stopped) return;
    stopped = true;
  }
  asio::post(ioc, [this] {
    beast::error_code ec;
    acceptor.close(ec);
    scan_timer.cancel();
    signals.cancel();
    for (const auto& s : sessions) s->close();
    sessions.clear();
    ioc.stop();
  });
  if (streamer) streamer->hang_up();
  stop_cv.notify_all();
}

Server::Server(AppConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}

Server::~Server() {
  stop();
  impl_->synth_pool.join();
}

void Server::start() { impl_->start(); }

std::uint16_t Server::port() const { return impl_->bound_port; }

void Server::stop() {
  impl_->shutdown();
  if (impl_->io_thread.joinable() && impl_->io_thread.get_id() != std::this_thread::get_id()) impl_->io_thread.join();
  if (impl_->pacing_thread.joinable()) impl_->pacing_thread.join();
}

void Server::wait_for_shutdown() {
  std::unique_lock lock(impl_->stop_mu);
  impl_->stop_cv.wait(lock, [this] { return impl_->stopped; });
}

}  // namespace easyvoice::service
