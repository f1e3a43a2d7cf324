#pragma once

#include <cstdint>
#include <memory>

#include "easyvoice/service/config.hpp"

namespace easyvoice::service {

// The running service: HTTP (/state, static UI files) and WebSocket (/ws)
// on ui_port, a scanner timer, the composer session loop, a synthesis
// worker and, when a peer is configured, the RTP pacing thread.
class Server {
 public:
  /// Loads every resource named by cfg; throws on startup failure.
  explicit Server(AppConfig cfg);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts serving in background threads.
  void start();
  /// Bound UI port (useful with ui_port 0 in tests).
  std::uint16_t port() const;
  void stop();
  /// Blocks until stop() is called or SIGINT/SIGTERM arrives.
  void wait_for_shutdown();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace easyvoice::service
