#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "easyvoice/voipbridge/session.hpp"

namespace easyvoice::voip {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Destination for serialized RTP datagrams. send() throws TransportError.
class PacketSink {
 public:
  virtual ~PacketSink() = default;
  virtual void send(std::span<const std::uint8_t> datagram) = 0;
};

class UdpSender final : public PacketSink {
 public:
  explicit UdpSender(const Endpoint& peer);
  ~UdpSender() override;
  UdpSender(const UdpSender&) = delete;
  UdpSender& operator=(const UdpSender&) = delete;

  void send(std::span<const std::uint8_t> datagram) override;

 private:
  int fd_ = -1;
  std::vector<std::uint8_t> addr_;  // sockaddr storage
};

class UdpReceiver {
 public:
  /// Port 0 picks an ephemeral port; see port().
  explicit UdpReceiver(std::uint16_t port, const std::string& bind_host = "0.0.0.0");
  ~UdpReceiver();
  UdpReceiver(const UdpReceiver&) = delete;
  UdpReceiver& operator=(const UdpReceiver&) = delete;

  std::uint16_t port() const noexcept { return port_; }

  /// Waits up to timeout for one datagram.
  std::optional<std::vector<std::uint8_t>> receive(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace easyvoice::voip
