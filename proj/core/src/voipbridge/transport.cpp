#include "easyvoice/voipbridge/transport.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace easyvoice::voip {

namespace {

addrinfo* resolve(const std::string& host, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_DGRAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const auto service = std::to_string(port);
  const int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0) throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  return res;
}

}  // namespace

UdpSender::UdpSender(const Endpoint& peer) {
  addrinfo* res = resolve(peer.host, peer.port, false);
  for (auto* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd_ = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd_ >= 0) {
      const auto* p = reinterpret_cast<const std::uint8_t*>(ai->ai_addr);
      addr_.assign(p, p + ai->ai_addrlen);
      break;
    }
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) throw TransportError("cannot open UDP socket for " + peer.to_string());
}

UdpSender::~UdpSender() {
  if (fd_ >= 0) ::close(fd_);
}

void UdpSender::send(std::span<const std::uint8_t> datagram) {
  while (true) {
    const auto n = ::sendto(fd_, datagram.data(), datagram.size(), 0, reinterpret_cast<const sockaddr*>(addr_.data()),
                            static_cast<socklen_t>(addr_.size()));
    if (n >= 0) return;
    if (errno == EINTR) continue;
    throw TransportError(std::string("UDP send failed: ") + std::strerror(errno));
  }
}

UdpReceiver::UdpReceiver(std::uint16_t port, const std::string& bind_host) {
  addrinfo* res = resolve(bind_host, port, true);
  std::string last_error = "no usable address";
  for (auto* ai = res; ai != nullptr; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      fd_ = fd;
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) throw TransportError("cannot bind UDP port " + std::to_string(port) + ": " + last_error);

  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = bound.ss_family == AF_INET6 ? ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port)
                                      : ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  // Bursts from a fast sender should not overflow the default buffer.
  const int rcvbuf = 1 << 20;
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof(rcvbuf));
}

UdpReceiver::~UdpReceiver() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<std::vector<std::uint8_t>> UdpReceiver::receive(std::chrono::milliseconds timeout) {
  pollfd p{fd_, POLLIN, 0};
  const int ready = ::poll(&p, 1, static_cast<int>(std::max<long long>(0, timeout.count())));
  if (ready <= 0) return std::nullopt;
  std::vector<std::uint8_t> buf(65536);
  const auto n = ::recv(fd_, buf.data(), buf.size(), 0);
  if (n < 0) return std::nullopt;
  buf.resize(static_cast<std::size_t>(n));
  return buf;
}

}  // namespace easyvoice::voip
