#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "tfdp/session.hpp"

namespace tfdp {

struct ServerOptions {
  std::uint16_t port = 0;  ///< 0 picks a free port
  std::string bind_address = "127.0.0.1";
  std::string graph_dir;
  SessionOptions session;
};

/// Session protocol over TCP: one JSON object per line in each direction, one
/// Session per connection.
class SessionServer {
 public:
  /// Binds and listens; throws Error when the port is unavailable.
  explicit SessionServer(ServerOptions options);
  ~SessionServer();
  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  /// Accepts connections until stop() is called.
  void serve();
  void stop();

 private:
  struct Connection;
  void handle_connection(const std::shared_ptr<Connection>& conn);

  ServerOptions options_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex connections_mutex_;
  std::list<std::shared_ptr<Connection>> connections_;
  std::atomic<std::uint64_t> next_session_{1};
};

}  // namespace tfdp
