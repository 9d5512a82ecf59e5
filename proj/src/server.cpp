#include "tfdp/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "tfdp/errors.hpp"

namespace tfdp {

struct SessionServer::Connection {
  int fd = -1;
  std::thread thread;
  std::atomic<bool> finished{false};
};

namespace {

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t r = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    sent += static_cast<std::size_t>(r);
  }
  return true;
}

}  // namespace

SessionServer::SessionServer(ServerOptions options) : options_(std::move(options)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(std::string("socket: ") + std::strerror(errno));
  const int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(options_.port);
  if (::inet_pton(AF_INET, options_.bind_address.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw ArgumentError("bad bind address " + options_.bind_address);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
    const std::string reason = std::strerror(errno);
    ::close(listen_fd_);
    throw Error("cannot listen on port " + std::to_string(options_.port) + ": " + reason);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

SessionServer::~SessionServer() {
  stop();
  std::lock_guard lock(connections_mutex_);
  for (auto& conn : connections_) {
    if (conn->thread.joinable()) conn->thread.join();
  }
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void SessionServer::stop() {
  if (stopping_.exchange(true)) return;
  std::lock_guard lock(connections_mutex_);
  for (auto& conn : connections_) ::shutdown(conn->fd, SHUT_RDWR);
}

void SessionServer::serve() {
  while (!stopping_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    auto conn = std::make_shared<Connection>();
    conn->fd = fd;
    std::lock_guard lock(connections_mutex_);
    // Reap connections whose clients have gone away.
    for (auto it = connections_.begin(); it != connections_.end();) {
      if ((*it)->finished) {
        (*it)->thread.join();
        it = connections_.erase(it);
      } else {
        ++it;
      }
    }
    if (stopping_) {
      ::close(fd);
      break;
    }
    conn->thread = std::thread([this, conn] { handle_connection(conn); });
    connections_.push_back(conn);
  }
}

void SessionServer::handle_connection(const std::shared_ptr<Connection>& conn) {
  const int fd = conn->fd;
  {
    std::mutex write_mutex;
    Session session(
        "s" + std::to_string(next_session_++), directory_resolver(options_.graph_dir),
        [fd, &write_mutex](const nlohmann::json& frame) {
          std::lock_guard lock(write_mutex);
          send_all(fd, frame.dump() + "\n");
        },
        options_.session);
    std::string buffer;
    char chunk[4096];
    while (!stopping_) {
      const ssize_t r = ::recv(fd, chunk, sizeof chunk, 0);
      if (r < 0 && errno == EINTR) continue;
      if (r <= 0) break;
      buffer.append(chunk, static_cast<std::size_t>(r));
      std::size_t nl;
      while ((nl = buffer.find('\n')) != std::string::npos) {
        const std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        if (line.find_first_not_of(" \t\r") != std::string::npos) session.handle(line);
      }
    }
  }  // session teardown flushes queued frames before the socket closes
  ::close(fd);
  conn->finished = true;
}

}  // namespace tfdp
