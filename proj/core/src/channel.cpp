#include "memclust/channel.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <deque>
#include <mutex>
#include <string>

#include "memclust/types.hpp"

namespace memclust {

struct InProcessNetwork::Shared {
  struct Mailbox {
    std::mutex mutex;
    std::deque<Message> queue;
  };
  explicit Shared(std::size_t n, std::size_t cap) : boxes(n), capacity(cap) {}
  std::vector<Mailbox> boxes;
  std::size_t capacity;
};

namespace {

class InProcessEndpoint final : public Endpoint {
 public:
  InProcessEndpoint(std::shared_ptr<InProcessNetwork::Shared> shared, std::size_t rank)
      : shared_(std::move(shared)), rank_(rank) {}

  std::size_t rank() const override { return rank_; }
  std::size_t size() const override { return shared_->boxes.size(); }

  bool send(std::size_t to, std::span<const std::byte> payload) override {
    if (to >= size()) return false;
    auto& box = shared_->boxes[to];
    std::lock_guard lock(box.mutex);
    if (box.queue.size() >= shared_->capacity) return false;
    box.queue.emplace_back(payload.begin(), payload.end());
    return true;
  }

  std::optional<Message> try_receive() override {
    auto& box = shared_->boxes[rank_];
    std::lock_guard lock(box.mutex);
    if (box.queue.empty()) return std::nullopt;
    Message m = std::move(box.queue.front());
    box.queue.pop_front();
    return m;
  }

 private:
  std::shared_ptr<InProcessNetwork::Shared> shared_;
  std::size_t rank_;
};

class SocketEndpoint final : public Endpoint {
 public:
  SocketEndpoint(std::size_t rank, int receive_fd, std::vector<int> send_fds)
      : rank_(rank), receive_fd_(receive_fd), send_fds_(std::move(send_fds)) {}

  std::size_t rank() const override { return rank_; }
  std::size_t size() const override { return send_fds_.size(); }

  bool send(std::size_t to, std::span<const std::byte> payload) override {
    if (to >= size()) return false;
    const ssize_t sent = ::send(send_fds_[to], payload.data(), payload.size(), MSG_DONTWAIT);
    return sent == static_cast<ssize_t>(payload.size());
  }

  std::optional<Message> try_receive() override {
    // MSG_TRUNC makes recv report the real datagram length.
    const ssize_t len = ::recv(receive_fd_, nullptr, 0, MSG_PEEK | MSG_TRUNC | MSG_DONTWAIT);
    if (len < 0) return std::nullopt;
    Message m(static_cast<std::size_t>(len));
    const ssize_t got = ::recv(receive_fd_, m.data(), m.size(), MSG_DONTWAIT);
    if (got != len) return std::nullopt;
    return m;
  }

 private:
  std::size_t rank_;
  int receive_fd_;
  std::vector<int> send_fds_;
};

}  // namespace

InProcessNetwork::InProcessNetwork(std::size_t size, std::size_t mailbox_capacity)
    : shared_(std::make_shared<Shared>(size, mailbox_capacity)) {}

InProcessNetwork::~InProcessNetwork() = default;

std::size_t InProcessNetwork::size() const { return shared_->boxes.size(); }

std::unique_ptr<Endpoint> InProcessNetwork::endpoint(std::size_t rank) {
  if (rank >= size()) throw Error("endpoint rank out of range");
  return std::make_unique<InProcessEndpoint>(shared_, rank);
}

SocketNetwork::SocketNetwork(std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_DGRAM, 0, fds) != 0) {
      const std::string reason = std::strerror(errno);
      close_all();
      throw Error("socketpair: " + reason);
    }
    // Best effort; the kernel caps this at its configured maximum.
    const int buffer = 8 << 20;
    ::setsockopt(fds[1], SOL_SOCKET, SO_SNDBUF, &buffer, sizeof buffer);
    ::setsockopt(fds[0], SOL_SOCKET, SO_RCVBUF, &buffer, sizeof buffer);
    receive_fds_.push_back(fds[0]);
    send_fds_.push_back(fds[1]);
  }
}

SocketNetwork::~SocketNetwork() { close_all(); }

void SocketNetwork::close_all() {
  for (int fd : receive_fds_) ::close(fd);
  for (int fd : send_fds_) ::close(fd);
  receive_fds_.clear();
  send_fds_.clear();
}

std::unique_ptr<Endpoint> SocketNetwork::endpoint(std::size_t rank) {
  if (rank >= size()) throw Error("endpoint rank out of range");
  return std::make_unique<SocketEndpoint>(rank, receive_fds_[rank], send_fds_);
}

}  // namespace memclust
