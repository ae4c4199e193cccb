#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace memclust {

using Message = std::vector<std::byte>;

/// One island's end of a message network with ranks 0..size()-1. Sends are
/// fire-and-forget and receives never block; a transport may drop messages.
class Endpoint {
 public:
  virtual ~Endpoint() = default;

  virtual std::size_t rank() const = 0;
  virtual std::size_t size() const = 0;

  /// Returns false if the message was dropped.
  virtual bool send(std::size_t to, std::span<const std::byte> payload) = 0;
  virtual std::optional<Message> try_receive() = 0;
};

/// Mutex-guarded mailboxes shared by threads of one process. Endpoints stay
/// valid while the network lives.
class InProcessNetwork {
 public:
  /// A mailbox holding `mailbox_capacity` messages drops further sends.
  explicit InProcessNetwork(std::size_t size, std::size_t mailbox_capacity = 256);
  ~InProcessNetwork();
  InProcessNetwork(const InProcessNetwork&) = delete;
  InProcessNetwork& operator=(const InProcessNetwork&) = delete;

  std::size_t size() const;
  std::unique_ptr<Endpoint> endpoint(std::size_t rank);

  struct Shared;

 private:
  std::shared_ptr<Shared> shared_;
};

/// Datagram sockets between processes. Create it before fork(); each child
/// then takes its endpoint. Messages larger than the socket buffer are dropped.
class SocketNetwork {
 public:
  explicit SocketNetwork(std::size_t size);
  ~SocketNetwork();
  SocketNetwork(const SocketNetwork&) = delete;
  SocketNetwork& operator=(const SocketNetwork&) = delete;

  std::size_t size() const { return receive_fds_.size(); }

  /// The endpoint shares the network's descriptors, so the network must
  /// outlive it.
  std::unique_ptr<Endpoint> endpoint(std::size_t rank);

 private:
  void close_all();

  std::vector<int> receive_fds_;
  std::vector<int> send_fds_;
};

}  // namespace memclust
