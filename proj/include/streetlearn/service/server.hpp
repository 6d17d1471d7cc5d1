#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "streetlearn/service/session.hpp"

namespace streetlearn::wire {

enum class Transport { kTcp, kWebSocket };

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks a free port
  Transport transport = Transport::kWebSocket;
  EnvFactory factory;      // empty: make_environment
};

// Accepts connections and serves each on its own thread, so a slow client
// only ever blocks itself.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;
  // Runs the accept loop on a background thread.
  void start();
  // Blocks until stop() is called from elsewhere.
  void run();
  // Closes the listener and every open connection, then joins all threads.
  void stop();

  std::size_t sessions_served() const { return served_.load(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::atomic<std::size_t> served_{0};
};

}  // namespace streetlearn::wire
