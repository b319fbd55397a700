#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mvdp/simulator.hpp"

namespace mvdp {

/// Names a client may pass to reset: synthetic presets (regenerated from the
/// reset seed) plus fixed scenarios registered up front.
class ScenarioRegistry {
 public:
  void add(const std::string& name, Scenario scenario);
  /// Throws ConfigError for unknown names.
  std::shared_ptr<const Scenario> resolve(const std::string& name, std::uint64_t seed) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::shared_ptr<const Scenario>> fixed_;
};

/// Everything a client sees at the current slice. Invisible requests are
/// left out entirely.
nlohmann::json observation_json(const WorldState& state);

/// One client connection: at most one episode, messages handled in order.
class Session {
 public:
  explicit Session(const ScenarioRegistry& registry) : registry_(registry) {}

  nlohmann::json handle_message(const nlohmann::json& message);
  /// Parses one line and returns the serialized response (no newline).
  std::string handle_line(const std::string& line);
  bool closed() const { return closed_; }
  const std::optional<WorldState>& state() const { return state_; }

 private:
  nlohmann::json reset(const nlohmann::json& message);
  nlohmann::json step(const nlohmann::json& message);
  nlohmann::json error(const std::string& what) const;

  const ScenarioRegistry& registry_;
  std::optional<WorldState> state_;
  bool closed_ = false;
};

/// Serves one session over a pair of streams until close or end of input.
void serve_stream(std::istream& in, std::ostream& out, const ScenarioRegistry& registry);

/// Line protocol over TCP, one thread and one session per connection.
class TcpServer {
 public:
  explicit TcpServer(const ScenarioRegistry& registry) : registry_(registry) {}
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  /// Binds 127.0.0.1:port (0 picks a free port) and returns the bound port.
  int start(int port, const std::string& host = "127.0.0.1");
  void stop();

 private:
  void accept_loop();
  void serve_client(int fd);

  const ScenarioRegistry& registry_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex mutex_;
  std::vector<int> client_fds_;
  std::vector<std::thread> clients_;
};

}  // namespace mvdp
