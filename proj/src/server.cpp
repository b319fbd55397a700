#include "mvdp/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "mvdp/errors.hpp"
#include "mvdp/scenario_gen.hpp"

namespace mvdp {

using nlohmann::json;

void ScenarioRegistry::add(const std::string& name, Scenario scenario) {
  scenario.validate();
  fixed_[name] = std::make_shared<const Scenario>(std::move(scenario));
}

std::shared_ptr<const Scenario> ScenarioRegistry::resolve(const std::string& name, std::uint64_t seed) const {
  if (auto it = fixed_.find(name); it != fixed_.end()) return it->second;
  if (auto spec = synthetic_preset(name)) return std::make_shared<const Scenario>(generate_synthetic(*spec, seed));
  throw ConfigError("unknown scenario '" + name + "'");
}

std::vector<std::string> ScenarioRegistry::names() const {
  std::vector<std::string> out = synthetic_preset_names();
  for (const auto& [name, s] : fixed_) out.push_back(name);
  return out;
}

namespace {

const char* state_name(RequestState s) {
  switch (s) {
    case RequestState::unassigned: return "unassigned";
    case RequestState::picked: return "picked";
    case RequestState::delivered: return "delivered";
  }
  return "?";
}

json bool_rows(const BoolMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(static_cast<bool>(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Wire keys are decimal entity ids.
int entity_id(const std::string& key, const char* kind) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec != std::errc() || ptr != key.data() + key.size())
    throw ParseError(std::string(kind) + " key '" + key + "' is not an integer");
  return value;
}

std::map<int, int> action_map(const json& message, const char* field, const char* kind) {
  std::map<int, int> out;
  if (!message.contains(field)) return out;
  const json& obj = message.at(field);
  if (!obj.is_object()) throw ParseError(std::string(field) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!value.is_number_integer()) throw ParseError(std::string(field) + "." + key + " must be an integer");
    out[entity_id(key, kind)] = value.get<int>();
  }
  return out;
}

}  // namespace

json observation_json(const WorldState& state) {
  const Scenario& s = state.scene();
  const int I = s.station_count();
  json obs;
  obs["t"] = state.t;
  obs["horizon"] = s.horizon;
  obs["cost_rate"] = s.cost_rate;
  obs["objective"] = state.objective;

  json distance = json::array();
  for (int i = 0; i < I; ++i) {
    json row = json::array();
    for (int j = 0; j < I; ++j) row.push_back(s.graph(i, j));
    distance.push_back(std::move(row));
  }
  obs["distance"] = std::move(distance);

  json vehicles = json::array();
  for (const Vehicle& v : state.vehicles)
    vehicles.push_back({{"cap", v.capacity}, {"spa", v.space}, {"to", v.destination}, {"dist", v.remaining}});
  obs["vehicles"] = std::move(vehicles);

  std::vector<int> ori(I, 0), dest(I, 0);
  json requests = json::array();
  int m_t = 0;
  for (int m = 0; m < s.request_count(); ++m) {
    if (!state.visible(m)) continue;
    const Request& r = s.requests[m];
    const RequestStatus& st = state.requests[m];
    requests.push_back({{"id", m}, {"from", r.from}, {"to", r.to}, {"val", r.value}, {"vol", r.volume},
                        {"time", r.appear}, {"state", state_name(st.state)}, {"carrier", st.carrier}});
    if (st.state == RequestState::unassigned) {
      ++m_t;
      ++ori[r.from];
      ++dest[r.to];
    } else if (st.state == RequestState::picked) {
      ++dest[r.to];
    }
  }
  obs["m_t"] = m_t;
  obs["requests"] = std::move(requests);
  obs["ori"] = ori;
  obs["dest"] = dest;

  const ActionMasks masks = action_masks(state);
  obs["masks"] = {{"request_ids", masks.request_ids},
                  {"requests", bool_rows(masks.requests)},
                  {"vehicles", bool_rows(masks.vehicles)}};
  return obs;
}

json Session::error(const std::string& what) const {
  return {{"ok", false}, {"t", state_ ? state_->t : -1}, {"error", what}};
}

json Session::reset(const json& message) {
  std::uint64_t seed = 0;
  if (message.contains("seed")) {
    const json& v = message["seed"];
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      return error("seed must be a non-negative integer");
    seed = message["seed"].get<std::uint64_t>();
  }
  if (!message.contains("scenario")) return error("reset needs a scenario");
  const json& spec = message["scenario"];
  std::shared_ptr<const Scenario> scenario;
  try {
    if (spec.is_string()) scenario = registry_.resolve(spec.get<std::string>(), seed);
    else if (spec.is_object()) scenario = std::make_shared<const Scenario>(scenario_from_text(spec.dump()));
    else return error("scenario must be a name or an object");
    state_ = mvdp::reset(scenario, seed);
  } catch (const Error& e) {
    return error(e.what());
  }
  return {{"ok", true}, {"t", state_->t}, {"observation", observation_json(*state_)}};
}

json Session::step(const json& message) {
  if (!state_) return error("no episode: send reset first");
  JointAction action;
  try {
    action.request_actions = action_map(message, "request_actions", "request");
    action.vehicle_actions = action_map(message, "vehicle_actions", "vehicle");
  } catch (const ParseError& e) {
    json r = error("parse");
    r["detail"] = e.what();
    return r;
  }
  StepResult result;
  try {
    result = mvdp::step(*state_, action);
  } catch (const RejectedAction& e) {
    json r = error(e.what());
    r["entity"] = e.entity();
    return r;
  }
  state_ = std::move(result.next_state);
  json events = json::array();
  for (const Event& ev : result.events)
    events.push_back({{"t", ev.t}, {"kind", to_string(ev.kind)}, {"vehicle", ev.vehicle},
                      {"request", ev.request}, {"station", ev.station}});
  return {{"ok", true},
          {"t", state_->t},
          {"reward", result.reward},
          {"done", result.done},
          {"events", std::move(events)},
          {"observation", observation_json(*state_)}};
}

json Session::handle_message(const json& message) {
  if (!message.is_object() || !message.contains("cmd") || !message["cmd"].is_string()) {
    json r = error("parse");
    r["detail"] = "message must be an object with a string cmd";
    return r;
  }
  const std::string cmd = message["cmd"].get<std::string>();
  if (cmd == "reset") return reset(message);
  if (cmd == "step") return step(message);
  if (cmd == "observe") {
    if (!state_) return error("no episode: send reset first");
    return {{"ok", true}, {"t", state_->t}, {"done", state_->done()}, {"observation", observation_json(*state_)}};
  }
  if (cmd == "close") {
    closed_ = true;
    return {{"ok", true}, {"t", state_ ? state_->t : -1}};
  }
  return error("unknown cmd '" + cmd + "'");
}

std::string Session::handle_line(const std::string& line) {
  json message;
  try {
    message = json::parse(line);
  } catch (const json::exception& e) {
    json r = error("parse");
    r["detail"] = e.what();
    return r.dump();
  }
  return handle_message(message).dump();
}

void serve_stream(std::istream& in, std::ostream& out, const ScenarioRegistry& registry) {
  Session session(registry);
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << session.handle_line(line) << '\n';
    out.flush();
  }
}

TcpServer::~TcpServer() { stop(); }

int TcpServer::start(int port, const std::string& host) {
  if (running_) throw Error("server already running");
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error("socket() failed");
  int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw ConfigError("bad listen address '" + host + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
  return ntohs(addr.sin_port);
}

void TcpServer::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (!running_) break;
      continue;
    }
    std::lock_guard lock(mutex_);
    if (!running_) {
      ::close(fd);
      break;
    }
    client_fds_.push_back(fd);
    clients_.emplace_back([this, fd] { serve_client(fd); });
  }
}

void TcpServer::serve_client(int fd) {
  Session session(registry_);
  std::string buffer;
  char chunk[4096];
  auto send_all = [fd](const std::string& text) {
    std::size_t sent = 0;
    while (sent < text.size()) {
      const ssize_t n = ::send(fd, text.data() + sent, text.size() - sent, MSG_NOSIGNAL);
      if (n <= 0) return false;
      sent += static_cast<std::size_t>(n);
    }
    return true;
  };
  while (!session.closed()) {
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t pos;
    bool ok = true;
    while (ok && !session.closed() && (pos = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, pos);
      buffer.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      ok = send_all(session.handle_line(line) + "\n");
    }
    if (!ok) break;
  }
  std::lock_guard lock(mutex_);
  client_fds_.erase(std::remove(client_fds_.begin(), client_fds_.end(), fd), client_fds_.end());
  ::shutdown(fd, SHUT_RDWR);
  ::close(fd);
}

void TcpServer::stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  listen_fd_ = -1;
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> clients;
  {
    std::lock_guard lock(mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    clients.swap(clients_);
  }
  for (auto& t : clients) t.join();
}

}  // namespace mvdp
