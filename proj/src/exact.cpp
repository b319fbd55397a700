#include "mvdp/exact.hpp"

#include <limits>
#include <string>
#include <unordered_map>

#include "mvdp/errors.hpp"

namespace mvdp {

namespace {

constexpr signed char kUnassigned = -2;
constexpr signed char kDelivered = -1;

struct Node {
  int t = 0;
  std::vector<signed char> station;
  std::vector<signed char> remaining;
  std::vector<signed char> status;  // kUnassigned, kDelivered or carrier

  std::string key() const {
    std::string k;
    k.reserve(1 + station.size() * 2 + status.size());
    k.push_back(static_cast<char>(t));
    k.append(station.begin(), station.end());
    k.append(remaining.begin(), remaining.end());
    k.append(status.begin(), status.end());
    return k;
  }
};

struct Choice {
  std::vector<int> assign;       // per request: vehicle or -1
  std::vector<int> destination;  // per vehicle: station or -1 when not decidable
};

struct Outcome {
  Node next;
  double reward = 0.0;
  std::vector<std::vector<int>> unloaded;  // per vehicle, ascending
};

class Search {
 public:
  explicit Search(const StaticInstance& inst) : inst_(inst) {}

  Node root() const {
    Node n;
    for (const StaticVehicle& v : inst_.vehicles) {
      n.station.push_back(static_cast<signed char>(v.start));
      n.remaining.push_back(static_cast<signed char>(std::min(v.join_time, 127)));
    }
    n.status.assign(inst_.requests.size(), kUnassigned);
    for (int k = 0; k < inst_.vehicle_count(); ++k)
      for (int m : inst_.vehicles[k].preload) n.status[m] = static_cast<signed char>(k);
    return n;
  }

  /// Joint choices at node n in a fixed order.
  std::vector<Choice> choices(const Node& n) const {
    const int K = inst_.vehicle_count();
    const int M = inst_.request_count();
    std::vector<int> space(K);
    for (int k = 0; k < K; ++k) space[k] = inst_.vehicles[k].capacity;
    for (int m = 0; m < M; ++m)
      if (n.status[m] >= 0) space[n.status[m]] -= inst_.requests[m].volume;

    std::vector<int> open;
    for (int m = 0; m < M; ++m)
      if (n.status[m] == kUnassigned && inst_.requests[m].appear <= n.t) open.push_back(m);

    std::vector<std::vector<int>> assigns;
    std::vector<int> current(M, -1);
    auto rec_assign = [&](auto&& self, std::size_t i) -> void {
      if (i == open.size()) {
        assigns.push_back(current);
        return;
      }
      const int m = open[i];
      const StaticRequest& r = inst_.requests[m];
      self(self, i + 1);
      for (int k = 0; k < K; ++k) {
        if (n.remaining[k] != 0 || n.station[k] != r.from || space[k] < r.volume) continue;
        space[k] -= r.volume;
        current[m] = k;
        self(self, i + 1);
        current[m] = -1;
        space[k] += r.volume;
      }
    };
    rec_assign(rec_assign, 0);

    std::vector<std::vector<int>> dests;
    std::vector<int> dest(K, -1);
    auto rec_dest = [&](auto&& self, int k) -> void {
      if (k == K) {
        dests.push_back(dest);
        return;
      }
      if (n.remaining[k] != 0) {
        self(self, k + 1);
        return;
      }
      const int here = n.station[k];
      for (int d = 0; d < inst_.graph.station_count(); ++d) {
        // Legs that cannot finish inside the window only cost.
        if (d != here && n.t + inst_.graph(here, d) > inst_.window - 1) continue;
        dest[k] = d;
        self(self, k + 1);
      }
      dest[k] = -1;
    };
    rec_dest(rec_dest, 0);

    std::vector<Choice> out;
    out.reserve(assigns.size() * dests.size());
    for (const auto& a : assigns)
      for (const auto& d : dests) out.push_back(Choice{a, d});
    return out;
  }

  Outcome apply(const Node& n, const Choice& c) const {
    const int K = inst_.vehicle_count();
    Outcome out{n, 0.0, std::vector<std::vector<int>>(K)};
    Node& x = out.next;
    for (int m = 0; m < inst_.request_count(); ++m)
      if (c.assign[m] >= 0) x.status[m] = static_cast<signed char>(c.assign[m]);
    std::vector<int> leg(K, 0);
    for (int k = 0; k < K; ++k) {
      if (c.destination[k] >= 0) {
        leg[k] = inst_.graph(n.station[k], c.destination[k]);
        x.station[k] = static_cast<signed char>(c.destination[k]);
        x.remaining[k] = static_cast<signed char>(leg[k]);
      } else if (x.remaining[k] > 0) {
        --x.remaining[k];
      }
    }
    for (int k = 0; k < K; ++k) {
      double delivered = 0.0;
      if (x.remaining[k] == 0) {
        for (int m = 0; m < inst_.request_count(); ++m) {
          if (x.status[m] == k && inst_.requests[m].to == x.station[k]) {
            x.status[m] = kDelivered;
            delivered += inst_.requests[m].value;
            out.unloaded[k].push_back(m);
          }
        }
      }
      out.reward += delivered - inst_.cost_rate * leg[k];
    }
    x.t = n.t + 1;
    return out;
  }

  double bound(const Node& n) const {
    if (n.t >= inst_.window) return 0.0;
    double b = 0.0;
    for (int m = 0; m < inst_.request_count(); ++m)
      if (n.status[m] != kDelivered) b += inst_.requests[m].value;
    return b;
  }

  /// Value of node n. Exact whenever it exceeds `need`; otherwise only the
  /// fact that the true value is <= need is known.
  double value(const Node& n, double need, bool& exact) {
    exact = true;
    if (n.t >= inst_.window) return 0.0;
    const std::string key = n.key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    double best = -std::numeric_limits<double>::infinity();
    int best_index = -1;
    bool pruned_by_need = false;
    const auto cs = choices(n);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      Outcome o = apply(n, cs[i]);
      const double floor = std::max(need, best);
      if (o.reward + bound(o.next) <= floor) {
        if (floor == need && need > best) pruned_by_need = true;
        continue;
      }
      bool child_exact = true;
      const double v = o.reward + value(o.next, floor - o.reward, child_exact);
      if (!child_exact) {
        if (floor == need && need > best) pruned_by_need = true;
        continue;
      }
      if (v > best) {
        best = v;
        best_index = static_cast<int>(i);
      }
    }
    if (best > need || !pruned_by_need) {
      memo_[key] = Entry{best, best_index};
      return best;
    }
    exact = false;
    return best;
  }

  int best_choice(const Node& n) {
    bool exact = true;
    value(n, -std::numeric_limits<double>::infinity(), exact);
    return memo_.at(n.key()).choice;
  }

 private:
  struct Entry {
    double value;
    int choice;
  };
  const StaticInstance& inst_;
  std::unordered_map<std::string, Entry> memo_;
};

void check_limits(const StaticInstance& inst, const ExactLimits& limits) {
  auto fail = [](const std::string& what, int got, int max) {
    throw TooLarge("exact solver: " + what + " " + std::to_string(got) + " exceeds limit " +
                   std::to_string(max));
  };
  if (inst.graph.station_count() > limits.max_stations)
    fail("station count", inst.graph.station_count(), limits.max_stations);
  if (inst.vehicle_count() > limits.max_vehicles) fail("vehicle count", inst.vehicle_count(), limits.max_vehicles);
  if (inst.request_count() > limits.max_requests) fail("request count", inst.request_count(), limits.max_requests);
  if (inst.window > limits.max_window) fail("window", inst.window, limits.max_window);
  if (inst.graph.station_count() > 100 || inst.graph.distance.maxCoeff() > 100)
    throw TooLarge("exact solver: distances too large");
}

/// Appends `station` at `time` unless the last stop already is that visit.
Stop& stop_at(std::vector<Stop>& route, int time, int station) {
  if (route.back().time != time || route.back().station != station)
    route.push_back(Stop{time, station, {}, {}});
  return route.back();
}

}  // namespace

Plan exact_solve(const StaticInstance& instance, const ExactLimits& limits) {
  check_limits(instance, limits);
  Search search(instance);
  Node node = search.root();
  bool exact = true;
  const double optimum = search.value(node, -std::numeric_limits<double>::infinity(), exact);

  Plan plan;
  for (const StaticVehicle& v : instance.vehicles)
    plan.routes.push_back({Stop{v.join_time, v.start, {}, {}}});
  const int K = instance.vehicle_count();
  while (node.t < instance.window) {
    const int index = search.best_choice(node);
    const Choice choice = search.choices(node)[index];
    for (int m = 0; m < instance.request_count(); ++m) {
      const int k = choice.assign[m];
      if (k >= 0) stop_at(plan.routes[k], node.t, node.station[k]).pickups.push_back(m);
    }
    Outcome o = search.apply(node, choice);
    for (int k = 0; k < K; ++k) {
      const int d = choice.destination[k];
      if (d >= 0 && d != node.station[k]) stop_at(plan.routes[k], node.t + instance.graph(node.station[k], d) + 1, d);
      if (!o.unloaded[k].empty()) {
        Stop& s = stop_at(plan.routes[k], node.t + 1, o.next.station[k]);
        s.deliveries.insert(s.deliveries.end(), o.unloaded[k].begin(), o.unloaded[k].end());
      }
    }
    node = std::move(o.next);
  }
  plan.objective = optimum;
  return plan;
}

}  // namespace mvdp
