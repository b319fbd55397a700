// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
//
//   acceptance                          run every criterion
//   acceptance --only NAME              run one criterion
//   acceptance --record-transcript F    rewrite the protocol fixture

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "mvdp/annealing.hpp"
#include "mvdp/bench.hpp"
#include "mvdp/exact.hpp"
#include "mvdp/genetic.hpp"
#include "mvdp/nearest.hpp"
#include "mvdp/prior.hpp"
#include "mvdp/rolling_horizon.hpp"
#include "mvdp/scenario_gen.hpp"
#include "mvdp/server.hpp"
#include "test_util.hpp"

using namespace mvdp;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::shared_ptr<const Scenario> synth(const std::string& preset, std::uint64_t seed) {
  return std::make_shared<const Scenario>(generate_synthetic(*synthetic_preset(preset), seed));
}

// --- telescoping ----------------------------------------------------------

Verdict telescoping() {
  const auto start = Clock::now();
  const std::vector<std::string> presets = {"tiny", "synth-S", "synth-S-cost", "synth-L-cost"};
  Rng rng(20240601);
  double worst = 0.0;
  int episodes = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string& preset = presets[i % presets.size()];
    const std::uint64_t seed = 1000 + i;
    auto scenario = synth(preset, seed);
    Policy policy;
    switch (i % 3) {
      case 0: policy = [&rng](const WorldState& s) { return testutil::random_action(s, rng, 0.2); }; break;
      case 1: policy = nearest_act; break;
      default: policy = make_policy("prior", *scenario, preset, seed);
    }
    const EpisodeSummary e = run_episode(scenario, policy, seed);
    const double sum = std::accumulate(e.rewards.begin(), e.rewards.end(), 0.0);
    worst = std::max(worst, std::abs(sum - objective_value(e.history, scenario->cost_rate)));
    worst = std::max(worst, std::abs(sum - e.objective));
    ++episodes;
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-9 && elapsed < 60.0,
          std::to_string(episodes) + " episodes, max |sum rewards - Obj| = " + fmt_g(worst) +
              ", " + fmt(elapsed, 1) + " s (limit 60 s)"};
}

// --- state machine ----------------------------------------------------------

std::optional<std::string> transition_violation(const WorldState& a, const WorldState& b) {
  const Scenario& s = a.scene();
  if (b.t != a.t + 1) return std::string("time did not advance by one");
  for (int m = 0; m < s.request_count(); ++m) {
    const RequestStatus &x = a.requests[m], &y = b.requests[m];
    if (!a.visible(m) && y.state != RequestState::unassigned) return "invisible request " + std::to_string(m) + " moved";
    if (x.state == RequestState::picked && y.state == RequestState::unassigned)
      return "request " + std::to_string(m) + " went back to unassigned";
    if (x.state == RequestState::delivered && y.state != RequestState::delivered)
      return "request " + std::to_string(m) + " left delivered";
    if (x.state != RequestState::unassigned && y.carrier != x.carrier)
      return "request " + std::to_string(m) + " changed carrier";
    if (x.state != RequestState::delivered && y.state == RequestState::delivered) {
      const Vehicle& v = b.vehicles[y.carrier];
      if (!v.at_station() || v.destination != s.requests[m].to)
        return "request " + std::to_string(m) + " delivered away from its destination";
    }
  }
  for (std::size_t k = 0; k < a.vehicles.size(); ++k) {
    const Vehicle &x = a.vehicles[k], &y = b.vehicles[k];
    if (!x.at_station() && (y.remaining != x.remaining - 1 || y.destination != x.destination))
      return "vehicle " + std::to_string(k) + " changed course while en route";
    if (y.capacity != x.capacity) return "vehicle " + std::to_string(k) + " changed capacity";
  }
  return std::nullopt;
}

Verdict invariants() {
  const auto start = Clock::now();
  const std::vector<std::string> presets = {"tiny", "synth-S", "synth-S-cost"};
  Rng rng(77);
  int violations = 0, steps = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    auto scenario = synth(presets[i % presets.size()], 5000 + i);
    const double bias = 0.1 * (i % 8);
    WorldState st = reset(scenario, i);
    while (!st.done()) {
      const WorldState next = step(st, testutil::random_action(st, rng, bias)).next_state;
      auto v = find_invariant_violation(next);
      if (!v) v = transition_violation(st, next);
      if (v) {
        if (violations++ == 0) first = *v;
      }
      st = next;
      ++steps;
    }
  }
  return {violations == 0, "1000 episodes, " + std::to_string(steps) + " steps, " + std::to_string(violations) +
                               " violations" + (first.empty() ? "" : " (first: " + first + ")") + ", " +
                               fmt(seconds_since(start), 1) + " s"};
}

// --- exact oracle -----------------------------------------------------------

Verdict exact_oracle() {
  const auto start = Clock::now();
  Rng rng(4242);
  int equal = 0, total = 0, positive = 0;
  for (; total < 200; ++total) {
    const StaticInstance inst = testutil::random_instance(rng);
    const double oracle = testutil::enumerate_optimum(inst);
    if (oracle > 0.0) ++positive;
    if (exact_solve(inst).objective == oracle) ++equal;
  }
  const double elapsed = seconds_since(start);
  return {equal == total && elapsed < 300.0,
          std::to_string(equal) + "/" + std::to_string(total) + " exactly equal (" + std::to_string(positive) +
              " with a positive optimum), " + fmt(elapsed, 1) + " s (limit 300 s)"};
}

// --- SA / GA ----------------------------------------------------------------

Verdict metaheuristics() {
  const auto start = Clock::now();
  Rng rng(9001);
  testutil::TinyShape shape;
  shape.max_stations = 3;
  shape.max_vehicles = 1;
  shape.max_requests = 2;
  shape.max_window = 6;
  shape.en_route = false;
  shape.exact_size = true;

  int sa_hits = 0, ga_hits = 0, invalid = 0, non_monotone = 0, above = 0;
  for (int run = 0; run < 100; ++run) {
    const StaticInstance inst = testutil::random_instance(rng, shape);
    const double optimum = exact_solve(inst).objective;
    std::vector<double> trace;
    const Plan sa = sa_solve(inst, SAParams{}, rng, &trace);
    if (plan_violation(inst, sa)) ++invalid;
    for (std::size_t i = 1; i < trace.size(); ++i)
      if (trace[i] < trace[i - 1]) { ++non_monotone; break; }
    if (std::abs(sa.objective - optimum) <= 1e-9) ++sa_hits;
    if (sa.objective > optimum + 1e-9) ++above;

    const Plan ga = ga_solve(inst, GAParams{}, rng, &trace, [&](int, const std::vector<Plan>& pop) {
      for (const Plan& p : pop)
        if (plan_violation(inst, p)) ++invalid;
    });
    if (plan_violation(inst, ga)) ++invalid;
    for (std::size_t i = 1; i < trace.size(); ++i)
      if (trace[i] < trace[i - 1]) { ++non_monotone; break; }
    if (std::abs(ga.objective - optimum) <= 1e-9) ++ga_hits;
    if (ga.objective > optimum + 1e-9) ++above;
  }
  const bool ok = sa_hits >= 95 && ga_hits >= 90 && invalid == 0 && non_monotone == 0 && above == 0;
  return {ok, "SA optimal " + std::to_string(sa_hits) + "/100 (need 95), GA optimal " + std::to_string(ga_hits) +
                  "/100 (need 90), invalid plans " + std::to_string(invalid) + ", non-monotone traces " +
                  std::to_string(non_monotone) + ", above optimum " + std::to_string(above) + ", " +
                  fmt(seconds_since(start), 1) + " s"};
}

// --- synth-S policies -------------------------------------------------------

struct Means {
  double obj = 0.0, comp = 0.0, seconds = 0.0, worst_seconds = 0.0;
};

Means synth_s_means(const std::string& policy, int seeds, const ConfigMap& params = {}) {
  BenchConfig config;
  config.preset = "synth-S";
  config.policy = policy;
  for (int s = 0; s < seeds; ++s) config.seeds.push_back(static_cast<std::uint64_t>(s));
  config.params = params;
  const ResultTable table = run_benchmark(config);
  Means m;
  for (const ResultRow& r : table.rows) {
    m.obj += r.obj / seeds;
    m.comp += r.comp / seeds;
    m.seconds += r.seconds / seeds;
    m.worst_seconds = std::max(m.worst_seconds, r.seconds);
  }
  return m;
}

Verdict nearest_reference() {
  const auto start = Clock::now();
  const Means m = synth_s_means("nearest", 100);
  const double elapsed = seconds_since(start);
  const bool ok = std::abs(m.comp - 0.57) <= 0.10 && std::abs(m.obj - 189.2) <= 0.15 * 189.2 && elapsed < 120.0;
  return {ok, "mean Obj " + fmt(m.obj, 2) + " (target 189.2 +-15%: [160.82, 217.58]), mean Comp " + fmt(m.comp) +
                  " (target 0.57 +-0.10), " + fmt(elapsed, 1) + " s (limit 120 s)"};
}

Verdict prior_reference() {
  const Means m = synth_s_means("prior", 100);
  const bool ok = std::abs(m.obj - 267.1) <= 0.10 * 267.1 && std::abs(m.comp - 0.81) <= 0.08;
  return {ok, "mean Obj " + fmt(m.obj, 2) + " (target 267.1 +-10%: [240.39, 293.81]), mean Comp " + fmt(m.comp) +
                  " (target 0.81 +-0.08)"};
}

Verdict rolling_sa() {
  const int seeds = 10;
  const Means rh = synth_s_means("sa-rh", seeds, {{"rh.horizon", "20"}, {"rh.replan", "10"}});
  const Means null = synth_s_means("null", seeds);
  const bool ok = rh.worst_seconds < 30.0 && rh.obj > null.obj;
  return {ok, std::to_string(seeds) + " seeds: mean Obj " + fmt(rh.obj, 2) + " vs null " + fmt(null.obj, 2) +
                  ", slowest episode " + fmt(rh.worst_seconds, 2) + " s (limit 30 s), mean Comp " + fmt(rh.comp)};
}

// --- protocol ---------------------------------------------------------------

using Transcript = std::vector<std::pair<std::string, std::string>>;

Transcript record_session() {
  using nlohmann::json;
  ScenarioRegistry registry;
  Session session(registry);
  Transcript out;
  auto send = [&](const std::string& line) { out.emplace_back(line, session.handle_line(line)); };
  auto step_line = [](const JointAction& a) {
    json ra = json::object(), va = json::object();
    for (const auto& [m, k] : a.request_actions) ra[std::to_string(m)] = k;
    for (const auto& [k, i] : a.vehicle_actions) va[std::to_string(k)] = i;
    return json{{"cmd", "step"}, {"request_actions", ra}, {"vehicle_actions", va}}.dump();
  };

  send(R"({"cmd":"observe"})");
  send(R"({"cmd":"reset","scenario":"synth-S-cost","seed":11})");
  auto scenario = synth("synth-S-cost", 11);
  WorldState local = reset(scenario, 11);
  PriorPolicy prior(PriorConfig::for_scenario(*scenario), 11);
  for (int i = 0; i < 12; ++i) {
    const JointAction a = i % 2 ? nearest_act(local) : prior(local);
    send(step_line(a));
    local = step(local, a).next_state;
  }
  send(R"({"cmd":"step","request_actions":{},"vehicle_actions":{}})");
  send("{\"cmd\": \"step\", broken");
  send(R"({"cmd":"observe","note":"unknown fields are ignored"})");

  send(R"({"cmd":"reset","scenario":"tiny","seed":3})");
  local = reset(synth("tiny", 3), 3);
  while (!local.done()) {
    const JointAction a = nearest_act(local);
    send(step_line(a));
    local = step(local, a).next_state;
  }
  send(R"({"cmd":"step","request_actions":{},"vehicle_actions":{}})");
  send(R"({"cmd":"teleport"})");
  send(R"({"cmd":"close"})");
  return out;
}

void write_transcript(const Transcript& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& [sent, received] : t) out << nlohmann::json{{"send", sent}, {"recv", received}}.dump() << '\n';
  if (!out) throw Error("cannot write " + path);
}

Verdict protocol() {
  std::ifstream in(std::string(MVDP_TEST_DATA) + "/transcript.jsonl", std::ios::binary);
  if (!in) return {false, "fixture tests/data/transcript.jsonl missing"};
  ScenarioRegistry registry;
  Session session(registry);
  std::string line;
  int lines = 0, mismatches = 0;
  while (std::getline(in, line)) {
    const auto entry = nlohmann::json::parse(line);
    if (session.handle_line(entry["send"].get<std::string>()) != entry["recv"].get<std::string>()) ++mismatches;
    ++lines;
  }
  // A second in-process recording must agree with itself as well.
  const bool stable = record_session() == record_session();
  return {lines > 0 && mismatches == 0 && stable,
          std::to_string(lines) + " recorded exchanges, " + std::to_string(mismatches) + " mismatches, re-recording " +
              (stable ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--record-transcript" && i + 1 < argc) {
      write_transcript(record_session(), argv[++i]);
      return 0;
    }
    if (arg == "--only" && i + 1 < argc) only = argv[++i];
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"telescoping", telescoping},
      {"invariants", invariants},
      {"exact-oracle", exact_oracle},
      {"sa-ga-soundness", metaheuristics},
      {"nearest-synth-S", nearest_reference},
      {"prior-synth-S", prior_reference},
      {"rolling-horizon-sa", rolling_sa},
      {"protocol-determinism", protocol},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && name != only) continue;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return failed;
}
