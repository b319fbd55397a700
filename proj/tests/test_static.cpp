#include <doctest.h>

#include "mvdp/simulator.hpp"
#include "mvdp/static_instance.hpp"
#include "test_util.hpp"

using namespace mvdp;

namespace {

/// Two stations one slice apart, one vehicle at station 0, one request
/// 0 -> 1 worth 5, cost 0.3, window 3.
StaticInstance single_request() {
  StaticInstance inst;
  inst.graph = testutil::graph_of({{0, 1}, {1, 0}});
  inst.window = 3;
  inst.cost_rate = 0.3;
  inst.vehicles = {StaticVehicle{0, 1, 0, {}}};
  inst.requests = {StaticRequest{0, 1, 5.0, 1, 0, -1}};
  return inst;
}

Plan deliver_plan() {
  Plan p;
  p.routes = {{Stop{0, 0, {0}, {}}, Stop{2, 1, {}, {0}}}};
  p.objective = 4.7;
  return p;
}

}  // namespace

TEST_CASE("a direct pickup and delivery is a valid plan") {
  const StaticInstance inst = single_request();
  const Plan p = deliver_plan();
  CHECK(plan_objective(inst, p) == doctest::Approx(4.7));
  CHECK_FALSE(plan_violation(inst, p));
}

TEST_CASE("plan invariants are enforced") {
  const StaticInstance inst = single_request();
  auto broken = [&](auto edit) {
    Plan p = deliver_plan();
    edit(p);
    return plan_violation(inst, p).has_value();
  };
  CHECK(broken([](Plan& p) { p.routes[0][1].time = 1; }));                     // travel too short
  CHECK(broken([](Plan& p) { p.routes[0][1].deliveries.clear(); p.objective = -0.3; }));  // cargo not unloaded
  CHECK(broken([](Plan& p) { p.routes[0][0].station = 1; }));                  // not the origin
  CHECK(broken([](Plan& p) { p.routes[0][1].time = 4; }));                     // past the window
  CHECK(broken([](Plan& p) { p.objective = 5.0; }));                           // wrong objective
  CHECK(broken([](Plan& p) { p.routes[0][1].pickups = {0}; }));                // picked twice
  CHECK(broken([](Plan& p) { p.routes.clear(); }));

  StaticInstance late = inst;
  late.requests[0].appear = 1;
  CHECK(plan_violation(late, deliver_plan()));                                 // before it appears

  StaticInstance two = inst;
  two.requests.push_back(StaticRequest{0, 1, 1.0, 1, 0, -1});
  Plan full = deliver_plan();
  full.routes[0][0].pickups = {0, 1};
  full.routes[0][1].deliveries = {0, 1};
  full.objective = 5.7;
  CHECK(plan_violation(two, full));                                            // capacity 1
  two.vehicles[0].capacity = 2;
  CHECK_FALSE(plan_violation(two, full));
}

TEST_CASE("idle plans are valid and cost nothing") {
  const StaticInstance inst = single_request();
  const Plan p = idle_plan(inst);
  CHECK(p.objective == 0.0);
  CHECK_FALSE(plan_violation(inst, p));
}

TEST_CASE("assignments expand into plans") {
  const StaticInstance inst = single_request();
  std::vector<Assignment> genes = empty_assignment(inst);
  CHECK_FALSE(genes[0].assigned());
  genes[0] = Assignment{0, 0, 2};
  auto plan = build_plan(inst, genes);
  REQUIRE(plan);
  CHECK(plan->routes == deliver_plan().routes);
  CHECK(plan->objective == doctest::Approx(4.7));

  genes[0].delivery = 1;  // not enough time to travel
  CHECK_FALSE(build_plan(inst, genes));
  genes[0] = Assignment{0, 2, 3};  // pickup in the last slice of the window
  CHECK_FALSE(build_plan(inst, genes));
  genes[0] = Assignment{1, 0, 2};  // no such vehicle
  CHECK_FALSE(build_plan(inst, genes));
}

TEST_CASE("preloads stay with their vehicle") {
  StaticInstance inst = single_request();
  inst.vehicles[0].preload = {0};
  std::vector<Assignment> genes = empty_assignment(inst);
  CHECK(genes[0] == Assignment{0, -1, -1});
  auto idle = build_plan(inst, genes);
  REQUIRE(idle);
  CHECK(idle->objective == 0.0);
  genes[0].delivery = 2;
  auto plan = build_plan(inst, genes);
  REQUIRE(plan);
  CHECK(plan->objective == doctest::Approx(4.7));
  CHECK_FALSE(plan_violation(inst, *plan));
  genes[0].pickup = 0;
  CHECK_FALSE(build_plan(inst, genes));
}

TEST_CASE("late-joining vehicles unload on arrival at their origin stop") {
  StaticInstance inst = single_request();
  inst.vehicles[0] = StaticVehicle{1, 1, 2, {0}};
  const Plan p = idle_plan(inst);
  CHECK(p.routes[0][0].deliveries == std::vector<int>{0});
  CHECK(p.objective == doctest::Approx(5.0));
  CHECK_FALSE(plan_violation(inst, p));
}

TEST_CASE("static window from a world state") {
  auto s = std::make_shared<Scenario>();
  s->graph = testutil::graph_of({{0, 3, 1}, {3, 0, 2}, {1, 2, 0}});
  s->fleet = {{0, 2}, {1, 1}};
  s->requests = {{0, 1, 3.0, 1, 1}, {1, 2, 2.0, 1, 2}, {2, 0, 1.0, 1, 3}, {0, 2, 1.0, 1, 1}};
  s->horizon = 10;
  WorldState st = reset(s);
  st.t = 2;
  // Vehicle 0 carries request 0 and is 3 slices from station 1.
  st.requests[0] = {RequestState::picked, 0};
  st.vehicles[0] = Vehicle{2, 1, 1, 3};
  st.requests[3] = {RequestState::delivered, 1};
  st.vehicles[1].space = 1;
  st.delivered = 1;
  REQUIRE_FALSE(find_invariant_violation(st));

  const WindowMapping w = build_static_window(st, 5);
  const StaticInstance& inst = w.instance;
  CHECK(inst.window == 5);
  REQUIRE(inst.vehicles.size() == 2);
  CHECK(inst.vehicles[0].start == 1);
  CHECK(inst.vehicles[0].join_time == 3);
  CHECK(inst.vehicles[1].join_time == 0);
  CHECK(w.world_request == std::vector<int>{0, 1});  // request 2 appears at t = 3
  CHECK(inst.vehicles[0].preload == std::vector<int>{0});
  CHECK(inst.requests[1].appear == 0);
  CHECK(inst.requests[1].source == 1);
}
