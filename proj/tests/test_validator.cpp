#include "doctest.h"
#include "efleet/exact.hpp"
#include "efleet/validator.hpp"

#include <algorithm>
#include <random>

using namespace efleet;

namespace {

Trip makeTrip(const std::string& id, Point o, Point d, int start, int end,
              double energy = -1) {
  Trip t;
  t.id = id;
  t.origin = o;
  t.destination = d;
  t.startTime = start;
  t.endTime = end;
  t.energy = energy < 0 ? end - start : energy;
  return t;
}

Station makeGarage(Point loc = {0, 0}, double rate = 8.03, int plugs = 10) {
  Station s;
  s.id = "garage";
  s.location = loc;
  s.rate = rate;
  s.plugs = plugs;
  s.isGarage = true;
  return s;
}

Station makeStation(const std::string& id, Point loc, double rate = 8.03,
                    int plugs = 2) {
  Station s;
  s.id = id;
  s.location = loc;
  s.rate = rate;
  s.plugs = plugs;
  return s;
}

bool has(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.kind == k; });
}

Network randomNetwork(std::mt19937& rng, int n, bool heavy = false) {
  std::uniform_real_distribution<double> coord(0, 8);
  std::uniform_int_distribution<int> start(360, 1000);
  std::uniform_int_distribution<int> dur(30, 90);
  std::uniform_real_distribution<double> energyScale(1.0, heavy ? 2.5 : 1.3);
  std::vector<Trip> trips;
  for (int i = 0; i < n; ++i) {
    int s = start(rng);
    int d = dur(rng);
    auto t = makeTrip("t" + std::to_string(i), {coord(rng), coord(rng)},
                      {coord(rng), coord(rng)}, s, s + d, d * energyScale(rng));
    trips.push_back(t);
  }
  std::vector<Station> stations{makeGarage({4, 4}),
                                makeStation("c1", {coord(rng), coord(rng)}, 8.03, 2)};
  return Network(std::move(trips), std::move(stations), 0, 20);
}

}  // namespace

TEST_CASE("exact optimum validates clean") {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 8; ++rep) {
    Network net = randomNetwork(rng, 4, rep % 2 == 1);
    OpParams p;
    p.fleetShare = (rep % 3) * 0.5;
    CompatibilityIndex compat(net, p);
    ExactModel model = buildExact(compat, CostParams{});
    Solution sol = solveExact(model, 60);
    auto vs = validate(sol, compat, CostParams{});
    for (const auto& v : vs) MESSAGE(v.describe());
    CHECK(vs.empty());
  }
}

TEST_CASE("targeted corruptions trip the matching check") {
  auto a = makeTrip("A", {0, 0}, {0, 0}, 400, 500, 150);
  auto b = makeTrip("B", {0, 0}, {0, 0}, 560, 660, 150);
  Network net({a, b}, {makeGarage({0, 0}), makeStation("c", {0, 0})}, 0, 20);
  OpParams p;
  p.fleetShare = 1.0;
  CompatibilityIndex compat(net, p);
  ExactModel model = buildExact(compat, p.fleetShare > 0 ? CostParams{} : CostParams{});
  Solution sol = solveExact(model, 30);
  REQUIRE(validate(sol, compat, CostParams{}).empty());
  REQUIRE(sol.runs.size() == 1);
  REQUIRE(sol.runs[0].visits.size() == 1);

  SUBCASE("zeroed charging starves the battery") {
    sol.runs[0].visits[0].chargeDuration = 0;
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::SoCFloor));
  }
  SUBCASE("oversized charging bursts the ceiling") {
    sol.runs[0].visits[0].chargeDuration = 60;
    auto vs = validate(sol, compat, CostParams{});
    CHECK((has(vs, ViolationKind::SoCCeiling) || has(vs, ViolationKind::ChargeWindow)));
  }
  SUBCASE("charge start before arrival") {
    sol.runs[0].visits[0].chargeStart = 300;
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::ChargeWindow));
  }
  SUBCASE("charge end past departure") {
    sol.runs[0].visits[0].chargeStart = 555;
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::ChargeWindow));
  }
  SUBCASE("dropped trip breaks coverage") {
    sol.runs[0].trips.pop_back();
    sol.runs[0].visits.clear();
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::Coverage));
  }
  SUBCASE("reversed chain is incompatible") {
    std::swap(sol.runs[0].trips[0], sol.runs[0].trips[1]);
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::Compatibility));
  }
  SUBCASE("missing visit on a long layover") {
    sol.runs[0].visits.clear();
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::LayoverRule));
  }
  SUBCASE("tampered objective is caught") {
    sol.objective += 5;
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::CostMismatch));
  }
}

TEST_CASE("overlapping visits at a single plug") {
  auto a1 = makeTrip("A1", {0, 0}, {0, 0}, 400, 500, 150);
  auto a2 = makeTrip("A2", {0, 0}, {0, 0}, 560, 660, 150);
  auto b1 = makeTrip("B1", {0, 0}, {0, 0}, 405, 505, 150);
  auto b2 = makeTrip("B2", {0, 0}, {0, 0}, 565, 665, 150);
  Network net({a1, a2, b1, b2},
              {makeGarage({0, 0}), makeStation("c", {0, 0}, 8.03, 1)}, 0, 20);
  OpParams p;
  p.fleetShare = 1.0;
  CompatibilityIndex compat(net, p);

  Solution sol;
  sol.hasTimeSharePenalty = true;
  VehicleRun r1;
  r1.type = VehicleType::Electric;
  r1.trips = {0, 1};
  r1.visits = {{0, 1, 510, 20}};
  VehicleRun r2;
  r2.type = VehicleType::Electric;
  r2.trips = {2, 3};
  r2.visits = {{0, 1, 512, 20}};
  sol.runs = {r1, r2};

  auto vs = validate(sol, compat, CostParams{});
  CHECK(has(vs, ViolationKind::PlugCapacity));

  // staggering the second visit clears the capacity check
  sol.runs[1].visits[0].chargeStart = 535;
  auto vs2 = validate(sol, compat, CostParams{});
  CHECK(!has(vs2, ViolationKind::PlugCapacity));
}

TEST_CASE("horizon and overnight checks") {
  SUBCASE("run longer than the horizon") {
    auto a = makeTrip("A", {1, 0}, {1, 0}, 100, 200, 1500);
    Network net({a}, {makeGarage()}, 0, 20);
    OpParams p;
    CompatibilityIndex compat(net, p);
    Solution sol;
    VehicleRun r;
    r.type = VehicleType::Diesel;
    r.trips = {0};
    sol.runs = {r};
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::HorizonOverrun));
  }
  SUBCASE("no time left to replenish overnight") {
    auto a = makeTrip("A", {1, 0}, {1, 0}, 1200, 1300, 100);
    Network net({a}, {makeGarage({0, 0}, 0.01)}, 0, 20);
    OpParams p;
    CompatibilityIndex compat(net, p);
    Solution sol;
    VehicleRun r;
    r.type = VehicleType::Electric;
    r.trips = {0};
    r.socAtTripStart = {p.socInitial - 3};
    sol.runs = {r};
    CHECK(has(validate(sol, compat, CostParams{}), ViolationKind::OvernightRecharge));
  }
}

TEST_CASE("brute force on the canonical single trip") {
  auto t = makeTrip("A", {10, 0}, {10, 0}, 480, 540);
  Network net({t}, {makeGarage()}, 0, 20);
  OpParams p;
  p.fleetShare = 1.0;
  p.timeShare = 1.0;
  CompatibilityIndex compat(net, p);
  auto res = bruteForce(compat, CostParams{});
  CHECK(res.objective == doctest::Approx(466).epsilon(1e-9));
  REQUIRE(res.solution.runs.size() == 1);
  CHECK(res.solution.runs[0].type == VehicleType::Electric);
  CHECK(validate(res.solution, compat, CostParams{}).empty());
}

TEST_CASE("brute force trivia") {
  Network net({}, {makeGarage()}, 0, 20);
  OpParams p;
  CompatibilityIndex compat(net, p);
  CHECK(bruteForce(compat, CostParams{}).objective == 0);

  auto a = makeTrip("A", {1, 0}, {1, 0}, 400, 460);
  std::vector<Trip> many(7, a);
  for (int i = 0; i < 7; ++i) many[i].id = "t" + std::to_string(i);
  for (int i = 0; i < 7; ++i) many[i].startTime = 400 + 100 * i;
  for (int i = 0; i < 7; ++i) many[i].endTime = 460 + 100 * i;
  Network big(many, {makeGarage()}, 0, 20);
  CompatibilityIndex bigCompat(big, p);
  CHECK_THROWS(bruteForce(bigCompat, CostParams{}, 6));
}

TEST_CASE("brute force agrees with the exact model") {
  std::mt19937 rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    Network net = randomNetwork(rng, 3, rep % 2 == 0);
    OpParams p;
    p.fleetShare = (rep % 4) * 0.25 + 0.25;
    CompatibilityIndex compat(net, p);
    ExactModel model = buildExact(compat, CostParams{});
    Solution exact = solveExact(model, 60);
    auto res = bruteForce(compat, CostParams{});
    CHECK(res.objective ==
          doctest::Approx(exact.objective).epsilon(1e-6));
    CHECK(validate(res.solution, compat, CostParams{}).empty());
  }
}

TEST_CASE("brute force agrees with exact on larger mixes") {
  std::mt19937 rng(202);
  for (int rep = 0; rep < 6; ++rep) {
    Network net = randomNetwork(rng, 5, true);
    OpParams p;
    p.fleetShare = 0.5;
    CompatibilityIndex compat(net, p);
    ExactModel model = buildExact(compat, CostParams{});
    Solution exact = solveExact(model, 120);
    auto res = bruteForce(compat, CostParams{});
    CHECK(res.objective == doctest::Approx(exact.objective).epsilon(1e-6));
  }
}

TEST_CASE("brute force is permutation invariant") {
  std::mt19937 rng(303);
  Network net = randomNetwork(rng, 4, true);
  OpParams p;
  p.fleetShare = 1.0;
  CompatibilityIndex compat(net, p);
  const double ref = bruteForce(compat, CostParams{}).objective;

  std::vector<Trip> shuffled = net.trips();
  std::reverse(shuffled.begin(), shuffled.end());
  Network net2(shuffled, net.stations(), net.garage(), net.avgSpeed());
  CompatibilityIndex compat2(net2, p);
  CHECK(bruteForce(compat2, CostParams{}).objective == doctest::Approx(ref));
}
