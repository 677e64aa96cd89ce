#include "doctest.h"
#include "efleet/colgen.hpp"
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

Network randomNetwork(std::mt19937& rng, int n, bool heavy = false) {
  std::uniform_real_distribution<double> coord(0, 8);
  std::uniform_int_distribution<int> start(360, 1000);
  std::uniform_int_distribution<int> dur(30, 90);
  std::uniform_real_distribution<double> energyScale(1.0, heavy ? 2.5 : 1.3);
  std::vector<Trip> trips;
  for (int i = 0; i < n; ++i) {
    int s = start(rng);
    int d = dur(rng);
    trips.push_back(makeTrip("t" + std::to_string(i), {coord(rng), coord(rng)},
                             {coord(rng), coord(rng)}, s, s + d,
                             d * energyScale(rng)));
  }
  std::vector<Station> stations{makeGarage({4, 4}),
                                makeStation("c1", {coord(rng), coord(rng)}, 8.03, 2)};
  return Network(std::move(trips), std::move(stations), 0, 20);
}

CGConfig quickConfig(unsigned long long seed = 0) {
  CGConfig cfg;
  cfg.seed = seed;
  cfg.timeLimit = 30;
  cfg.rmpTimeLimit = 10;
  cfg.replicas = 5;
  return cfg;
}

}  // namespace

TEST_CASE("initColumns produces singletons per type") {
  SUBCASE("three light trips give six singletons") {
    std::vector<Trip> trips{makeTrip("a", {1, 0}, {1, 0}, 400, 460),
                            makeTrip("b", {1, 0}, {1, 0}, 500, 560),
                            makeTrip("c", {1, 0}, {1, 0}, 600, 660)};
    Network net(trips, {makeGarage()}, 0, 20);
    CompatibilityIndex compat(net, OpParams{});
    auto pool = initColumns(compat, CostParams{});
    CHECK(pool.size() == 6);
    int beb = 0;
    for (const auto& col : pool)
      if (col.type == VehicleType::Electric) ++beb;
    CHECK(beb == 3);
  }
  SUBCASE("an energy-heavy trip only gets a diesel singleton") {
    // B_i + pull-out exceeds B^iota - B_: no BEB singleton can exist
    std::vector<Trip> trips{makeTrip("long", {1, 0}, {1, 0}, 400, 700, 300)};
    Network net(trips, {makeGarage()}, 0, 20);
    CompatibilityIndex compat(net, OpParams{});
    auto pool = initColumns(compat, CostParams{});
    REQUIRE(pool.size() == 1);
    CHECK(pool[0].type == VehicleType::Diesel);
  }
}

TEST_CASE("solveRMP basics") {
  std::vector<Trip> trips{makeTrip("a", {1, 0}, {1, 0}, 400, 460),
                          makeTrip("b", {1, 0}, {1, 0}, 500, 560)};
  Network net(trips, {makeGarage()}, 0, 20);
  OpParams p;
  CompatibilityIndex compat(net, p);
  CostParams costs;

  SUBCASE("single all-covering BEB column is taken at value one") {
    auto col = optimizeCharging({0, 1}, Duals::zeros(compat), compat, costs);
    REQUIRE(col);
    std::vector<Column> pool{*col};
    RmpResult r = solveRMP(pool, compat, p, true);
    REQUIRE(r.solve.feasible());
    CHECK(r.solve.values[0] == doctest::Approx(1.0));
    CHECK(r.solve.objective == doctest::Approx(col->cost));
  }

  SUBCASE("cheaper of two duplicate-coverage columns wins, dual reflects it") {
    OpParams p0 = p;
    p0.fleetShare = 0;
    CompatibilityIndex compat0(net, p0);
    auto a = buildDieselColumn({0, 1}, compat0, costs);
    REQUIRE(a);
    Column cheap = *a, dear = *a;
    cheap.cost = 500;
    dear.cost = 700;
    RmpResult r = solveRMP({cheap, dear}, compat0, p0, true);
    REQUIRE(r.solve.feasible());
    CHECK(r.solve.objective == doctest::Approx(500));
    // pi for the two trips sums to the winning column's cost
    CHECK(r.duals.trip[0] + r.duals.trip[1] == doctest::Approx(500));
  }

  SUBCASE("integer RMP over singletons bounds the exact optimum from above") {
    auto pool = initColumns(compat, costs);
    RmpResult ri = solveRMP(pool, compat, p, false);
    REQUIRE(ri.solve.feasible());
    ExactModel model = buildExact(compat, costs);
    Solution exact = solveExact(model, 30);
    CHECK(ri.solve.objective >= exact.objective - 1e-6);
    RmpResult rl = solveRMP(pool, compat, p, true);
    CHECK(ri.solve.objective >= rl.solve.objective - 1e-6);
  }
}

TEST_CASE("priceDiesel") {
  std::vector<Trip> trips{makeTrip("a", {1, 0}, {1, 0}, 400, 460),
                          makeTrip("b", {1, 0}, {1, 0}, 500, 560)};
  Network net(trips, {makeGarage()}, 0, 20);
  OpParams p;
  CompatibilityIndex compat(net, p);
  CostParams costs;
  Duals d = Duals::zeros(compat);

  SUBCASE("zero duals cannot produce a negative column") {
    auto pc = priceDiesel(d, compat, costs);
    CHECK(!pc.column);
    CHECK(pc.reducedCost > 0);
  }
  SUBCASE("large trip duals pull out the two-trip chain") {
    d.trip = {1000, 1000};
    auto pc = priceDiesel(d, compat, costs);
    REQUIRE(pc.column);
    CHECK(pc.column->trips == std::vector<int>{0, 1});
    auto chain = buildDieselColumn({0, 1}, compat, costs);
    CHECK(pc.reducedCost ==
          doctest::Approx(chain->cost - 2000 - p.fleetShare * d.fleetShare));
    CHECK(pc.reducedCost == doctest::Approx(reducedCost(*pc.column, d, p)));
  }
  SUBCASE("zero reduced cost is strictly rejected") {
    auto single = buildDieselColumn({0}, compat, costs);
    Duals d1 = Duals::zeros(compat);
    d1.trip[0] = single->cost;  // alpha is zero, so rc lands exactly on zero
    d1.trip[1] = -1e9;          // keep trip b out of every chain
    auto pc = priceDiesel(d1, compat, costs);
    CHECK(!pc.column);
    CHECK(pc.reducedCost == doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("BEB pricing and the charging stage") {
  OpParams p;
  CostParams costs;

  SUBCASE("no-deficit chain charges nothing") {
    std::vector<Trip> trips{makeTrip("a", {0, 0}, {0, 0}, 400, 460),
                            makeTrip("b", {0, 0}, {0, 0}, 480, 540)};
    Network net(trips, {makeGarage({0, 0})}, 0, 20);
    CompatibilityIndex compat(net, p);
    auto col = optimizeCharging({0, 1}, Duals::zeros(compat), compat, costs);
    REQUIRE(col);
    double charged = 0;
    for (const auto& v : col->visits) charged += v.chargeDuration;
    CHECK(charged == doctest::Approx(0.0).epsilon(1e-6));
    // layover <= L and no detour needed: cost carries no detour component
    CHECK(col->cost ==
          doctest::Approx(costs.bebVehiclePerDay +
                          costs.operatingPerMin(true) * (60 + 60)));
  }

  SUBCASE("SoC deficit forces a charge of at least the shortfall") {
    std::vector<Trip> trips{makeTrip("a", {0, 0}, {0, 0}, 400, 500, 150),
                            makeTrip("b", {0, 0}, {0, 0}, 560, 660, 150)};
    Network net(trips, {makeGarage({0, 0}), makeStation("c", {0, 0})}, 0, 20);
    CompatibilityIndex compat(net, p);
    auto col = optimizeCharging({0, 1}, Duals::zeros(compat), compat, costs);
    REQUIRE(col);
    REQUIRE(col->visits.size() == 1);
    const double deficit = (p.socMin + 150) - (p.socInitial - 150);
    CHECK(col->visits[0].chargeDuration >= deficit / 8.03 - 1e-4);
  }

  SUBCASE("negative phi pushes the charge off the penalized steps") {
    std::vector<Trip> trips{makeTrip("a", {0, 0}, {0, 0}, 400, 500, 150),
                            makeTrip("b", {0, 0}, {0, 0}, 600, 700, 150)};
    Network net(trips, {makeGarage({0, 0}), makeStation("c", {0, 0})}, 0, 20);
    CompatibilityIndex compat(net, p);
    Duals d = Duals::zeros(compat);
    // make the first half of the 500..600 window very expensive to occupy,
    // at the on-route station and the co-located garage plugs alike
    for (int t = 100; t < 110; ++t) {
      d.plugCapacity[0][t] = -1e4;
      d.plugCapacity[1][t] = -1e4;
    }
    auto col = optimizeCharging({0, 1}, d, compat, costs);
    REQUIRE(col);
    REQUIRE(col->visits.size() == 1);
    CHECK(col->visits[0].chargeStart >= 550 - 1e-6);
    for (const auto& [c, t] : col->occupancy) CHECK(t >= 110);
  }

  SUBCASE("heuristic pricer returns a clean column under rewarding duals") {
    std::vector<Trip> trips{makeTrip("a", {0, 0}, {0, 0}, 400, 500, 150),
                            makeTrip("b", {0, 0}, {0, 0}, 560, 660, 150)};
    Network net(trips, {makeGarage({0, 0}), makeStation("c", {0, 0})}, 0, 20);
    CompatibilityIndex compat(net, p);
    Duals d = Duals::zeros(compat);
    d.trip = {1000, 1000};
    std::mt19937_64 rng(7);
    CGConfig cfg = quickConfig();
    auto pc = priceBEBHeuristic(d, compat, costs, rng, cfg);
    REQUIRE(pc.column);
    CHECK(pc.reducedCost == doctest::Approx(reducedCost(*pc.column, d, p)));
    CHECK(pc.reducedCost < 0);
  }

  SUBCASE("exact pricer dominates the heuristic") {
    std::mt19937 rng(11);
    Network net = randomNetwork(rng, 3);
    CompatibilityIndex compat(net, p);
    Duals d = Duals::zeros(compat);
    std::mt19937 dualRng(5);
    std::uniform_real_distribution<double> amt(200, 900);
    for (auto& v : d.trip) v = amt(dualRng);
    auto ex = priceBEBExact(d, compat, costs, 30);
    std::mt19937_64 hr(3);
    CGConfig cfg = quickConfig();
    double heurBest = kInf;
    for (int k = 0; k < 5; ++k) {
      auto pc = priceBEBHeuristic(d, compat, costs, hr, cfg);
      if (pc.column) heurBest = std::min(heurBest, pc.reducedCost);
    }
    if (ex.column && heurBest < kInf)
      CHECK(ex.reducedCost <= heurBest + 1e-6);
  }
}

TEST_CASE("manual CG loop converges with an optimality certificate") {
  std::vector<Trip> trips{makeTrip("a", {1, 0}, {1, 0}, 400, 460),
                          makeTrip("b", {1, 0}, {1, 0}, 520, 580)};
  Network net(trips, {makeGarage()}, 0, 20);
  OpParams p;
  CompatibilityIndex compat(net, p);
  CostParams costs;
  auto pool = initColumns(compat, costs);
  Duals duals = Duals::zeros(compat);
  for (int iter = 0; iter < 25; ++iter) {
    RmpResult r = solveRMP(pool, compat, p, true);
    REQUIRE(r.solve.feasible());
    duals = r.duals;
    bool added = false;
    auto dp = priceDiesel(duals, compat, costs);
    if (dp.column) {
      pool.push_back(*dp.column);
      added = true;
    }
    auto ep = priceBEBExact(duals, compat, costs, 30);
    if (ep.column) {
      pool.push_back(*ep.column);
      added = true;
    }
    if (!added) break;
  }
  CHECK(priceDiesel(duals, compat, costs).reducedCost >= -1e-6);
  CHECK(priceBEBExact(duals, compat, costs, 30).reducedCost >= -1e-6);
  // converged pool contains the exact optimum
  RmpResult fin = solveRMP(pool, compat, p, false);
  ExactModel model = buildExact(compat, costs);
  Solution exact = solveExact(model, 30);
  CHECK(fin.solve.objective == doctest::Approx(exact.objective).epsilon(1e-6));
}

TEST_CASE("runCG on the canonical single trip") {
  std::vector<Trip> trips{makeTrip("a", {10, 0}, {10, 0}, 480, 540)};
  Network net(trips, {makeGarage()}, 0, 20);
  OpParams p;
  CompatibilityIndex compat(net, p);
  CGResult res = runCG(compat, CostParams{}, quickConfig());
  CHECK(res.iterations <= 2);
  CHECK(res.solution.objective == doctest::Approx(466).epsilon(1e-9));
  CHECK(res.solution.runs.size() == 1);
  CHECK(validate(res.solution, compat, CostParams{}).empty());
  CHECK(res.solution.objective >= res.lastLpObjective - 1e-6);
}

TEST_CASE("runCG trace and stalling behaviour") {
  std::mt19937 rng(404);
  Network net = randomNetwork(rng, 4, true);
  OpParams p;
  CompatibilityIndex compat(net, p);

  SUBCASE("LP objective is non-increasing and bounds the integer result") {
    CGResult res = runCG(compat, CostParams{}, quickConfig(1));
    for (std::size_t k = 1; k < res.trace.size(); ++k)
      CHECK(res.trace[k].lpObjective <= res.trace[k - 1].lpObjective + 1e-6);
    CHECK(res.solution.objective >= res.solution.bound - 1e-6);
    CHECK(validate(res.solution, compat, CostParams{}).empty());
  }
  SUBCASE("stall injection stops the loop at the patience limit") {
    CGConfig cfg = quickConfig(2);
    cfg.stallTolerance = 1e18;
    cfg.stallPatience = 3;
    CGResult res = runCG(compat, CostParams{}, cfg);
    CHECK(res.iterations <= 3);
    CHECK(validate(res.solution, compat, CostParams{}).empty());
  }
}

TEST_CASE("runCG never beats the exact optimum and is validator-clean") {
  std::mt19937 rng(77);
  for (int rep = 0; rep < 8; ++rep) {
    Network net = randomNetwork(rng, 4, rep % 2 == 1);
    OpParams p;
    p.fleetShare = (rep % 3) * 0.5;
    CompatibilityIndex compat(net, p);
    ExactModel model = buildExact(compat, CostParams{});
    Solution exact = solveExact(model, 60);
    CGResult res = runCG(compat, CostParams{}, quickConfig(rep));
    CHECK(res.solution.objective >= exact.objective - 1e-6);
    auto vs = validate(res.solution, compat, CostParams{});
    for (const auto& v : vs) MESSAGE(v.describe());
    CHECK(vs.empty());
  }
}

TEST_CASE("diesel-only reduction matches the brute-force oracle") {
  // SoC ceiling squeezed down to the floor: no electric chain is feasible, so
  // with a zero share target and no penalty the problem is the classical VSP
  std::mt19937 rng(55);
  for (int rep = 0; rep < 4; ++rep) {
    Network net = randomNetwork(rng, 4);
    OpParams p;
    p.fleetShare = 0;
    p.penalty = 0;
    p.socInitial = p.socMin + 1;
    CompatibilityIndex compat(net, p);
    CGResult res = runCG(compat, CostParams{}, quickConfig(rep));
    for (const auto& run : res.solution.runs)
      CHECK(run.type == VehicleType::Diesel);
    auto oracle = bruteForce(compat, CostParams{});
    CHECK(res.solution.objective ==
          doctest::Approx(oracle.objective).epsilon(1e-6));
  }
}

TEST_CASE("consolidation") {
  OpParams p;
  CostParams costs;

  SUBCASE("two chainable singletons collapse into one vehicle") {
    std::vector<Trip> trips{makeTrip("a", {0, 0}, {0, 0}, 480, 540),
                            makeTrip("b", {0, 0}, {0, 0}, 600, 660)};
    Network net(trips, {makeGarage({0, 0})}, 0, 20);
    CompatibilityIndex compat(net, p);
    Duals zero = Duals::zeros(compat);
    std::vector<Column> singles{*optimizeCharging({0}, zero, compat, costs),
                                *optimizeCharging({1}, zero, compat, costs)};
    Solution sol = assembleSolution(singles, compat, costs);
    Solution out = consolidate(sol, compat, costs, 30);
    CHECK(out.runs.size() == 1);
    CHECK(out.objective < sol.objective);
    CHECK(validate(out, compat, costs).empty());
  }

  SUBCASE("no feasible insertion leaves the solution unchanged") {
    std::vector<Trip> trips{makeTrip("a", {0, 0}, {0, 0}, 100, 160),
                            makeTrip("b", {0, 0}, {0, 0}, 1000, 1060)};
    Network net(trips, {makeGarage({0, 0})}, 0, 20);
    CompatibilityIndex compat(net, p);  // gap far above G
    Duals zero = Duals::zeros(compat);
    std::vector<Column> singles{*optimizeCharging({0}, zero, compat, costs),
                                *optimizeCharging({1}, zero, compat, costs)};
    Solution sol = assembleSolution(singles, compat, costs);
    Solution out = consolidate(sol, compat, costs, 30);
    CHECK(out.runs.size() == 2);
    CHECK(out.objective == doctest::Approx(sol.objective));
  }

  SUBCASE("never increases cost or fleet size on random instances") {
    std::mt19937 rng(66);
    for (int rep = 0; rep < 5; ++rep) {
      Network net = randomNetwork(rng, 4, true);
      CompatibilityIndex compat(net, p);
      CGConfig cfg = quickConfig(rep);
      cfg.consolidate = false;
      CGResult res = runCG(compat, CostParams{}, cfg);
      Solution out = consolidate(res.solution, compat, costs, 30);
      CHECK(out.objective <= res.solution.objective + 1e-9);
      CHECK(out.runs.size() <= res.solution.runs.size());
      CHECK(validate(out, compat, costs).empty());
    }
  }
}

TEST_CASE("empty instance yields an empty solution") {
  Network net({}, {makeGarage()}, 0, 20);
  CompatibilityIndex compat(net, OpParams{});
  CGResult res = runCG(compat, CostParams{}, quickConfig());
  CHECK(res.solution.runs.empty());
  CHECK(res.solution.objective == 0);
}
