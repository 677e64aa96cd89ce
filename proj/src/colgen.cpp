#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "efleet/colgen.hpp"
#include "efleet/validator.hpp"

namespace efleet {

namespace {

// Run-level feasibility of a single column (SoC, layover rule, windows,
// horizon, overnight). Coverage and cost accounting are whole-solution
// concerns and are skipped here.
bool columnClean(const Column& col, const CompatibilityIndex& compat,
                 const CostParams& costs) {
  Solution probe;
  probe.runs.push_back(toRun(col));
  probe.objective = col.cost;
  for (const Violation& v : validate(probe, compat, costs))
    if (v.kind != ViolationKind::Coverage && v.kind != ViolationKind::CostMismatch)
      return false;
  return true;
}

}  // namespace

std::vector<Column> initColumns(const CompatibilityIndex& compat,
                                const CostParams& costs) {
  const Network& net = compat.network();
  const Duals zero = Duals::zeros(compat);
  std::vector<Column> pool;
  for (int i = 0; i < net.numTrips(); ++i) {
    auto db = buildDieselColumn({i}, compat, costs);
    auto ev = optimizeCharging({i}, zero, compat, costs);
    if (!db && !ev)
      throw std::runtime_error("trip " + net.trips()[i].id +
                               " has no feasible singleton schedule of either type");
    if (db) pool.push_back(std::move(*db));
    if (ev) pool.push_back(std::move(*ev));
  }
  return pool;
}

Solution assembleSolution(const std::vector<Column>& cols,
                          const CompatibilityIndex& compat, const CostParams& costs) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  Solution sol;
  CostBreakdown bd;
  int nBeb = 0;
  for (const Column& col : cols) {
    sol.runs.push_back(toRun(col));
    const bool beb = col.type == VehicleType::Electric;
    if (beb) ++nBeb;
    const double F = costs.operatingPerMin(beb);
    bd.vehicle += costs.vehiclePerDay(beb);
    double dh = net.garageToTrip(col.trips.front()) + net.tripToGarage(col.trips.back());
    for (std::size_t k = 0; k < col.trips.size(); ++k) {
      bd.revenue += F * net.trips()[col.trips[k]].revenueMinutes();
      if (k + 1 < col.trips.size())
        dh += net.tripToTrip(col.trips[k], col.trips[k + 1]);
    }
    bd.deadhead += F * dh;
    for (const auto& v : col.visits) {
      const int i = col.trips[v.afterIndex];
      const int j = col.trips[v.afterIndex + 1];
      bd.detour += F * (-net.tripToTrip(i, j) + net.tripToStation(i, v.station) +
                        net.stationToTrip(v.station, j));
    }
  }
  sol.fleetShortfall =
      std::max(0.0, p.fleetShare * static_cast<double>(cols.size()) - nBeb);
  bd.penalty = p.penalty * sol.fleetShortfall;
  sol.breakdown = bd;
  sol.objective = bd.total();
  sol.hasTimeSharePenalty = false;
  return sol;
}

CGResult runCG(const CompatibilityIndex& compat, const CostParams& costs,
               const CGConfig& config) {
  const OpParams& p = compat.params();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  };

  CGResult res;
  if (compat.network().numTrips() == 0) return res;

  std::vector<Column> pool = initColumns(compat, costs);
  std::mt19937_64 rng(config.seed);
  double lastObj = kInf;
  int stall = 0;

  while (true) {
    const double remaining = config.timeLimit - elapsed();
    if (remaining <= 0) break;
    ++res.iterations;
    RmpResult rmp = solveRMP(pool, compat, p, true, std::max(remaining, 1.0));
    if (!rmp.solve.feasible())
      throw std::runtime_error("relaxed RMP failed at iteration " +
                               std::to_string(res.iterations));
    res.lastLpObjective = rmp.solve.objective;

    CGTraceRow row;
    row.iteration = res.iterations;
    row.lpObjective = rmp.solve.objective;

    bool added = false;
    PricedColumn dp = priceDiesel(rmp.duals, compat, costs);
    row.bestDieselRc = dp.reducedCost;
    if (dp.column && dp.reducedCost < -config.reducedCostEps &&
        columnClean(*dp.column, compat, costs)) {
      pool.push_back(*dp.column);
      added = true;
    }

    double bestE = kInf;
    auto admit = [&](const PricedColumn& pc) {
      if (pc.column || pc.reducedCost != 0) bestE = std::min(bestE, pc.reducedCost);
      if (pc.column && pc.reducedCost < -config.reducedCostEps &&
          columnClean(*pc.column, compat, costs)) {
        pool.push_back(*pc.column);
        added = true;
      }
    };
    if (config.exactPricing) {
      admit(priceBEBExact(rmp.duals, compat, costs, config.exactPricingTimeLimit));
    } else {
      for (int k = 0; k < std::max(config.replicas, 1); ++k)
        admit(priceBEBHeuristic(rmp.duals, compat, costs, rng, config));
    }
    row.bestElectricRc = bestE == kInf ? 0.0 : bestE;
    row.poolSize = static_cast<int>(pool.size());
    res.trace.push_back(row);

    if (lastObj - rmp.solve.objective < config.stallTolerance)
      ++stall;
    else
      stall = 0;
    lastObj = rmp.solve.objective;

    if (!added || stall >= config.stallPatience || elapsed() >= config.timeLimit)
      break;
  }

  RmpResult fin = solveRMP(pool, compat, p, false, config.rmpTimeLimit);
  if (!fin.solve.feasible())
    throw std::runtime_error("final integer RMP did not produce a solution");
  std::vector<Column> chosen;
  for (std::size_t r = 0; r < pool.size(); ++r)
    if (fin.solve.values[r] > 0.5) chosen.push_back(pool[r]);

  Solution sol = assembleSolution(chosen, compat, costs);
  sol.bound = std::min(res.lastLpObjective, sol.objective);
  if (config.consolidate && !sol.runs.empty()) {
    const double rem = std::max(config.timeLimit - elapsed(), 1.0);
    sol = consolidate(sol, compat, costs, rem);
    sol.bound = std::min(sol.bound, sol.objective);
  }
  sol.wallTime = elapsed();
  res.solution = std::move(sol);
  return res;
}

}  // namespace efleet
