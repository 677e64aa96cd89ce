#include <algorithm>
#include <chrono>
#include <map>

#include "efleet/colgen.hpp"

namespace efleet {

namespace {

std::optional<Column> rebuildChain(VehicleType type, const std::vector<int>& trips,
                                   const CompatibilityIndex& compat,
                                   const CostParams& costs, const Duals& zero) {
  if (type == VehicleType::Diesel) return buildDieselColumn(trips, compat, costs);
  return optimizeCharging(trips, zero, compat, costs);
}

bool capacityOk(const std::vector<Column>& cols, const Network& net) {
  std::map<std::pair<int, int>, int> occ;
  for (const Column& col : cols)
    for (const auto& key : col.occupancy)
      if (++occ[key] > net.stations()[key.first].plugs) return false;
  return true;
}

double totalObjective(const std::vector<Column>& cols, const OpParams& p) {
  double cost = 0;
  int nBeb = 0;
  for (const Column& col : cols) {
    cost += col.cost;
    if (col.type == VehicleType::Electric) ++nBeb;
  }
  const double v =
      std::max(0.0, p.fleetShare * static_cast<double>(cols.size()) - nBeb);
  return cost + p.penalty * v;
}

}  // namespace

Solution consolidate(const Solution& solIn, const CompatibilityIndex& compat,
                     const CostParams& costs, double timeLimitSeconds) {
  if (solIn.runs.size() < 2) return solIn;
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  const Duals zero = Duals::zeros(compat);
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(timeLimitSeconds);
  auto timeUp = [&] { return std::chrono::steady_clock::now() >= deadline; };

  std::vector<Column> chains;
  chains.reserve(solIn.runs.size());
  for (const VehicleRun& run : solIn.runs) chains.push_back(fromRun(run, compat, costs));

  auto byStart = [&](int a, int b) {
    return std::pair(net.trips()[a].startTime, a) < std::pair(net.trips()[b].startTime, b);
  };
  auto sortChains = [&] {
    std::stable_sort(chains.begin(), chains.end(),
                     [](const Column& a, const Column& b) {
                       return a.trips.size() < b.trips.size();
                     });
  };

  sortChains();
  std::size_t ia = 0;
  while (ia < chains.size() && !timeUp()) {
    bool merged = false;
    for (int trip : std::vector<int>(chains[ia].trips)) {
      // try to move the trip into the longest chains first
      for (std::size_t ib = chains.size(); ib-- > ia + 1 && !timeUp();) {
        std::vector<int> mergedTrips = chains[ib].trips;
        mergedTrips.insert(
            std::upper_bound(mergedTrips.begin(), mergedTrips.end(), trip, byStart),
            trip);
        auto mergedCol =
            rebuildChain(chains[ib].type, mergedTrips, compat, costs, zero);
        if (!mergedCol) continue;

        std::vector<int> donorTrips = chains[ia].trips;
        donorTrips.erase(std::find(donorTrips.begin(), donorTrips.end(), trip));
        std::optional<Column> donorCol;
        if (!donorTrips.empty()) {
          donorCol = rebuildChain(chains[ia].type, donorTrips, compat, costs, zero);
          if (!donorCol) continue;  // the remaining chain must stay feasible
        }

        std::vector<Column> candidate = chains;
        candidate[ib] = *mergedCol;
        if (donorCol)
          candidate[ia] = *donorCol;
        else
          candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(ia));
        if (!capacityOk(candidate, net)) continue;
        if (totalObjective(candidate, p) > totalObjective(chains, p) + 1e-9) continue;

        chains = std::move(candidate);
        merged = true;
        break;
      }
      if (merged) break;
    }
    if (merged) {
      sortChains();
      ia = 0;  // restart from the new shortest chain
    } else {
      ++ia;
    }
  }

  Solution out = assembleSolution(chains, compat, costs);
  if (out.objective > solIn.objective + 1e-9) return solIn;
  out.bound = solIn.bound;
  out.wallTime = solIn.wallTime;
  out.hasTimeSharePenalty = solIn.hasTimeSharePenalty;
  return out;
}

}  // namespace efleet
