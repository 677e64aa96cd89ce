#include <map>
#include <stdexcept>
#include <string>

#include "efleet/colgen.hpp"

namespace efleet {

Duals Duals::zeros(const CompatibilityIndex& compat) {
  Duals d;
  d.trip.assign(compat.network().numTrips(), 0.0);
  d.plugCapacity.assign(compat.network().numStations(),
                        std::vector<double>(compat.numSteps(), 0.0));
  return d;
}

RmpResult solveRMP(const std::vector<Column>& pool, const CompatibilityIndex& compat,
                   const OpParams& params, bool relaxed, double timeLimit) {
  const Network& net = compat.network();
  const int n = net.numTrips();
  ModelHandle m;

  std::vector<int> z(pool.size());
  for (std::size_t r = 0; r < pool.size(); ++r)
    z[r] = m.addVar(0, 1, pool[r].cost, VarType::Binary, "z_" + std::to_string(r));
  const int v = m.addVar(0, kInf, params.penalty, VarType::Continuous, "v");

  std::vector<std::vector<std::pair<int, double>>> cover(n);
  std::vector<std::pair<int, double>> share{{v, -1.0}};
  std::map<std::pair<int, int>, std::map<int, double>> cap;  // (station, step)
  for (std::size_t r = 0; r < pool.size(); ++r) {
    const Column& col = pool[r];
    for (int i : col.trips) cover[i].push_back({z[r], 1.0});
    const bool beb = col.type == VehicleType::Electric;
    const double a = beb ? params.fleetShare - 1.0 : params.fleetShare;
    if (a != 0) share.push_back({z[r], a});
    if (beb)
      for (const auto& [c, t] : col.occupancy) cap[{c, t}][z[r]] += 1.0;
  }

  std::vector<int> coverRow(n, -1);
  for (int i = 0; i < n; ++i) {
    if (cover[i].empty())
      throw std::runtime_error("RMP pool does not cover trip " + net.trips()[i].id);
    coverRow[i] = m.addConstr(Sense::Equal, 1, cover[i], "cover_" + std::to_string(i));
  }
  const int shareRow = m.addConstr(Sense::LessEqual, 0, share, "share");
  std::map<std::pair<int, int>, int> capRow;
  for (auto& [key, coefs] : cap) {
    std::vector<std::pair<int, double>> row(coefs.begin(), coefs.end());
    capRow[key] = m.addConstr(
        Sense::LessEqual, net.stations()[key.first].plugs, row,
        "cap_" + std::to_string(key.first) + "_" + std::to_string(key.second));
  }

  m.setTimeLimit(timeLimit);
  RmpResult out;
  out.solve = m.solve(relaxed);
  out.duals = Duals::zeros(compat);
  if (relaxed && !out.solve.duals.empty()) {
    for (int i = 0; i < n; ++i) out.duals.trip[i] = out.solve.duals[coverRow[i]];
    out.duals.fleetShare = out.solve.duals[shareRow];
    for (const auto& [key, row] : capRow)
      out.duals.plugCapacity[key.first][key.second] = out.solve.duals[row];
  }
  return out;
}

double reducedCost(const Column& col, const Duals& duals, const OpParams& params) {
  double rc = col.cost;
  for (int i : col.trips) rc -= duals.trip[i];
  const bool beb = col.type == VehicleType::Electric;
  rc -= (beb ? params.fleetShare - 1.0 : params.fleetShare) * duals.fleetShare;
  if (beb)
    for (const auto& [c, t] : col.occupancy) rc -= duals.plugCapacity[c][t];
  return rc;
}

}  // namespace efleet
