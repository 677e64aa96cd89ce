#include "efleet/compat.hpp"

#include <algorithm>
#include <cmath>

namespace efleet {

std::vector<std::pair<int, double>> timeGrid(const OpParams& params) {
  if (params.timeStep <= 0) throw InstanceError("timeStep must be positive");
  const int steps = static_cast<int>(std::llround(params.horizon / params.timeStep));
  std::vector<std::pair<int, double>> grid;
  grid.reserve(steps);
  for (int t = 0; t < steps; ++t) grid.emplace_back(t, t * params.timeStep);
  return grid;
}

CompatibilityIndex::CompatibilityIndex(const Network& network, const OpParams& params)
    : network_(&network), params_(params) {
  params_.check();
  const int n = network.numTrips();
  const int m = network.numStations();
  numSteps_ = static_cast<int>(std::llround(params.horizon / params.timeStep));

  succ_.assign(n, {});
  direct_.assign(n, {});
  pred_.assign(n, {});
  directFlag_.assign(n, std::vector<bool>(n, false));
  stationsAfter_.assign(n, {});
  stationSucc_.assign(n, std::vector<std::vector<int>>(m));

  for (int i = 0; i < n; ++i) {
    const Trip& ti = network.trips()[i];
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Trip& tj = network.trips()[j];
      const double gap = tj.startTime - ti.endTime;
      if (gap < network.tripToTrip(i, j) || gap > params.maxGap) continue;
      succ_[i].push_back(j);
      pred_[j].push_back(i);
      if (gap - network.tripToTrip(i, j) <= params.maxLayover) {
        direct_[i].push_back(j);
        directFlag_[i][j] = true;
      }
      for (int c = 0; c < m; ++c) {
        if (ti.endTime + network.tripToStation(i, c) + network.stationToTrip(c, j) +
                params.minVisit <=
            tj.startTime)
          stationSucc_[i][c].push_back(j);
      }
    }
    for (int c = 0; c < m; ++c)
      if (!stationSucc_[i][c].empty()) stationsAfter_[i].push_back(c);
  }
}

bool CompatibilityIndex::isStationFeasible(int i, int c, int j) const {
  const auto& v = stationSucc_[i][c];
  return std::find(v.begin(), v.end(), j) != v.end();
}

StepRange CompatibilityIndex::chargeSteps(int i, int j, int c) const {
  const Network& net = *network_;
  const double lo = net.trips()[i].endTime + net.tripToStation(i, c);
  const double hi = net.trips()[j].startTime - net.stationToTrip(c, j);
  // Every step whose D_t lies inside the closed window [lo, hi].
  StepRange r;
  r.first = static_cast<int>(std::ceil(lo / params_.timeStep - 1e-9));
  r.last = static_cast<int>(std::floor(hi / params_.timeStep + 1e-9));
  r.first = std::max(r.first, 0);
  r.last = std::min(r.last, numSteps_ - 1);
  return r;
}

double CompatibilityIndex::stepStart(int t) const { return t * params_.timeStep; }

}  // namespace efleet
