#include "efleet/column.hpp"

#include <algorithm>

namespace efleet {

bool Column::coversTrip(int i) const {
  return std::find(trips.begin(), trips.end(), i) != trips.end();
}

double columnCost(const Column& col, const CompatibilityIndex& compat,
                  const CostParams& costs) {
  const Network& net = compat.network();
  const bool beb = col.type == VehicleType::Electric;
  const double perMin = costs.operatingPerMin(beb);

  double minutes = 0;
  for (std::size_t k = 0; k < col.trips.size(); ++k) {
    minutes += net.trips()[col.trips[k]].revenueMinutes();
    if (k + 1 < col.trips.size())
      minutes += net.tripToTrip(col.trips[k], col.trips[k + 1]);
  }
  if (!col.trips.empty()) {
    minutes += net.garageToTrip(col.trips.front());
    minutes += net.tripToGarage(col.trips.back());
  }
  for (const auto& v : col.visits) {
    const int i = col.trips[v.afterIndex];
    const int j = col.trips[v.afterIndex + 1];
    minutes += -net.tripToTrip(i, j) + net.tripToStation(i, v.station) +
               net.stationToTrip(v.station, j);
  }
  return costs.vehiclePerDay(beb) + perMin * minutes;
}

std::vector<int> occupiedSteps(const CompatibilityIndex& compat, int i, int j,
                               int c, double chargeStart, double chargeDuration) {
  std::vector<int> out;
  const StepRange r = compat.chargeSteps(i, j, c);
  const double step = compat.params().timeStep;
  for (int t = r.first; t <= r.last; ++t) {
    const double dt = compat.stepStart(t);
    if (chargeStart < dt + step && chargeStart + chargeDuration >= dt)
      out.push_back(t);
  }
  return out;
}

void finalizeColumn(Column& col, const CompatibilityIndex& compat,
                    const CostParams& costs) {
  col.cost = columnCost(col, compat, costs);
  col.occupancy.clear();
  if (col.type != VehicleType::Electric) return;
  for (const auto& v : col.visits) {
    const int i = col.trips[v.afterIndex];
    const int j = col.trips[v.afterIndex + 1];
    for (int t : occupiedSteps(compat, i, j, v.station, v.chargeStart,
                               v.chargeDuration))
      col.occupancy.push_back({v.station, t});
  }
  std::sort(col.occupancy.begin(), col.occupancy.end());
}

VehicleRun toRun(const Column& col) {
  VehicleRun run;
  run.type = col.type;
  run.trips = col.trips;
  run.visits = col.visits;
  run.socAtTripStart = col.socAtTripStart;
  return run;
}

Column fromRun(const VehicleRun& run, const CompatibilityIndex& compat,
               const CostParams& costs) {
  Column col;
  col.type = run.type;
  col.trips = run.trips;
  col.visits = run.visits;
  col.socAtTripStart = run.socAtTripStart;
  finalizeColumn(col, compat, costs);
  return col;
}

}  // namespace efleet
