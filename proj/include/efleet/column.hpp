#pragma once

#include <vector>

#include "efleet/compat.hpp"
#include "efleet/finance.hpp"
#include "efleet/solution.hpp"

namespace efleet {

// One complete vehicle schedule usable as an RMP column. The charger
// occupancy H is derived from the visits and the time grid.
struct Column {
  VehicleType type = VehicleType::Diesel;
  std::vector<int> trips;
  std::vector<StationVisit> visits;
  std::vector<double> socAtTripStart;
  double cost = 0;  // C_r, $/day

  std::vector<std::pair<int, int>> occupancy;  // (station, step) pairs, H_rct = 1

  bool coversTrip(int i) const;
};

// Recomputes C_r from the chain and visits.
double columnCost(const Column& col, const CompatibilityIndex& compat,
                  const CostParams& costs);

// Steps occupied by one charging interval [s, s+u] at visit (i, j, c),
// restricted to T_ijc: step t is occupied iff s < D_t + T^Delta and s+u >= D_t.
std::vector<int> occupiedSteps(const CompatibilityIndex& compat, int i, int j,
                               int c, double chargeStart, double chargeDuration);

// Fills cost and occupancy from the structural fields.
void finalizeColumn(Column& col, const CompatibilityIndex& compat,
                    const CostParams& costs);

VehicleRun toRun(const Column& col);
Column fromRun(const VehicleRun& run, const CompatibilityIndex& compat,
               const CostParams& costs);

}  // namespace efleet
