#pragma once

#include <string>
#include <vector>

#include "efleet/compat.hpp"
#include "efleet/finance.hpp"
#include "efleet/solution.hpp"

namespace efleet {

enum class ViolationKind {
  Coverage,
  Compatibility,
  LayoverRule,
  SoCFloor,
  SoCCeiling,
  ChargeWindow,
  PlugCapacity,
  HorizonOverrun,
  OvernightRecharge,
  CostMismatch,
};

const char* violationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string location;
  double magnitude = 0;

  std::string describe() const;
};

// Re-simulates the solution from first principles: SoC replay, occupancy
// recount from (s, u) intervals, layover rule, horizon and overnight-recharge
// checks, and full cost recomputation. Empty result means feasible.
std::vector<Violation> validate(const Solution& sol, const CompatibilityIndex& compat,
                                const CostParams& costs);

// Exhaustive optimum for tiny instances. Enumerates ordered partitions of
// trips into compatible chains, both vehicle types per chain, and station
// assignments per gap; plug capacity enforced by joint occupancy enumeration
// on the grid.
struct BruteForceResult {
  double objective = 0;
  Solution solution;
};

BruteForceResult bruteForce(const CompatibilityIndex& compat, const CostParams& costs,
                            int maxTrips = 6);

}  // namespace efleet
