#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "efleet/instance.hpp"

namespace efleet {

enum class VehicleType { Diesel, Electric };

inline const char* vehicleTypeName(VehicleType t) {
  return t == VehicleType::Electric ? "BEB" : "DB";
}

// A visit to a station (or the garage, for diesel runs) between trips
// chain[afterIndex] and chain[afterIndex + 1].
struct StationVisit {
  int afterIndex = 0;      // position in the run's trip sequence
  int station = 0;         // index into Network::stations()
  double chargeStart = 0;  // s_ijc, minutes; meaningful for BEB only
  double chargeDuration = 0;  // u_ijc
};

struct VehicleRun {
  VehicleType type = VehicleType::Diesel;
  std::vector<int> trips;  // indices into Network::trips(), time-ordered
  std::vector<StationVisit> visits;
  std::vector<double> socAtTripStart;  // b_i; BEB only, else empty
};

struct CostBreakdown {
  double vehicle = 0;
  double revenue = 0;
  double deadhead = 0;
  double detour = 0;
  double penalty = 0;

  double total() const { return vehicle + revenue + deadhead + detour + penalty; }
};

struct Solution {
  std::vector<VehicleRun> runs;
  double fleetShortfall = 0;      // v
  double timeShareShortfall = 0;  // v'; exact model only
  bool hasTimeSharePenalty = false;
  double objective = 0;
  double bound = 0;  // best lower bound from the solve that produced it
  CostBreakdown breakdown;
  double wallTime = 0;

  int fleetSize() const { return static_cast<int>(runs.size()); }
  int countType(VehicleType t) const;
  double gapPercent() const;  // 100 (1 - lb/ub)
};

std::string solutionToJson(const Solution& sol, const Network& network);
Solution parseSolution(const std::string& jsonText, const Network& network);
void saveSolution(const Solution& sol, const Network& network,
                  const std::filesystem::path& file);
Solution loadSolution(const std::filesystem::path& file, const Network& network);

}  // namespace efleet
