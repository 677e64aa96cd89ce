#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "efleet/finance.hpp"
#include "efleet/instance.hpp"

namespace efleet {

// One pool entry: a revenue trip with its endpoints already projected to
// planar miles.
struct PoolTrip {
  std::string id;
  Point origin;
  Point destination;
  int startTime = 0;
  int endTime = 0;
  double lengthMiles = 0;
};

struct GtfsIngestStats {
  int parsed = 0;
  int skipped = 0;
};

// Reads trips.txt, stop_times.txt and stops.txt; one pool entry per
// timetabled trip (first/last stop). Malformed rows are skipped and counted.
std::vector<PoolTrip> ingestGtfs(const std::filesystem::path& feedDir,
                                 const std::optional<std::string>& serviceId,
                                 GtfsIngestStats* stats = nullptr);

struct GeneratorConfig {
  std::vector<Point> garages;
  int size = 5;
  unsigned long long seed = 0;
  int stationCount = 2;       // on-route fast-charger stations
  int stationPlugs = 2;
  int garagePlugs = 4;
  EconInputs econ;
  OpParams params;
};

// Midpoint-nearest garage assignment with round-robin overflow balancing.
std::vector<int> assignGarages(const std::vector<PoolTrip>& pool,
                               const std::vector<Point>& garages);

Instance generateInstance(const std::vector<PoolTrip>& pool,
                          const GeneratorConfig& config);

// A synthetic deterministic trip pool for experiments without a GTFS feed.
std::vector<PoolTrip> syntheticPool(int size, unsigned long long seed,
                                    double areaMiles = 12.0);

enum class LeverFamily {
  BatteryCapacity,
  BatteryRange,
  ChargerLayout,
  ChargerPower,
  DieselCost,
  DieselCostNoShare,  // A^nu = 0 variant
  ElectricityCost,
  VehicleCost,
};

const char* leverFamilyName(LeverFamily f);
int leverCount(LeverFamily f);

struct Scenario {
  double fleetShare = 1.0;  // A^nu
  std::optional<LeverFamily> lever;
  int leverIndex = 0;       // 0 = baseline
};

// Applies a scenario to baseline inputs; station list is rewritten for the
// charger-layout levers.
struct ScenarioInputs {
  EconInputs econ;
  OpParams params;
  std::vector<Station> stations;
  int garageIndex = 0;
};

ScenarioInputs applyScenario(const Scenario& scenario, const EconInputs& baseEcon,
                             const OpParams& baseParams,
                             const std::vector<Station>& baseStations,
                             int garageIndex);

struct MatrixConfig {
  std::vector<int> sizes = {5};
  int instancesPerSize = 10;
  std::vector<std::string> methods = {"exact", "cg"};
  int replicas = 10;
  std::vector<double> timeSteps = {5};
  std::vector<Scenario> scenarios = {Scenario{}};
  unsigned long long seed = 0;
  int workers = 1;
  std::filesystem::path outputDir = "matrix-out";
  double timeLimitOverride = 0;  // 0 = size-based defaults
};

// Size-scaled solve budgets: 10 s at 5 trips, 30 s at 10, 120 s at 25.
double defaultTimeLimit(int size);

struct RunRecord {
  std::string instanceId;
  unsigned long long seed = 0;
  std::string method;
  int size = 0;
  double timeStep = 0;
  double timeLimit = 0;
  double objective = 0;
  double bound = 0;
  double gapPercent = 0;
  double wallTime = 0;
  int numBeb = 0;
  int numDb = 0;
  double revenueShare = 0;   // % of operating time in revenue service
  double deadheadShare = 0;
  double chargingShare = 0;
  double dwellWaiting = 0;   // total waiting minutes
  bool validatorClean = false;
  std::string scenario;
};

extern const char* kRunRecordHeader;  // versioned CSV header
std::string toCsvRow(const RunRecord& r);

std::vector<RunRecord> runMatrix(const MatrixConfig& config);
void writeRunRecords(const std::vector<RunRecord>& records,
                     const std::filesystem::path& csvFile);

// Static SVG charts summarizing a RunRecord CSV.
void writeReport(const std::filesystem::path& csvFile,
                 const std::filesystem::path& outDir);

}  // namespace efleet
