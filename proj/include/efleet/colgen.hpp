#pragma once

#include <optional>
#include <random>
#include <vector>

#include "efleet/column.hpp"
#include "efleet/mp.hpp"

namespace efleet {

struct Duals {
  std::vector<double> trip;                       // pi_i
  double fleetShare = 0;                          // alpha
  std::vector<std::vector<double>> plugCapacity;  // phi_ct, [station][step]

  static Duals zeros(const CompatibilityIndex& compat);
};

struct CGConfig {
  int replicas = 10;          // K heuristic pricing calls per iteration
  double stallTolerance = 1e-3;   // $
  int stallPatience = 30;         // iterations
  double reducedCostEps = 1e-6;   // $
  double timeLimit = 60;          // seconds, whole CG run
  double rmpTimeLimit = 30;       // seconds, final integer RMP
  unsigned long long seed = 0;
  bool exactPricing = false;
  double exactPricingTimeLimit = 10;
  double softmaxTemperature = 1.0;
  int stage2Retries = 5;
  bool consolidate = true;
};

struct RmpResult {
  SolveResult solve;
  Duals duals;  // valid for relaxed solves only
};

struct PricedColumn {
  std::optional<Column> column;
  double reducedCost = 0;
};

struct CGTraceRow {
  int iteration = 0;
  double lpObjective = 0;
  int poolSize = 0;
  double bestDieselRc = 0;
  double bestElectricRc = 0;
};

// One singleton per trip and type where feasible; throws if some trip has no
// feasible singleton of either type.
std::vector<Column> initColumns(const CompatibilityIndex& compat,
                                const CostParams& costs);

RmpResult solveRMP(const std::vector<Column>& pool, const CompatibilityIndex& compat,
                   const OpParams& params, bool relaxed, double timeLimit = kInf);

PricedColumn priceDiesel(const Duals& duals, const CompatibilityIndex& compat,
                         const CostParams& costs);

PricedColumn priceBEBHeuristic(const Duals& duals, const CompatibilityIndex& compat,
                               const CostParams& costs, std::mt19937_64& rng,
                               const CGConfig& config);

PricedColumn priceBEBExact(const Duals& duals, const CompatibilityIndex& compat,
                           const CostParams& costs, double timeLimitSeconds);

// Fixed-chain charging MILP (pricing stage 2). Returns the completed column
// or nullopt when no feasible charging schedule exists. The phi term of the
// duals prices occupied steps; pass Duals::zeros for plain feasibility.
std::optional<Column> optimizeCharging(const std::vector<int>& chain,
                                       const Duals& duals,
                                       const CompatibilityIndex& compat,
                                       const CostParams& costs);

double reducedCost(const Column& col, const Duals& duals, const OpParams& params);

// Diesel column over a fixed chain, garage visits inserted on long layovers;
// nullopt when some pair is incompatible or the run overruns the horizon.
std::optional<Column> buildDieselColumn(const std::vector<int>& chain,
                                        const CompatibilityIndex& compat,
                                        const CostParams& costs);

// Turns a set of columns into a full Solution with recomputed breakdown,
// fleet-share shortfall and objective.
Solution assembleSolution(const std::vector<Column>& cols,
                          const CompatibilityIndex& compat, const CostParams& costs);

struct CGResult {
  Solution solution;
  std::vector<CGTraceRow> trace;
  double lastLpObjective = 0;
  int iterations = 0;
};

CGResult runCG(const CompatibilityIndex& compat, const CostParams& costs,
               const CGConfig& config);

// Post-processing chain consolidation. Never increases cost or fleet size.
Solution consolidate(const Solution& sol, const CompatibilityIndex& compat,
                     const CostParams& costs, double timeLimitSeconds);

}  // namespace efleet
