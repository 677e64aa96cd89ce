#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "efleet/colgen.hpp"
#include "efleet/exact.hpp"
#include "efleet/harness.hpp"
#include "efleet/validator.hpp"

namespace efleet {

double defaultTimeLimit(int size) {
  if (size <= 5) return 10;
  if (size <= 10) return 30;
  if (size <= 25) return 120;
  if (size <= 100) return 600;
  if (size <= 250) return 1200;
  if (size <= 500) return 2400;
  return 3600;
}

const char* kRunRecordHeader =
    "instance_id,seed,method,size,time_step,time_limit,objective,bound,gap_pct,"
    "wall_time_s,num_beb,num_db,revenue_share_pct,deadhead_share_pct,"
    "charging_share_pct,dwell_waiting_min,validator_clean,scenario,record_version";

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string scenarioName(const Scenario& s) {
  std::string name = "anu" + fmt(s.fleetShare);
  if (s.lever)
    name += "|" + std::string(leverFamilyName(*s.lever)) + "-" +
            std::to_string(s.leverIndex);
  return name;
}

// activity-time decomposition of a solution (minutes)
struct Activity {
  double revenue = 0, deadhead = 0, charging = 0;
};

Activity activityOf(const Solution& sol, const Network& net) {
  Activity a;
  for (const auto& run : sol.runs) {
    a.deadhead +=
        net.garageToTrip(run.trips.front()) + net.tripToGarage(run.trips.back());
    for (std::size_t k = 0; k < run.trips.size(); ++k) {
      a.revenue += net.trips()[run.trips[k]].revenueMinutes();
      if (k + 1 < run.trips.size())
        a.deadhead += net.tripToTrip(run.trips[k], run.trips[k + 1]);
    }
    for (const auto& v : run.visits) {
      const int i = run.trips[v.afterIndex];
      const int j = run.trips[v.afterIndex + 1];
      a.deadhead += -net.tripToTrip(i, j) + net.tripToStation(i, v.station) +
                    net.stationToTrip(v.station, j);
      a.charging += v.chargeDuration;
    }
  }
  return a;
}

}  // namespace

std::string toCsvRow(const RunRecord& r) {
  std::ostringstream os;
  os << r.instanceId << ',' << r.seed << ',' << r.method << ',' << r.size << ','
     << fmt(r.timeStep) << ',' << fmt(r.timeLimit) << ',' << fmt(r.objective) << ','
     << fmt(r.bound) << ',' << fmt(r.gapPercent) << ',' << fmt(r.wallTime) << ','
     << r.numBeb << ',' << r.numDb << ',' << fmt(r.revenueShare) << ','
     << fmt(r.deadheadShare) << ',' << fmt(r.chargingShare) << ','
     << fmt(r.dwellWaiting) << ',' << (r.validatorClean ? 1 : 0) << ','
     << r.scenario << ",efleet-runrecord/1";
  return os.str();
}

void writeRunRecords(const std::vector<RunRecord>& records,
                     const std::filesystem::path& csvFile) {
  std::filesystem::create_directories(csvFile.parent_path());
  std::ofstream out(csvFile);
  out << kRunRecordHeader << '\n';
  for (const auto& r : records) out << toCsvRow(r) << '\n';
}

std::vector<RunRecord> runMatrix(const MatrixConfig& config) {
  struct Cell {
    int size, instanceIdx;
    Scenario scenario;
    double timeStep;
    std::string method;
    int replica;
  };
  std::vector<Cell> cells;
  for (int size : config.sizes)
    for (int inst = 0; inst < config.instancesPerSize; ++inst)
      for (const Scenario& sc : config.scenarios)
        for (double ts : config.timeSteps)
          for (const std::string& method : config.methods) {
            const int reps = method == "cg" ? config.replicas : 1;
            for (int r = 0; r < reps; ++r)
              cells.push_back({size, inst, sc, ts, method, r});
          }

  std::filesystem::create_directories(config.outputDir / "solutions");
  std::vector<RunRecord> records(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < cells.size();
         k = next.fetch_add(1)) {
      const Cell& cell = cells[k];
      RunRecord& rec = records[k];
      const unsigned long long instSeed =
          config.seed * 1000003ULL + cell.size * 1009ULL + cell.instanceIdx;
      rec.instanceId = "i" + std::to_string(cell.size) + "-" +
                       std::to_string(cell.instanceIdx);
      rec.seed = instSeed;
      rec.method = cell.method;
      rec.size = cell.size;
      rec.timeStep = cell.timeStep;
      rec.timeLimit = config.timeLimitOverride > 0 ? config.timeLimitOverride
                                                   : defaultTimeLimit(cell.size);
      rec.scenario = scenarioName(cell.scenario);
      try {
        GeneratorConfig gc;
        gc.garages = {{6, 6}};
        gc.size = cell.size;
        gc.seed = instSeed;
        const auto pool = syntheticPool(std::max(4 * cell.size, cell.size + 8),
                                        instSeed * 7919ULL);
        Instance base = generateInstance(pool, gc);

        ScenarioInputs si =
            applyScenario(cell.scenario, gc.econ, base.params,
                          base.network.stations(), base.network.garage());
        si.params.timeStep = cell.timeStep;
        Network net(base.network.trips(), si.stations, si.garageIndex,
                    si.econ.avgSpeedMph);
        CompatibilityIndex compat(net, si.params);
        const CostParams costs = buildCostParams(si.econ);

        Solution sol;
        if (cell.method == "exact") {
          ExactModel model = buildExact(compat, costs);
          sol = solveExact(model, rec.timeLimit);
        } else {
          CGConfig cg;
          cg.seed = instSeed * 31ULL + cell.replica;
          cg.timeLimit = rec.timeLimit;
          sol = runCG(compat, costs, cg).solution;
        }

        rec.objective = sol.objective;
        rec.bound = sol.bound;
        rec.gapPercent = sol.gapPercent();
        rec.wallTime = sol.wallTime;
        rec.numBeb = sol.countType(VehicleType::Electric);
        rec.numDb = sol.countType(VehicleType::Diesel);
        const Activity a = activityOf(sol, net);
        const double total = a.revenue + a.deadhead + a.charging;
        if (total > 0) {
          rec.revenueShare = 100.0 * a.revenue / total;
          rec.deadheadShare = 100.0 * a.deadhead / total;
          rec.chargingShare = 100.0 * a.charging / total;
        }
        for (const auto& e : classifyDwell(sol, compat)) rec.dwellWaiting += e.waiting;
        rec.validatorClean = validate(sol, compat, costs).empty();

        const std::string solName = rec.instanceId + "-" + rec.scenario + "-ts" +
                                    fmt(cell.timeStep) + "-" + cell.method + "-r" +
                                    std::to_string(cell.replica) + ".json";
        saveSolution(sol, net, config.outputDir / "solutions" / solName);
      } catch (const std::exception& ex) {
        rec.method = cell.method + ":failed(" + ex.what() + ")";
        rec.validatorClean = false;
      }
    }
  };

  const int workers = std::max(config.workers, 1);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

}  // namespace efleet
