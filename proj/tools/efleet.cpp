// efleet command-line front end: instance generation, GTFS ingestion, the
// exact and column-generation solvers, solution validation, and the
// experiment matrix / report pipeline.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "efleet/colgen.hpp"
#include "efleet/exact.hpp"
#include "efleet/harness.hpp"
#include "efleet/validator.hpp"

using namespace efleet;

namespace {

void checkSolverEnv() {
  const char* env = std::getenv("EFLEET_SOLVER");
  if (env && *env && std::string(env) != "highs")
    throw std::runtime_error("unsupported EFLEET_SOLVER '" + std::string(env) +
                             "' (only 'highs' is built in)");
}

EconInputs econOrDefault(const std::string& econFile) {
  return econFile.empty() ? EconInputs{} : loadEconInputs(econFile);
}

void printSolutionSummary(const Solution& sol) {
  std::printf("objective      %.4f $/day\n", sol.objective);
  std::printf("bound          %.4f\n", sol.bound);
  std::printf("gap            %.3f %%\n", sol.gapPercent());
  std::printf("fleet          %d BEB + %d DB\n",
              sol.countType(VehicleType::Electric),
              sol.countType(VehicleType::Diesel));
  std::printf("wall time      %.2f s\n", sol.wallTime);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint vehicle scheduling, fleet composition and charging"};
  app.require_subcommand(1);

  // ---- generate ----------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "sample a synthetic instance");
  struct {
    std::string out = "instance.json";
    std::string econ;
    int size = 5, pool = 0, stations = 2, stationPlugs = 2, garagePlugs = 4;
    unsigned long long seed = 0;
    double tdelta = 5;
  } g;
  gen->add_option("-o,--out", g.out, "instance file to write");
  gen->add_option("-n,--size", g.size, "number of trips");
  gen->add_option("--seed", g.seed, "random seed");
  gen->add_option("--pool", g.pool, "synthetic pool size (default 4x size)");
  gen->add_option("--stations", g.stations, "on-route charger count");
  gen->add_option("--station-plugs", g.stationPlugs, "plugs per on-route charger");
  gen->add_option("--garage-plugs", g.garagePlugs, "plugs at the garage");
  gen->add_option("--tdelta", g.tdelta, "time step, minutes");
  gen->add_option("--econ", g.econ, "economic inputs JSON");

  // ---- ingest ------------------------------------------------------------
  auto* ing = app.add_subcommand("ingest", "build an instance from a GTFS feed");
  struct {
    std::string feed, out = "instance.json", service, econ;
    int size = 5;
    unsigned long long seed = 0;
    int stations = 2, stationPlugs = 2, garagePlugs = 4;
  } in;
  ing->add_option("--feed", in.feed, "GTFS directory")->required();
  ing->add_option("-o,--out", in.out, "instance file to write");
  ing->add_option("--service", in.service, "restrict to one service_id");
  ing->add_option("-n,--size", in.size, "number of trips to sample");
  ing->add_option("--seed", in.seed, "random seed");
  ing->add_option("--stations", in.stations, "on-route charger count");
  ing->add_option("--station-plugs", in.stationPlugs, "plugs per on-route charger");
  ing->add_option("--garage-plugs", in.garagePlugs, "plugs at the garage");
  ing->add_option("--econ", in.econ, "economic inputs JSON");

  // ---- exact -------------------------------------------------------------
  auto* ex = app.add_subcommand("exact", "solve the full MILP");
  struct {
    std::string instance, out, econ;
    double timeLimit = 600, tdelta = 0;
  } e;
  ex->add_option("-i,--instance", e.instance, "instance file")->required();
  ex->add_option("-o,--out", e.out, "solution file to write");
  ex->add_option("-t,--time-limit", e.timeLimit, "seconds");
  ex->add_option("--tdelta", e.tdelta, "override the time step, minutes");
  ex->add_option("--econ", e.econ, "economic inputs JSON");

  // ---- cg ----------------------------------------------------------------
  auto* cgc = app.add_subcommand("cg", "column-generation heuristic");
  struct {
    std::string instance, out, trace, econ;
    double timeLimit = 60, tdelta = 0;
    int replicas = 10;
    unsigned long long seed = 0;
    bool exactPricing = false, noConsolidate = false;
  } c;
  cgc->add_option("-i,--instance", c.instance, "instance file")->required();
  cgc->add_option("-o,--out", c.out, "solution file to write");
  cgc->add_option("-t,--time-limit", c.timeLimit, "seconds");
  cgc->add_option("--tdelta", c.tdelta, "override the time step, minutes");
  cgc->add_option("-k,--replicas", c.replicas, "heuristic pricing calls per iteration");
  cgc->add_option("--seed", c.seed, "random seed");
  cgc->add_flag("--exact-pricing", c.exactPricing, "exact electric pricing");
  cgc->add_flag("--no-consolidate", c.noConsolidate, "skip post-processing");
  cgc->add_option("--trace", c.trace, "per-iteration trace CSV to write");
  cgc->add_option("--econ", c.econ, "economic inputs JSON");

  // ---- validate ----------------------------------------------------------
  auto* val = app.add_subcommand("validate", "re-check a solution from scratch");
  struct {
    std::string instance, solution, econ;
  } v;
  val->add_option("-i,--instance", v.instance, "instance file")->required();
  val->add_option("-s,--solution", v.solution, "solution file")->required();
  val->add_option("--econ", v.econ, "economic inputs JSON");

  // ---- matrix ------------------------------------------------------------
  auto* mat = app.add_subcommand("matrix", "run the experiment grid");
  MatrixConfig mc;
  std::string mcOut = "matrix-out";
  std::vector<double> anu = {1.0};
  mat->add_option("--sizes", mc.sizes, "trip counts");
  mat->add_option("--instances", mc.instancesPerSize, "instances per size");
  mat->add_option("--methods", mc.methods, "exact and/or cg");
  mat->add_option("--replicas", mc.replicas, "cg replicas per cell");
  mat->add_option("--time-steps", mc.timeSteps, "time steps, minutes");
  mat->add_option("--anu", anu, "fleet-share targets");
  mat->add_option("--seed", mc.seed, "base seed");
  mat->add_option("--workers", mc.workers, "parallel workers");
  mat->add_option("-t,--time-limit", mc.timeLimitOverride,
                  "per-solve limit (0 = size defaults)");
  mat->add_option("-o,--out", mcOut, "output directory");

  // ---- report ------------------------------------------------------------
  auto* rep = app.add_subcommand("report", "summarize a run-record CSV");
  struct {
    std::string csv, out = "report";
  } r;
  rep->add_option("--csv", r.csv, "run-record CSV")->required();
  rep->add_option("-o,--out", r.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    checkSolverEnv();

    if (*gen) {
      GeneratorConfig gc;
      gc.garages = {{6, 6}};
      gc.size = g.size;
      gc.seed = g.seed;
      gc.stationCount = g.stations;
      gc.stationPlugs = g.stationPlugs;
      gc.garagePlugs = g.garagePlugs;
      gc.econ = econOrDefault(g.econ);
      gc.params.timeStep = g.tdelta;
      const int poolSize = g.pool > 0 ? g.pool : std::max(4 * g.size, g.size + 8);
      Instance inst = generateInstance(syntheticPool(poolSize, g.seed * 7919ULL + 1),
                                       gc);
      saveInstance(inst.network, inst.params, g.out);
      std::printf("wrote %s (%d trips, %d stations)\n", g.out.c_str(),
                  inst.network.numTrips(), inst.network.numStations());
    } else if (*ing) {
      GtfsIngestStats stats;
      auto pool = ingestGtfs(in.feed,
                             in.service.empty()
                                 ? std::nullopt
                                 : std::optional<std::string>(in.service),
                             &stats);
      std::printf("feed: %d trips parsed, %d rows skipped\n", stats.parsed,
                  stats.skipped);
      GeneratorConfig gc;
      // park the garage at the pool's midpoint-of-midpoints
      Point centroid{0, 0};
      for (const auto& t : pool) {
        centroid.x += (t.origin.x + t.destination.x) / 2 / pool.size();
        centroid.y += (t.origin.y + t.destination.y) / 2 / pool.size();
      }
      gc.garages = {centroid};
      gc.size = in.size;
      gc.seed = in.seed;
      gc.stationCount = in.stations;
      gc.stationPlugs = in.stationPlugs;
      gc.garagePlugs = in.garagePlugs;
      gc.econ = econOrDefault(in.econ);
      Instance inst = generateInstance(pool, gc);
      saveInstance(inst.network, inst.params, in.out);
      std::printf("wrote %s (%d trips, %d stations)\n", in.out.c_str(),
                  inst.network.numTrips(), inst.network.numStations());
    } else if (*ex) {
      Instance inst = loadInstance(e.instance);
      if (e.tdelta > 0) inst.params.timeStep = e.tdelta;
      const CostParams costs = buildCostParams(econOrDefault(e.econ));
      CompatibilityIndex compat(inst.network, inst.params);
      ExactModel model = buildExact(compat, costs);
      Solution sol = solveExact(model, e.timeLimit);
      printSolutionSummary(sol);
      if (!e.out.empty()) saveSolution(sol, inst.network, e.out);
    } else if (*cgc) {
      Instance inst = loadInstance(c.instance);
      if (c.tdelta > 0) inst.params.timeStep = c.tdelta;
      const CostParams costs = buildCostParams(econOrDefault(c.econ));
      CompatibilityIndex compat(inst.network, inst.params);
      CGConfig cfg;
      cfg.timeLimit = c.timeLimit;
      cfg.replicas = c.replicas;
      cfg.seed = c.seed;
      cfg.exactPricing = c.exactPricing;
      cfg.consolidate = !c.noConsolidate;
      CGResult res = runCG(compat, costs, cfg);
      printSolutionSummary(res.solution);
      std::printf("iterations     %d\n", res.iterations);
      std::printf("last LP        %.4f\n", res.lastLpObjective);
      if (!c.trace.empty()) {
        std::ofstream tr(c.trace);
        tr << "iteration,lp_objective,pool_size,best_db_rc,best_beb_rc\n";
        for (const auto& row : res.trace)
          tr << row.iteration << ',' << row.lpObjective << ',' << row.poolSize
             << ',' << row.bestDieselRc << ',' << row.bestElectricRc << '\n';
      }
      if (!c.out.empty()) saveSolution(res.solution, inst.network, c.out);
    } else if (*val) {
      Instance inst = loadInstance(v.instance);
      const CostParams costs = buildCostParams(econOrDefault(v.econ));
      CompatibilityIndex compat(inst.network, inst.params);
      Solution sol = loadSolution(v.solution, inst.network);
      const auto violations = validate(sol, compat, costs);
      for (const auto& viol : violations)
        std::printf("%s\n", viol.describe().c_str());
      if (violations.empty()) {
        std::printf("clean (%d runs, objective %.4f)\n", sol.fleetSize(),
                    sol.objective);
        return 0;
      }
      return 1;
    } else if (*mat) {
      mc.outputDir = mcOut;
      mc.scenarios.clear();
      for (double a : anu) {
        Scenario sc;
        sc.fleetShare = a;
        mc.scenarios.push_back(sc);
      }
      const auto records = runMatrix(mc);
      writeRunRecords(records, mc.outputDir / "runs.csv");
      int clean = 0;
      for (const auto& rr : records) clean += rr.validatorClean ? 1 : 0;
      std::printf("wrote %zu run records to %s (%d validator-clean)\n",
                  records.size(), (mc.outputDir / "runs.csv").c_str(), clean);
    } else if (*rep) {
      writeReport(r.csv, r.out);
      std::printf("wrote %s/summary.csv and charts\n", r.out.c_str());
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 0;
}
