#include "doctest.h"
#include "efleet/harness.hpp"

#include <filesystem>
#include <fstream>

using namespace efleet;
namespace fs = std::filesystem;

namespace {

fs::path makeFeed(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("efleet-feed-" + name);
  fs::create_directories(dir);
  std::ofstream(dir / "stops.txt")
      << "stop_id,stop_name,stop_lat,stop_lon\n"
         "s1,First,41.90,-87.65\n"
         "s2,Mid,41.92,-87.65\n"
         "s3,Last,41.94,-87.63\n";
  std::ofstream(dir / "trips.txt") << "route_id,service_id,trip_id\n"
                                      "r1,wk,trip1\n"
                                      "r1,wk,trip2\n"
                                      "r1,sat,trip3\n"
                                      "r1,wk,badtrip\n";
  std::ofstream(dir / "stop_times.txt")
      << "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
         "trip1,08:00:00,08:00:00,s1,1\n"
         "trip1,08:10:00,08:10:00,s2,2\n"
         "trip1,08:25:00,08:25:00,s3,3\n"
         "trip2,09:05:00,09:05:00,s3,1\n"
         "trip2,09:40:00,09:40:00,s1,2\n"
         "trip3,10:00:00,10:00:00,s1,1\n"
         "trip3,10:30:00,10:30:00,s3,2\n"
         "badtrip,11:00:00,11:00:00,s1,1\n"
         "badtrip,10:00:00,10:00:00,s3,2\n";  // ends before it starts
  return dir;
}

}  // namespace

TEST_CASE("GTFS ingestion") {
  const fs::path feed = makeFeed("basic");

  SUBCASE("pool entries carry correct clock minutes") {
    GtfsIngestStats stats;
    auto pool = ingestGtfs(feed, std::nullopt, &stats);
    REQUIRE(pool.size() == 3);  // badtrip is dropped
    CHECK(stats.parsed == 3);
    CHECK(stats.skipped >= 1);
    auto t1 = std::find_if(pool.begin(), pool.end(),
                           [](const PoolTrip& t) { return t.id == "trip1"; });
    REQUIRE(t1 != pool.end());
    CHECK(t1->startTime == 480);
    CHECK(t1->endTime == 505);
    CHECK(t1->lengthMiles > 2.0);  // ~3 miles of latitude plus easting
    CHECK(t1->lengthMiles < 6.0);
  }
  SUBCASE("service filter narrows the pool") {
    auto wk = ingestGtfs(feed, std::string("wk"));
    CHECK(wk.size() == 2);
    auto sat = ingestGtfs(feed, std::string("sat"));
    CHECK(sat.size() == 1);
    CHECK(sat[0].id == "trip3");
  }
  SUBCASE("missing table raises") {
    CHECK_THROWS(ingestGtfs(feed / "nothere", std::nullopt));
  }
}

TEST_CASE("garage assignment uses trip midpoints") {
  PoolTrip t;
  t.origin = {0, 0};
  t.destination = {4, 0};
  auto assign = assignGarages({t}, {{2, 1}, {10, 0}});
  REQUIRE(assign.size() == 1);
  CHECK(assign[0] == 0);  // midpoint (2,0) is 1 mile from the first garage
}

TEST_CASE("generateInstance") {
  auto pool = syntheticPool(40, 7);
  GeneratorConfig gc;
  gc.garages = {{6, 6}};
  gc.size = 5;
  gc.seed = 42;

  SUBCASE("fixed seeds are byte-identical") {
    Instance a = generateInstance(pool, gc);
    Instance b = generateInstance(pool, gc);
    CHECK(instanceToJson(a.network, a.params) == instanceToJson(b.network, b.params));
  }
  SUBCASE("size and normalized parameters") {
    Instance inst = generateInstance(pool, gc);
    CHECK(inst.network.numTrips() == 5);
    CHECK(inst.network.stations()[inst.network.garage()].isGarage);
    CHECK(inst.params.socMax == doctest::Approx(377.14).epsilon(1e-3));
    CHECK(inst.params.socMin == doctest::Approx(94.29).epsilon(1e-3));
    CHECK(inst.params.socInitial == doctest::Approx(339.43).epsilon(1e-3));
    for (const Trip& t : inst.network.trips()) CHECK(t.energy > 0);
  }
  SUBCASE("oversized request fails") {
    gc.size = 100;
    CHECK_THROWS(generateInstance(pool, gc));
  }
}

TEST_CASE("scenario levers") {
  EconInputs econ;
  OpParams params;
  params.socMax = 377.14;
  params.socMin = 94.29;
  params.socInitial = 339.43;
  std::vector<Station> stations(3);
  stations[0].id = "garage";
  stations[0].isGarage = true;
  stations[0].plugs = 4;
  stations[0].rate = 8.03;
  stations[1].id = "c0";
  stations[1].plugs = 2;
  stations[1].rate = 8.03;
  stations[2].id = "c1";
  stations[2].plugs = 3;
  stations[2].rate = 8.03;

  SUBCASE("lever zero reproduces the baseline bit-for-bit") {
    for (LeverFamily f :
         {LeverFamily::BatteryCapacity, LeverFamily::BatteryRange,
          LeverFamily::ChargerLayout, LeverFamily::ChargerPower,
          LeverFamily::DieselCost, LeverFamily::ElectricityCost,
          LeverFamily::VehicleCost}) {
      Scenario sc;
      sc.lever = f;
      sc.leverIndex = 0;
      ScenarioInputs si = applyScenario(sc, econ, params, stations, 0);
      CHECK(si.params.socMax == params.socMax);
      CHECK(si.econ.dieselPerGal == econ.dieselPerGal);
      CHECK(si.econ.bebPurchase == econ.bebPurchase);
      CHECK(si.stations.size() == stations.size());
      CHECK(si.stations[1].rate == stations[1].rate);
      CHECK(si.stations[1].plugs == stations[1].plugs);
    }
  }
  SUBCASE("battery capacity scales the SoC window") {
    Scenario sc;
    sc.lever = LeverFamily::BatteryCapacity;
    sc.leverIndex = 1;  // x1.2
    ScenarioInputs si = applyScenario(sc, econ, params, stations, 0);
    CHECK(si.params.socMax == doctest::Approx(377.14 * 1.2).epsilon(1e-3));
    CHECK(si.params.socMin == doctest::Approx(94.29 * 1.2).epsilon(1e-3));
  }
  SUBCASE("reduced-count lever rounds plugs up") {
    Scenario sc;
    sc.lever = LeverFamily::ChargerLayout;
    sc.leverIndex = 3;  // keep 25%
    ScenarioInputs si = applyScenario(sc, econ, params, stations, 0);
    CHECK(si.stations[0].plugs == 1);
    CHECK(si.stations[1].plugs == 1);
    CHECK(si.stations[2].plugs == 1);
  }
  SUBCASE("garage-only levers drop on-route chargers") {
    Scenario sc;
    sc.lever = LeverFamily::ChargerLayout;
    sc.leverIndex = 6;
    ScenarioInputs si = applyScenario(sc, econ, params, stations, 0);
    REQUIRE(si.stations.size() == 1);
    CHECK(si.stations[0].isGarage);
    CHECK(si.stations[0].rate == doctest::Approx(8.03).epsilon(1e-3));
    sc.leverIndex = 7;
    ScenarioInputs slow = applyScenario(sc, econ, params, stations, 0);
    CHECK(slow.stations[0].rate == doctest::Approx(2.23).epsilon(1e-2));
  }
  SUBCASE("cost levers recompute hourly prices") {
    Scenario sc;
    sc.lever = LeverFamily::DieselCost;
    sc.leverIndex = 8;  // x2
    ScenarioInputs si = applyScenario(sc, econ, params, stations, 0);
    CHECK(si.econ.dbOperatingPerHr > 70);  // energy doubles on top of 52 $/hr
    sc.lever = LeverFamily::DieselCostNoShare;
    sc.leverIndex = 1;  // free fuel
    ScenarioInputs free = applyScenario(sc, econ, params, stations, 0);
    CHECK(free.params.fleetShare == 0);
    CHECK(free.econ.dbOperatingPerHr == doctest::Approx(52 - 20.61).epsilon(1e-2));
  }
  SUBCASE("lever counts match the published enumerations") {
    CHECK(leverCount(LeverFamily::BatteryCapacity) == 9);
    CHECK(leverCount(LeverFamily::BatteryRange) == 10);
    CHECK(leverCount(LeverFamily::ChargerLayout) == 8);
    CHECK(leverCount(LeverFamily::ChargerPower) == 9);
    CHECK(leverCount(LeverFamily::VehicleCost) == 9);
  }
}

TEST_CASE("experiment matrix and report") {
  CHECK(defaultTimeLimit(5) == 10);
  CHECK(defaultTimeLimit(10) == 30);
  CHECK(defaultTimeLimit(25) == 120);

  MatrixConfig mc;
  mc.sizes = {3};
  mc.instancesPerSize = 2;
  mc.methods = {"exact", "cg"};
  mc.replicas = 2;
  mc.seed = 5;
  mc.timeLimitOverride = 10;
  mc.outputDir = fs::temp_directory_path() / "efleet-matrix";
  fs::remove_all(mc.outputDir);

  auto records = runMatrix(mc);
  REQUIRE(records.size() == 2 * (1 + 2));  // per instance: 1 exact + 2 cg replicas
  for (const auto& r : records) {
    CHECK(r.validatorClean);
    CHECK(r.objective > 0);
    CHECK(r.bound <= r.objective + 1e-6);
    CHECK(r.revenueShare + r.deadheadShare + r.chargingShare ==
          doctest::Approx(100).epsilon(1e-6));
  }

  SUBCASE("fixed seeds reproduce everything but the clock") {
    auto again = runMatrix(mc);
    REQUIRE(again.size() == records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
      CHECK(again[k].instanceId == records[k].instanceId);
      CHECK(again[k].method == records[k].method);
      CHECK(again[k].objective == doctest::Approx(records[k].objective));
      CHECK(again[k].numBeb == records[k].numBeb);
    }
  }

  SUBCASE("CSV and report artifacts") {
    const fs::path csv = mc.outputDir / "runs.csv";
    writeRunRecords(records, csv);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == kRunRecordHeader);
    int lines = 0;
    for (std::string l; std::getline(in, l);)
      if (!l.empty()) ++lines;
    CHECK(lines == static_cast<int>(records.size()));

    writeReport(csv, mc.outputDir / "report");
    CHECK(fs::exists(mc.outputDir / "report" / "summary.csv"));
    CHECK(fs::exists(mc.outputDir / "report" / "objective.svg"));
    CHECK(fs::exists(mc.outputDir / "report" / "walltime.svg"));
  }
}
