#include "efleet/solution.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace efleet {

using nlohmann::json;

int Solution::countType(VehicleType t) const {
  int n = 0;
  for (const auto& r : runs)
    if (r.type == t) ++n;
  return n;
}

double Solution::gapPercent() const {
  if (std::abs(objective) < 1e-12) return 0;
  return 100.0 * (1.0 - bound / objective);
}

std::string solutionToJson(const Solution& sol, const Network& network) {
  json j;
  j["version"] = "efleet-solution/1";
  j["objective"] = sol.objective;
  j["bound"] = sol.bound;
  j["fleetShortfall"] = sol.fleetShortfall;
  j["timeShareShortfall"] = sol.timeShareShortfall;
  j["hasTimeSharePenalty"] = sol.hasTimeSharePenalty;
  j["wallTime"] = sol.wallTime;
  j["breakdown"] = {{"vehicle", sol.breakdown.vehicle},
                    {"revenue", sol.breakdown.revenue},
                    {"deadhead", sol.breakdown.deadhead},
                    {"detour", sol.breakdown.detour},
                    {"penalty", sol.breakdown.penalty}};
  j["runs"] = json::array();
  for (const auto& run : sol.runs) {
    json jr;
    jr["type"] = vehicleTypeName(run.type);
    jr["trips"] = json::array();
    for (int i : run.trips) jr["trips"].push_back(network.trips()[i].id);
    jr["visits"] = json::array();
    for (const auto& v : run.visits)
      jr["visits"].push_back({{"afterIndex", v.afterIndex},
                              {"station", network.stations()[v.station].id},
                              {"chargeStart", v.chargeStart},
                              {"chargeDuration", v.chargeDuration}});
    jr["socAtTripStart"] = run.socAtTripStart;
    j["runs"].push_back(std::move(jr));
  }
  return j.dump(2);
}

Solution parseSolution(const std::string& jsonText, const Network& network) {
  json j = json::parse(jsonText);
  if (j.value("version", "") != std::string("efleet-solution/1"))
    throw InstanceError("unsupported solution version");

  std::unordered_map<std::string, int> tripIdx, stationIdx;
  for (int i = 0; i < network.numTrips(); ++i) tripIdx[network.trips()[i].id] = i;
  for (int c = 0; c < network.numStations(); ++c)
    stationIdx[network.stations()[c].id] = c;

  Solution sol;
  sol.objective = j.value("objective", 0.0);
  sol.bound = j.value("bound", 0.0);
  sol.fleetShortfall = j.value("fleetShortfall", 0.0);
  sol.timeShareShortfall = j.value("timeShareShortfall", 0.0);
  sol.hasTimeSharePenalty = j.value("hasTimeSharePenalty", false);
  sol.wallTime = j.value("wallTime", 0.0);
  if (j.contains("breakdown")) {
    const auto& b = j["breakdown"];
    sol.breakdown.vehicle = b.value("vehicle", 0.0);
    sol.breakdown.revenue = b.value("revenue", 0.0);
    sol.breakdown.deadhead = b.value("deadhead", 0.0);
    sol.breakdown.detour = b.value("detour", 0.0);
    sol.breakdown.penalty = b.value("penalty", 0.0);
  }
  for (const auto& jr : j.at("runs")) {
    VehicleRun run;
    run.type = jr.at("type") == "BEB" ? VehicleType::Electric : VehicleType::Diesel;
    for (const auto& id : jr.at("trips")) {
      auto it = tripIdx.find(id.get<std::string>());
      if (it == tripIdx.end())
        throw InstanceError("solution references unknown trip " + id.get<std::string>());
      run.trips.push_back(it->second);
    }
    for (const auto& jv : jr.value("visits", json::array())) {
      StationVisit v;
      v.afterIndex = jv.at("afterIndex");
      auto it = stationIdx.find(jv.at("station").get<std::string>());
      if (it == stationIdx.end())
        throw InstanceError("solution references unknown station");
      v.station = it->second;
      v.chargeStart = jv.value("chargeStart", 0.0);
      v.chargeDuration = jv.value("chargeDuration", 0.0);
      run.visits.push_back(v);
    }
    if (jr.contains("socAtTripStart"))
      run.socAtTripStart = jr["socAtTripStart"].get<std::vector<double>>();
    sol.runs.push_back(std::move(run));
  }
  return sol;
}

void saveSolution(const Solution& sol, const Network& network,
                  const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw InstanceError("cannot write " + file.string());
  out << solutionToJson(sol, network);
}

Solution loadSolution(const std::filesystem::path& file, const Network& network) {
  std::ifstream in(file);
  if (!in) throw InstanceError("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseSolution(ss.str(), network);
}

}  // namespace efleet
