#include "efleet/instance.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace efleet {

using nlohmann::json;

void OpParams::check() const {
  if (timeStep <= 0) throw InstanceError("timeStep must be positive");
  if (horizon <= 0) throw InstanceError("horizon must be positive");
  double steps = horizon / timeStep;
  if (std::abs(steps - std::round(steps)) > 1e-9)
    throw InstanceError("timeStep must divide the horizon evenly");
  if (!(maxLayover < maxGap) || maxLayover <= 0)
    throw InstanceError("need 0 < maxLayover < maxGap");
  if (!(socMin < socInitial && socInitial <= socMax))
    throw InstanceError("need socMin < socInitial <= socMax");
  if (fleetShare < 0 || fleetShare > 1 || timeShare < 0 || timeShare > 1)
    throw InstanceError("share targets must lie in [0,1]");
}

Network::Network(std::vector<Trip> trips, std::vector<Station> stations,
                 int garageIndex, double avgSpeedMph)
    : trips_(std::move(trips)),
      stations_(std::move(stations)),
      garageIndex_(garageIndex),
      avgSpeedMph_(avgSpeedMph) {
  if (garageIndex_ < 0 || garageIndex_ >= static_cast<int>(stations_.size()))
    throw InstanceError("garage index out of range");
  if (!stations_[garageIndex_].isGarage)
    throw InstanceError("garage station must carry the garage flag");
  if (avgSpeedMph_ <= 0) throw InstanceError("average speed must be positive");
  std::set<std::string> ids;
  for (const auto& t : trips_) {
    if (!ids.insert(t.id).second)
      throw InstanceError("duplicate trip id: " + t.id);
    if (t.endTime <= t.startTime)
      throw InstanceError("trip " + t.id + " ends before it starts");
    if (t.energy <= 0) throw InstanceError("trip " + t.id + " has no energy demand");
  }
  for (const auto& c : stations_) {
    if (c.rate <= 0) throw InstanceError("station " + c.id + " has non-positive rate");
    if (c.plugs < 1) throw InstanceError("station " + c.id + " has no plugs");
  }

  const int n = static_cast<int>(trips_.size());
  const int m = static_cast<int>(stations_.size());
  const double minPerMile = 60.0 / avgSpeedMph_;
  const Point garageLoc = stations_[garageIndex_].location;

  dd_.assign(n, std::vector<double>(n, 0));
  garageOut_.assign(n, 0);
  garageIn_.assign(n, 0);
  toStation_.assign(n, std::vector<double>(m, 0));
  fromStation_.assign(m, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i) {
    garageOut_[i] = dist(garageLoc, trips_[i].origin) * minPerMile;
    garageIn_[i] = dist(trips_[i].destination, garageLoc) * minPerMile;
    for (int j = 0; j < n; ++j)
      dd_[i][j] = dist(trips_[i].destination, trips_[j].origin) * minPerMile;
    for (int c = 0; c < m; ++c) {
      toStation_[i][c] = dist(trips_[i].destination, stations_[c].location) * minPerMile;
      fromStation_[c][i] = dist(stations_[c].location, trips_[i].origin) * minPerMile;
    }
  }
}

namespace {

Point pointFromJson(const json& j) {
  return Point{j.at("x").get<double>(), j.at("y").get<double>()};
}

json pointToJson(const Point& p) { return json{{"x", p.x}, {"y", p.y}}; }

Station stationFromJson(const json& j) {
  Station s;
  s.id = j.at("id").get<std::string>();
  s.location = pointFromJson(j.at("location"));
  s.rate = j.at("rate").get<double>();
  s.plugs = j.at("plugs").get<int>();
  s.isGarage = j.value("isGarage", false);
  return s;
}

json stationToJson(const Station& s) {
  return json{{"id", s.id},
              {"location", pointToJson(s.location)},
              {"rate", s.rate},
              {"plugs", s.plugs},
              {"isGarage", s.isGarage}};
}

}  // namespace

Instance parseInstance(const std::string& jsonText) {
  json doc = json::parse(jsonText);
  const std::string version = doc.at("version").get<std::string>();
  if (version != "efleet-instance/1")
    throw InstanceError("unsupported instance version: " + version);

  OpParams params;
  const json& p = doc.at("params");
  params.maxGap = p.at("maxGap").get<double>();
  params.maxLayover = p.at("maxLayover").get<double>();
  params.minVisit = p.at("minVisit").get<double>();
  params.horizon = p.at("horizon").get<double>();
  params.timeStep = p.at("timeStep").get<double>();
  params.socInitial = p.at("socInitial").get<double>();
  params.socMax = p.at("socMax").get<double>();
  params.socMin = p.at("socMin").get<double>();
  params.fleetShare = p.at("fleetShare").get<double>();
  params.timeShare = p.value("timeShare", 0.0);
  params.penalty = p.value("penalty", 1e6);
  params.check();

  std::vector<Station> stations;
  stations.push_back(stationFromJson(doc.at("garage")));
  stations.back().isGarage = true;
  for (const auto& js : doc.at("stations")) stations.push_back(stationFromJson(js));

  std::vector<Trip> trips;
  for (const auto& jt : doc.at("trips")) {
    Trip t;
    t.id = jt.at("id").get<std::string>();
    t.origin = pointFromJson(jt.at("origin"));
    t.destination = pointFromJson(jt.at("destination"));
    t.startTime = jt.at("startTime").get<int>();
    t.endTime = jt.at("endTime").get<int>();
    t.energy = jt.at("energy").get<double>();
    if (t.startTime < 0 || t.endTime > params.horizon)
      throw InstanceError("trip " + t.id + " lies outside the planning horizon");
    trips.push_back(std::move(t));
  }

  double avgSpeed = doc.at("avgSpeed").get<double>();
  return Instance{Network(std::move(trips), std::move(stations), 0, avgSpeed), params};
}

Instance loadInstance(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InstanceError("cannot open instance file: " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseInstance(ss.str());
}

std::string instanceToJson(const Network& network, const OpParams& params) {
  json doc;
  doc["version"] = "efleet-instance/1";
  doc["avgSpeed"] = network.avgSpeed();
  doc["params"] = json{{"maxGap", params.maxGap},
                       {"maxLayover", params.maxLayover},
                       {"minVisit", params.minVisit},
                       {"horizon", params.horizon},
                       {"timeStep", params.timeStep},
                       {"socInitial", params.socInitial},
                       {"socMax", params.socMax},
                       {"socMin", params.socMin},
                       {"fleetShare", params.fleetShare},
                       {"timeShare", params.timeShare},
                       {"penalty", params.penalty}};
  doc["garage"] = stationToJson(network.stations()[network.garage()]);
  doc["stations"] = json::array();
  for (int c = 0; c < network.numStations(); ++c)
    if (c != network.garage())
      doc["stations"].push_back(stationToJson(network.stations()[c]));
  doc["trips"] = json::array();
  for (const auto& t : network.trips()) {
    doc["trips"].push_back(json{{"id", t.id},
                                {"origin", pointToJson(t.origin)},
                                {"destination", pointToJson(t.destination)},
                                {"startTime", t.startTime},
                                {"endTime", t.endTime},
                                {"energy", t.energy}});
  }
  return doc.dump(2);
}

void saveInstance(const Network& network, const OpParams& params,
                  const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw InstanceError("cannot write instance file: " + file.string());
  out << instanceToJson(network, params) << '\n';
}

}  // namespace efleet
