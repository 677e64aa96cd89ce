#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "efleet/harness.hpp"

namespace efleet {

namespace {

std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cell += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  out.push_back(cell);
  return out;
}

// A loaded comma-separated table with named-column access.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  }
};

Table loadTable(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("GTFS feed is missing " + file.filename().string());
  Table t;
  std::string line;
  if (std::getline(in, line)) t.header = splitCsv(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(splitCsv(line));
  }
  return t;
}

// HH:MM:SS (possibly beyond 24:00:00 for overnight service) to minutes.
int parseGtfsTime(const std::string& s) {
  int h = 0, m = 0, sec = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> h >> c1 >> m >> c2 >> sec) || c1 != ':' || c2 != ':') return -1;
  if (h < 0 || m < 0 || m > 59 || sec < 0 || sec > 59) return -1;
  return h * 60 + m + (sec >= 30 ? 1 : 0);
}

}  // namespace

std::vector<PoolTrip> ingestGtfs(const std::filesystem::path& feedDir,
                                 const std::optional<std::string>& serviceId,
                                 GtfsIngestStats* stats) {
  const Table trips = loadTable(feedDir / "trips.txt");
  const Table stopTimes = loadTable(feedDir / "stop_times.txt");
  const Table stops = loadTable(feedDir / "stops.txt");
  GtfsIngestStats local;

  const int sIdCol = stops.col("stop_id");
  const int sLatCol = stops.col("stop_lat");
  const int sLonCol = stops.col("stop_lon");
  if (sIdCol < 0 || sLatCol < 0 || sLonCol < 0)
    throw std::runtime_error("stops.txt lacks stop_id/stop_lat/stop_lon");
  std::map<std::string, std::pair<double, double>> stopLoc;
  double latSum = 0, lonSum = 0;
  for (const auto& row : stops.rows) {
    try {
      const double lat = std::stod(row.at(sLatCol));
      const double lon = std::stod(row.at(sLonCol));
      stopLoc[row.at(sIdCol)] = {lat, lon};
      latSum += lat;
      lonSum += lon;
    } catch (const std::exception&) {
      ++local.skipped;
    }
  }
  if (stopLoc.empty()) throw std::runtime_error("stops.txt has no usable rows");
  const double refLat = latSum / stopLoc.size();
  const double refLon = lonSum / stopLoc.size();

  const int tIdCol = trips.col("trip_id");
  const int tSvcCol = trips.col("service_id");
  if (tIdCol < 0) throw std::runtime_error("trips.txt lacks trip_id");
  std::map<std::string, bool> wanted;
  for (const auto& row : trips.rows) {
    if (static_cast<int>(row.size()) <= tIdCol) {
      ++local.skipped;
      continue;
    }
    if (serviceId && tSvcCol >= 0 &&
        (static_cast<int>(row.size()) <= tSvcCol || row[tSvcCol] != *serviceId))
      continue;
    wanted[row[tIdCol]] = true;
  }

  struct StopEvent {
    int seq;
    int arrival, departure;
    std::string stop;
  };
  const int cTrip = stopTimes.col("trip_id");
  const int cArr = stopTimes.col("arrival_time");
  const int cDep = stopTimes.col("departure_time");
  const int cStop = stopTimes.col("stop_id");
  const int cSeq = stopTimes.col("stop_sequence");
  if (cTrip < 0 || cArr < 0 || cDep < 0 || cStop < 0 || cSeq < 0)
    throw std::runtime_error("stop_times.txt lacks required columns");
  std::map<std::string, std::vector<StopEvent>> byTrip;
  for (const auto& row : stopTimes.rows) {
    const int need = std::max({cTrip, cArr, cDep, cStop, cSeq});
    if (static_cast<int>(row.size()) <= need) {
      ++local.skipped;
      continue;
    }
    if (!wanted.count(row[cTrip])) continue;
    StopEvent ev;
    ev.arrival = parseGtfsTime(row[cArr]);
    ev.departure = parseGtfsTime(row[cDep]);
    ev.stop = row[cStop];
    try {
      ev.seq = std::stoi(row[cSeq]);
    } catch (const std::exception&) {
      ev.seq = -1;
    }
    if (ev.arrival < 0 || ev.departure < 0 || ev.seq < 0 || !stopLoc.count(ev.stop)) {
      ++local.skipped;
      continue;
    }
    byTrip[row[cTrip]].push_back(ev);
  }

  std::vector<PoolTrip> pool;
  for (auto& [tripId, events] : byTrip) {
    if (events.size() < 2) {
      ++local.skipped;
      continue;
    }
    std::sort(events.begin(), events.end(),
              [](const StopEvent& a, const StopEvent& b) { return a.seq < b.seq; });
    PoolTrip t;
    t.id = tripId;
    t.startTime = events.front().departure;
    t.endTime = events.back().arrival;
    if (t.endTime <= t.startTime) {
      ++local.skipped;
      continue;
    }
    auto project = [&](const std::string& stop) {
      const auto& [lat, lon] = stopLoc.at(stop);
      return projectLatLon(lat, lon, refLat, refLon);
    };
    t.origin = project(events.front().stop);
    t.destination = project(events.back().stop);
    double len = 0;
    for (std::size_t k = 0; k + 1 < events.size(); ++k)
      len += dist(project(events[k].stop), project(events[k + 1].stop));
    t.lengthMiles = len;
    pool.push_back(std::move(t));
    ++local.parsed;
  }
  if (stats) *stats = local;
  return pool;
}

}  // namespace efleet
