#include <algorithm>
#include <cmath>
#include <random>

#include "efleet/harness.hpp"

namespace efleet {

std::vector<PoolTrip> syntheticPool(int size, unsigned long long seed,
                                    double areaMiles) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0, areaMiles);
  std::uniform_real_distribution<double> hop(-4, 4);
  std::uniform_int_distribution<int> start(360, 1200);
  std::uniform_int_distribution<int> slack(0, 10);
  std::vector<PoolTrip> pool;
  pool.reserve(size);
  for (int k = 0; k < size; ++k) {
    PoolTrip t;
    t.id = "p" + std::to_string(k);
    t.origin = {coord(rng), coord(rng)};
    t.destination = {std::clamp(t.origin.x + hop(rng), 0.0, areaMiles),
                     std::clamp(t.origin.y + hop(rng), 0.0, areaMiles)};
    const double straight = dist(t.origin, t.destination);
    t.lengthMiles = std::max(0.5, straight * 1.3);  // routed length beats the crow
    t.startTime = start(rng);
    // revenue service runs well below deadhead speed
    const int duration =
        std::max(10, static_cast<int>(std::lround(t.lengthMiles / 12.0 * 60.0))) +
        slack(rng);
    t.endTime = t.startTime + duration;
    pool.push_back(std::move(t));
  }
  return pool;
}

std::vector<int> assignGarages(const std::vector<PoolTrip>& pool,
                               const std::vector<Point>& garages) {
  if (garages.empty()) throw InstanceError("at least one garage is required");
  const int g = static_cast<int>(garages.size());
  const int cap = static_cast<int>((pool.size() + garages.size() - 1) / garages.size());
  std::vector<int> counts(g, 0);
  std::vector<int> out(pool.size(), 0);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const Point mid{(pool[k].origin.x + pool[k].destination.x) / 2,
                    (pool[k].origin.y + pool[k].destination.y) / 2};
    std::vector<int> order(g);
    for (int i = 0; i < g; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return dist(mid, garages[a]) < dist(mid, garages[b]);
    });
    // nearest garage first, spilling over to keep assignments balanced
    int chosen = order[0];
    for (int i : order)
      if (counts[i] < cap) {
        chosen = i;
        break;
      }
    out[k] = chosen;
    ++counts[chosen];
  }
  return out;
}

Instance generateInstance(const std::vector<PoolTrip>& pool,
                          const GeneratorConfig& config) {
  if (pool.empty()) throw InstanceError("trip pool is empty");
  config.econ.check();
  std::mt19937_64 rng(config.seed);

  const std::vector<int> assignment = assignGarages(pool, config.garages);
  std::uniform_int_distribution<int> pickGarage(
      0, static_cast<int>(config.garages.size()) - 1);
  const int garage = pickGarage(rng);

  std::vector<int> mine;
  for (std::size_t k = 0; k < pool.size(); ++k)
    if (assignment[k] == garage) mine.push_back(static_cast<int>(k));
  if (static_cast<int>(mine.size()) < config.size)
    throw InstanceError("requested size exceeds the drawn garage's trip pool");
  std::vector<int> sampled;
  std::sample(mine.begin(), mine.end(), std::back_inserter(sampled), config.size, rng);

  const EconInputs& e = config.econ;
  std::vector<Trip> trips;
  for (int k : sampled) {
    const PoolTrip& pt = pool[k];
    Trip t;
    t.id = pt.id;
    t.origin = pt.origin;
    t.destination = pt.destination;
    t.startTime = pt.startTime;
    t.endTime = pt.endTime;
    t.energy = pt.lengthMiles / e.avgSpeedMph * 60.0;  // minutes of range
    trips.push_back(std::move(t));
  }

  const double fast = chargeRate(e.fastChargerKw, e.consumptionKwhPerMi, e.avgSpeedMph);
  std::vector<Station> stations;
  {
    Station s;
    s.id = "garage";
    s.location = config.garages[garage];
    s.rate = fast;
    s.plugs = config.garagePlugs;
    s.isGarage = true;
    stations.push_back(std::move(s));
  }
  // on-route chargers sit at sampled trip terminals
  std::uniform_int_distribution<int> pickTrip(0, static_cast<int>(trips.size()) - 1);
  for (int c = 0; c < config.stationCount; ++c) {
    Station s;
    s.id = "c" + std::to_string(c);
    s.location = trips[pickTrip(rng)].destination;
    s.rate = fast;
    s.plugs = config.stationPlugs;
    stations.push_back(std::move(s));
  }

  OpParams params = config.params;
  params.socMax = socToMinutes(e.batteryKwh, e.socHigh, e.consumptionKwhPerMi,
                               e.avgSpeedMph);
  params.socMin = socToMinutes(e.batteryKwh, e.socLow, e.consumptionKwhPerMi,
                               e.avgSpeedMph);
  params.socInitial = socToMinutes(e.batteryKwh, e.socInitial, e.consumptionKwhPerMi,
                                   e.avgSpeedMph);
  params.check();

  return Instance{Network(std::move(trips), std::move(stations), 0, e.avgSpeedMph),
                  params};
}

}  // namespace efleet
