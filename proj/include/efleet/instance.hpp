#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "efleet/geometry.hpp"

namespace efleet {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One timetabled revenue trip. Times are integer minutes from midnight,
// energy demand is minutes of operation-equivalent range.
struct Trip {
  std::string id;
  Point origin;
  Point destination;
  int startTime = 0;   // T^alpha
  int endTime = 0;     // T^beta
  double energy = 0;   // B_i

  int revenueMinutes() const { return endTime - startTime; }
};

struct Station {
  std::string id;
  Point location;
  double rate = 0;   // R_c, min-of-range per min-of-charging
  int plugs = 1;     // Z_c
  bool isGarage = false;
};

// Scalar operational parameters. Times in minutes, SoC in minutes of range.
struct OpParams {
  double maxGap = 360;         // G
  double maxLayover = 30;      // L
  double minVisit = 30;        // W
  double horizon = 1440;       // T bar
  double timeStep = 5;         // T^Delta
  double socInitial = 339.43;  // B^iota
  double socMax = 377.14;      // B bar
  double socMin = 94.29;       // B underbar
  double fleetShare = 1.0;     // A^nu
  double timeShare = 0.0;      // A^tau
  double penalty = 1e6;        // P, $/unit shortfall
  double epsilon = 1e-4;       // minutes

  void check() const;
};

// A single-garage instance: trips, charging stations (garage included) and
// precomputed deadhead times.
class Network {
 public:
  Network(std::vector<Trip> trips, std::vector<Station> stations,
          int garageIndex, double avgSpeedMph);

  const std::vector<Trip>& trips() const { return trips_; }
  const std::vector<Station>& stations() const { return stations_; }
  int garage() const { return garageIndex_; }
  double avgSpeed() const { return avgSpeedMph_; }

  int numTrips() const { return static_cast<int>(trips_.size()); }
  int numStations() const { return static_cast<int>(stations_.size()); }

  // Deadhead minutes. All derived from Euclidean distance / avg speed.
  double tripToTrip(int i, int j) const { return dd_[i][j]; }
  double garageToTrip(int j) const { return garageOut_[j]; }
  double tripToGarage(int i) const { return garageIn_[i]; }
  double tripToStation(int i, int c) const { return toStation_[i][c]; }
  double stationToTrip(int c, int j) const { return fromStation_[c][j]; }

 private:
  std::vector<Trip> trips_;
  std::vector<Station> stations_;
  int garageIndex_;
  double avgSpeedMph_;
  std::vector<std::vector<double>> dd_;
  std::vector<double> garageOut_, garageIn_;
  std::vector<std::vector<double>> toStation_, fromStation_;
};

struct Instance {
  Network network;
  OpParams params;
};

// Instance files carry the version tag "efleet-instance/1".
Instance loadInstance(const std::filesystem::path& file);
Instance parseInstance(const std::string& jsonText);
std::string instanceToJson(const Network& network, const OpParams& params);
void saveInstance(const Network& network, const OpParams& params,
                  const std::filesystem::path& file);

}  // namespace efleet
