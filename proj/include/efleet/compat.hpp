#pragma once

#include <vector>

#include "efleet/instance.hpp"

namespace efleet {

// Inclusive grid-step range; empty when last < first.
struct StepRange {
  int first = 0;
  int last = -1;

  bool empty() const { return last < first; }
  int count() const { return empty() ? 0 : last - first + 1; }
};

// All set structures derived from the network and operational parameters.
// Immutable after construction; shared read access is safe.
class CompatibilityIndex {
 public:
  CompatibilityIndex(const Network& network, const OpParams& params);

  // I_i: compatible successors of trip i.
  const std::vector<int>& successors(int i) const { return succ_[i]; }
  // I_i^lambda: successors reachable by direct connection (layover <= L).
  const std::vector<int>& directSuccessors(int i) const { return direct_[i]; }
  // I_j^tau without the garage: compatible predecessors.
  const std::vector<int>& predecessors(int j) const { return pred_[j]; }
  // C_i: stations with at least one station-feasible successor.
  const std::vector<int>& reachableStations(int i) const { return stationsAfter_[i]; }
  // I_ic^sigma.
  const std::vector<int>& stationSuccessors(int i, int c) const {
    return stationSucc_[i][c];
  }
  bool isDirect(int i, int j) const { return directFlag_[i][j]; }
  bool isStationFeasible(int i, int c, int j) const;

  // T_ijc as a grid-step range (every t whose D_t lies in the closed window).
  StepRange chargeSteps(int i, int j, int c) const;

  int numSteps() const { return numSteps_; }
  double stepStart(int t) const;  // D_t

  const Network& network() const { return *network_; }
  const OpParams& params() const { return params_; }

 private:
  const Network* network_;
  OpParams params_;
  int numSteps_;
  std::vector<std::vector<int>> succ_, direct_, pred_;
  std::vector<std::vector<bool>> directFlag_;
  std::vector<int> garageSortedByStart_;
  std::vector<std::vector<int>> stationsAfter_;
  std::vector<std::vector<std::vector<int>>> stationSucc_;  // [i][c] -> trips
};

// The discretized horizon: (t, D_t) pairs covering [0, horizon).
std::vector<std::pair<int, double>> timeGrid(const OpParams& params);

}  // namespace efleet
