#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "efleet/colgen.hpp"

namespace efleet {

namespace {

constexpr double kRcEps = 1e-6;  // strict negative-reduced-cost threshold

// Loosest admissible run clock: the elapsed time of a chain is measured from
// the first trip's departure.
double elapsedEnd(const std::vector<int>& chain, const Network& net) {
  const Trip& f = net.trips()[chain.front()];
  const Trip& l = net.trips()[chain.back()];
  return (l.startTime - f.startTime) + l.energy + net.tripToGarage(chain.back());
}

bool horizonOk(const std::vector<int>& chain, const CompatibilityIndex& compat) {
  return elapsedEnd(chain, compat.network()) <= compat.params().horizon + 1e-9;
}

// Cheapest BEB connection deadhead for (i, j): direct when the layover rule
// allows it, otherwise the best station detour. +inf when the pair cannot be
// flown electric at all.
double bebConnection(int i, int j, const CompatibilityIndex& compat) {
  const Network& net = compat.network();
  double best = compat.isDirect(i, j) ? net.tripToTrip(i, j) : kInf;
  for (int c : compat.reachableStations(i))
    if (compat.isStationFeasible(i, c, j))
      best = std::min(best, net.tripToStation(i, c) + net.stationToTrip(c, j));
  return best;
}

}  // namespace

std::optional<Column> buildDieselColumn(const std::vector<int>& chain,
                                        const CompatibilityIndex& compat,
                                        const CostParams& costs) {
  if (chain.empty()) return std::nullopt;
  const Network& net = compat.network();
  const int gar = net.garage();
  if (!horizonOk(chain, compat)) return std::nullopt;

  Column col;
  col.type = VehicleType::Diesel;
  col.trips = chain;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const int i = chain[k], j = chain[k + 1];
    const auto& succ = compat.successors(i);
    if (std::find(succ.begin(), succ.end(), j) == succ.end()) return std::nullopt;
    if (compat.isDirect(i, j)) continue;
    if (!compat.isStationFeasible(i, gar, j)) return std::nullopt;
    col.visits.push_back({static_cast<int>(k), gar,
                          net.trips()[i].endTime + net.tripToStation(i, gar), 0.0});
  }
  finalizeColumn(col, compat, costs);
  return col;
}

PricedColumn priceDiesel(const Duals& duals, const CompatibilityIndex& compat,
                         const CostParams& costs) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  const int n = net.numTrips();
  if (n == 0) return {std::nullopt, 0.0};
  const int gar = net.garage();
  const double Fk = costs.operatingPerMin(false);
  const double Vk = costs.dbVehiclePerDay;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(net.trips()[a].startTime, a) < std::pair(net.trips()[b].startTime, b);
  });

  double bestRc = kInf;
  std::vector<int> bestChain;

  // one shortest-path sweep per first trip: the horizon check depends on the
  // (first, last) pair only
  std::vector<double> dist(n);
  std::vector<int> parent(n);
  for (int f = 0; f < n; ++f) {
    dist.assign(n, kInf);
    parent.assign(n, -1);
    dist[f] = Fk * (net.garageToTrip(f) + net.trips()[f].revenueMinutes()) -
              duals.trip[f];
    for (int i : order) {
      if (dist[i] == kInf) continue;
      // close the chain at i
      const Trip& tf = net.trips()[f];
      const Trip& ti = net.trips()[i];
      const double elapsed =
          (ti.startTime - tf.startTime) + ti.energy + net.tripToGarage(i);
      if (elapsed <= p.horizon + 1e-9) {
        const double rc = dist[i] + Vk + Fk * net.tripToGarage(i) -
                          p.fleetShare * duals.fleetShare;
        if (rc < bestRc) {
          bestRc = rc;
          bestChain.clear();
          for (int k = i; k >= 0; k = parent[k]) bestChain.push_back(k);
          std::reverse(bestChain.begin(), bestChain.end());
        }
      }
      // extend
      for (int j : compat.successors(i)) {
        double conn;
        if (compat.isDirect(i, j))
          conn = net.tripToTrip(i, j);
        else if (compat.isStationFeasible(i, gar, j))
          conn = net.tripToStation(i, gar) + net.stationToTrip(gar, j);
        else
          continue;
        const double cand = dist[i] +
                            Fk * (conn + net.trips()[j].revenueMinutes()) -
                            duals.trip[j];
        if (cand < dist[j]) {
          dist[j] = cand;
          parent[j] = i;
        }
      }
    }
  }

  if (bestChain.empty()) return {std::nullopt, 0.0};
  if (bestRc >= -kRcEps) return {std::nullopt, bestRc};
  auto col = buildDieselColumn(bestChain, compat, costs);
  return {col, bestRc};
}

std::optional<Column> optimizeCharging(const std::vector<int>& chain,
                                       const Duals& duals,
                                       const CompatibilityIndex& compat,
                                       const CostParams& costs) {
  if (chain.empty()) return std::nullopt;
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  const double Fe = costs.operatingPerMin(true);
  const double dT = p.timeStep, eps = p.epsilon;
  const double Bmax = p.socMax, Bmin = p.socMin, Binit = p.socInitial;
  if (!horizonOk(chain, compat)) return std::nullopt;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto& succ = compat.successors(chain[k]);
    if (std::find(succ.begin(), succ.end(), chain[k + 1]) == succ.end())
      return std::nullopt;
  }

  ModelHandle m;
  std::vector<int> b(chain.size());
  for (std::size_t k = 0; k < chain.size(); ++k)
    b[k] = m.addVar(0, Bmax, 0, VarType::Continuous, "b_" + std::to_string(k));
  m.addConstr(Sense::Equal, Binit - net.garageToTrip(chain.front()), {{b[0], 1.0}},
              "b_first");

  struct Opt {
    int k, c, q, s, u;
    StepRange steps;
    int xBase;
  };
  std::vector<Opt> opts;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const int i = chain[k], j = chain[k + 1];
    std::vector<std::pair<int, double>> pick;
    for (int c : compat.reachableStations(i)) {
      if (!compat.isStationFeasible(i, c, j)) continue;
      Opt o;
      o.k = static_cast<int>(k);
      o.c = c;
      const double lo = net.trips()[i].endTime + net.tripToStation(i, c);
      const double hi = net.trips()[j].startTime - net.stationToTrip(c, j);
      const double detour =
          -net.tripToTrip(i, j) + net.tripToStation(i, c) + net.stationToTrip(c, j);
      const std::string tag = std::to_string(k) + "_" + std::to_string(c);
      o.q = m.addVar(0, 1, Fe * detour, VarType::Binary, "q_" + tag);
      o.s = m.addVar(0, hi, 0, VarType::Continuous, "s_" + tag);
      o.u = m.addVar(0, hi - lo, 0, VarType::Continuous, "u_" + tag);
      o.steps = compat.chargeSteps(i, j, c);
      o.xBase = m.numVars();
      const double M = hi + dT;
      std::vector<std::pair<int, double>> usync{{o.u, 1.0}};
      for (int t = o.steps.first; t <= o.steps.last; ++t) {
        const std::string st = tag + "_" + std::to_string(t);
        const double Dt = compat.stepStart(t);
        const int x = m.addVar(0, 1, -duals.plugCapacity[c][t], VarType::Binary,
                               "x_" + st);
        const int xa = m.addVar(0, 1, 0, VarType::Binary, "xa_" + st);
        const int xb = m.addVar(0, 1, 0, VarType::Binary, "xb_" + st);
        m.addConstr(Sense::LessEqual, Dt + dT - eps + M,
                    {{o.s, 1.0}, {o.q, M}, {xa, -M}}, "xa1_" + st);
        m.addConstr(Sense::GreaterEqual, Dt + dT - 2 * M,
                    {{o.s, 1.0}, {o.q, -M}, {xa, -M}}, "xa2_" + st);
        m.addConstr(Sense::LessEqual, Dt - eps + M,
                    {{o.s, 1.0}, {o.u, 1.0}, {o.q, M}, {xb, -M}}, "xb1_" + st);
        m.addConstr(Sense::GreaterEqual, Dt - 2 * M,
                    {{o.s, 1.0}, {o.u, 1.0}, {o.q, -M}, {xb, -M}}, "xb2_" + st);
        m.addConstr(Sense::Equal, 0, {{x, 1.0}, {xb, -1.0}, {xa, 1.0}}, "xdef_" + st);
        m.addConstr(Sense::LessEqual, 0, {{x, 1.0}, {o.q, -1.0}}, "xq_" + st);
        usync.push_back({x, -dT});
      }
      m.addConstr(Sense::GreaterEqual, -2 * dT + eps, usync,
                  "usync_" + tag);
      m.addConstr(Sense::GreaterEqual, 0, {{o.s, 1.0}, {o.q, -lo}}, "sij_" + tag);
      m.addConstr(Sense::LessEqual, 0, {{o.s, 1.0}, {o.u, 1.0}, {o.q, -hi}},
                  "eij_" + tag);
      pick.push_back({o.q, 1.0});
      opts.push_back(o);
    }
    if (compat.isDirect(i, j)) {
      if (!pick.empty())
        m.addConstr(Sense::LessEqual, 1, pick, "pick_" + std::to_string(k));
    } else {
      if (pick.empty()) return std::nullopt;  // long layover, nowhere to go
      m.addConstr(Sense::Equal, 1, pick, "pick_" + std::to_string(k));
    }
  }

  // SoC recursion, capacity/floor bounds around each gap
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const int i = chain[k], j = chain[k + 1];
    const double Bi = net.trips()[i].energy;
    const double Tij = net.tripToTrip(i, j);
    std::vector<std::pair<int, double>> rec{{b[k + 1], 1.0}, {b[k], -1.0}};
    std::vector<std::pair<int, double>> capRow{{b[k], 1.0}};
    std::vector<std::pair<int, double>> floorRow{{b[k], 1.0}};
    for (const Opt& o : opts) {
      if (o.k != static_cast<int>(k)) continue;
      const double det = -Tij + net.tripToStation(i, o.c) + net.stationToTrip(o.c, j);
      const double rate = net.stations()[o.c].rate;
      rec.push_back({o.q, det});
      rec.push_back({o.u, -rate});
      capRow.push_back({o.q, -net.tripToStation(i, o.c)});
      capRow.push_back({o.u, rate});
      floorRow.push_back({o.q, -net.tripToStation(i, o.c)});
    }
    m.addConstr(Sense::Equal, -Bi - Tij, rec, "soc_rec_" + std::to_string(k));
    m.addConstr(Sense::LessEqual, Bmax + Bi, capRow, "soc_cap_" + std::to_string(k));
    m.addConstr(Sense::GreaterEqual, Bmin + Bi, floorRow,
                "soc_floor_" + std::to_string(k));
  }
  {
    const int l = chain.back();
    const double Bl = net.trips()[l].energy;
    const double Tls = net.tripToGarage(l);
    const double Rg = net.stations()[net.garage()].rate;
    const std::size_t kl = chain.size() - 1;
    m.addConstr(Sense::GreaterEqual, Bmin + Bl + Tls, {{b[kl], 1.0}}, "soc_last");
    const double slack = p.horizon - elapsedEnd(chain, net);
    m.addConstr(Sense::GreaterEqual, Binit + Bl + Tls - Rg * slack, {{b[kl], 1.0}},
                "overnight");
  }

  SolveResult res = solveMILP(m, 10.0);
  if (!res.feasible()) return std::nullopt;

  Column col;
  col.type = VehicleType::Electric;
  col.trips = chain;
  for (const Opt& o : opts)
    if (res.values[o.q] > 0.5)
      col.visits.push_back({o.k, o.c, res.values[o.s], res.values[o.u]});
  for (std::size_t k = 0; k < chain.size(); ++k)
    col.socAtTripStart.push_back(res.values[b[k]]);
  finalizeColumn(col, compat, costs);
  return col;
}

PricedColumn priceBEBHeuristic(const Duals& duals, const CompatibilityIndex& compat,
                               const CostParams& costs, std::mt19937_64& rng,
                               const CGConfig& config) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  const int n = net.numTrips();
  if (n == 0) return {std::nullopt, 0.0};
  const double Fe = costs.operatingPerMin(true);
  const double temp = std::max(config.softmaxTemperature, 1e-6);

  auto sample = [&](const std::vector<int>& cands,
                    const std::vector<double>& score) {
    double hi = *std::max_element(score.begin(), score.end());
    std::vector<double> w(score.size());
    for (std::size_t k = 0; k < score.size(); ++k)
      w[k] = std::exp((score[k] - hi) / temp);
    std::discrete_distribution<int> pick(w.begin(), w.end());
    return cands[pick(rng)];
  };

  for (int attempt = 0; attempt <= config.stage2Retries; ++attempt) {
    // stage 1: randomized greedy chain, dual-guided
    std::vector<int> chain;
    {
      std::vector<int> cands(n);
      std::iota(cands.begin(), cands.end(), 0);
      std::vector<double> score(n);
      for (int j = 0; j < n; ++j)
        score[j] = duals.trip[j] - Fe * net.garageToTrip(j);
      chain.push_back(sample(cands, score));
    }
    while (true) {
      const int i = chain.back();
      const int f = chain.front();
      std::vector<int> cands;
      std::vector<double> score;
      for (int j : compat.successors(i)) {
        const double conn = bebConnection(i, j, compat);
        if (conn == kInf) continue;
        const double elapsed = (net.trips()[j].startTime - net.trips()[f].startTime) +
                               net.trips()[j].energy + net.tripToGarage(j);
        if (elapsed > p.horizon + 1e-9) continue;
        cands.push_back(j);
        score.push_back(duals.trip[j] - Fe * conn);
      }
      if (cands.empty()) break;
      chain.push_back(sample(cands, score));
    }

    // stage 2: charging MILP for the fixed chain; shrink on infeasibility
    while (!chain.empty()) {
      auto col = optimizeCharging(chain, duals, compat, costs);
      if (col) {
        const double rc = reducedCost(*col, duals, p);
        if (rc < -kRcEps) return {col, rc};
        return {std::nullopt, rc};
      }
      chain.pop_back();
    }
  }
  return {std::nullopt, 0.0};
}

PricedColumn priceBEBExact(const Duals& duals, const CompatibilityIndex& compat,
                           const CostParams& costs, double timeLimitSeconds) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  const int n = net.numTrips();
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(timeLimitSeconds);

  double bestRc = kInf;
  std::optional<Column> best;
  std::vector<int> chain;
  bool timedOut = false;

  // full enumeration of feasible chains; each candidate chain gets the same
  // stage-2 charging MILP the heuristic uses, so the search is exact over
  // chains up to the time budget
  auto dfs = [&](auto&& self, int i) -> void {
    if (timedOut || std::chrono::steady_clock::now() >= deadline) {
      timedOut = true;
      return;
    }
    chain.push_back(i);
    if (auto col = optimizeCharging(chain, duals, compat, costs)) {
      const double rc = reducedCost(*col, duals, p);
      if (rc < bestRc) {
        bestRc = rc;
        best = std::move(col);
      }
    }
    const int f = chain.front();
    for (int j : compat.successors(i)) {
      if (bebConnection(i, j, compat) == kInf) continue;
      const double elapsed = (net.trips()[j].startTime - net.trips()[f].startTime) +
                             net.trips()[j].energy + net.tripToGarage(j);
      if (elapsed > p.horizon + 1e-9) continue;
      self(self, j);
    }
    chain.pop_back();
  };
  for (int i = 0; i < n && !timedOut; ++i) dfs(dfs, i);

  if (!best) return {std::nullopt, 0.0};
  if (bestRc >= -kRcEps) return {std::nullopt, bestRc};
  return {best, bestRc};
}

}  // namespace efleet
