#include "efleet/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "efleet/column.hpp"

namespace efleet {

namespace {

std::string nm(const char* tag, std::initializer_list<int> idx) {
  std::string s = tag;
  for (int v : idx) {
    s += '_';
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

ExactModel::ExactModel(const CompatibilityIndex& compat, const CostParams& costs)
    : compat_(&compat), costs_(costs) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  const int n = net.numTrips();
  const int gar = net.garage();
  const double Fe = costs.operatingPerMin(true);
  const double Fk = costs.operatingPerMin(false);
  const double Ve = costs.bebVehiclePerDay;
  const double Vk = costs.dbVehiclePerDay;
  const double Bmax = p.socMax, Bmin = p.socMin, Binit = p.socInitial;
  const double T = p.horizon, dT = p.timeStep, eps = p.epsilon;
  const double Rs = net.stations()[gar].rate;
  ModelHandle& m = model_;

  // --- variables -----------------------------------------------------------
  yEv_.assign(n, {});
  yDb_.assign(n, {});
  yEvFromGarage_.assign(n, -1);
  yDbFromGarage_.assign(n, -1);
  yEvToGarage_.assign(n, -1);
  yDbToGarage_.assign(n, -1);
  bVar_.assign(n, -1);
  tEtaVar_.assign(n, -1);
  garageVisitQ_.assign(n, {});

  for (int i = 0; i < n; ++i) {
    const double rev = net.trips()[i].revenueMinutes();
    for (int j : compat_->successors(i)) {
      const double dh = net.tripToTrip(i, j);
      yEv_[i].push_back(m.addVar(0, 1, Fe * (rev + dh), VarType::Binary, nm("ye", {i, j})));
      yDb_[i].push_back(m.addVar(0, 1, Fk * (rev + dh), VarType::Binary, nm("yk", {i, j})));
    }
    yEvFromGarage_[i] =
        m.addVar(0, 1, Fe * net.garageToTrip(i), VarType::Binary, nm("yes", {i}));
    yDbFromGarage_[i] =
        m.addVar(0, 1, Fk * net.garageToTrip(i), VarType::Binary, nm("yks", {i}));
    yEvToGarage_[i] = m.addVar(0, 1, Ve + Fe * (rev + net.tripToGarage(i)),
                               VarType::Binary, nm("yse", {i}));
    yDbToGarage_[i] = m.addVar(0, 1, Vk + Fk * (rev + net.tripToGarage(i)),
                               VarType::Binary, nm("ysk", {i}));
    bVar_[i] = m.addVar(0, Bmax, 0, VarType::Continuous, nm("b", {i}));
    tEtaVar_[i] = m.addVar(0, T, 0, VarType::Continuous, nm("t", {i}));
  }

  for (int i = 0; i < n; ++i)
    for (int c : compat_->reachableStations(i))
      for (int j : compat_->stationSuccessors(i, c)) {
        VisitVars vv;
        vv.i = i;
        vv.j = j;
        vv.c = c;
        const double lo = net.trips()[i].endTime + net.tripToStation(i, c);
        const double hi = net.trips()[j].startTime - net.stationToTrip(c, j);
        const double detour =
            -net.tripToTrip(i, j) + net.tripToStation(i, c) + net.stationToTrip(c, j);
        vv.q = m.addVar(0, 1, Fe * detour, VarType::Binary, nm("q", {i, j, c}));
        vv.s = m.addVar(0, hi, 0, VarType::Continuous, nm("s", {i, j, c}));
        vv.u = m.addVar(0, hi - lo, 0, VarType::Continuous, nm("u", {i, j, c}));
        vv.steps = compat_->chargeSteps(i, j, c);
        vv.xBase = m.numVars();
        for (int t = vv.steps.first; t <= vv.steps.last; ++t)
          m.addVar(0, 1, 0, VarType::Binary, nm("x", {i, j, c, t}));
        vv.xaBase = m.numVars();
        for (int t = vv.steps.first; t <= vv.steps.last; ++t)
          m.addVar(0, 1, 0, VarType::Binary, nm("xa", {i, j, c, t}));
        vv.xbBase = m.numVars();
        for (int t = vv.steps.first; t <= vv.steps.last; ++t)
          m.addVar(0, 1, 0, VarType::Binary, nm("xb", {i, j, c, t}));
        visits_.push_back(vv);
      }

  for (int i = 0; i < n; ++i)
    for (int j : compat_->stationSuccessors(i, gar)) {
      const double detour = -net.tripToTrip(i, j) + net.tripToStation(i, gar) +
                            net.stationToTrip(gar, j);
      garageVisitQ_[i].push_back(
          m.addVar(0, 1, Fk * detour, VarType::Binary, nm("qk", {i, j})));
    }

  vVar_ = m.addVar(0, kInf, p.penalty, VarType::Continuous, "v");
  vPrimeVar_ = m.addVar(0, kInf, p.penalty, VarType::Continuous, "vp");

  // --- flow and share rows -------------------------------------------------
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> out{{yEvToGarage_[i], 1.0},
                                            {yDbToGarage_[i], 1.0}};
    for (std::size_t k = 0; k < yEv_[i].size(); ++k) {
      out.push_back({yEv_[i][k], 1.0});
      out.push_back({yDb_[i][k], 1.0});
    }
    m.addConstr(Sense::Equal, 1, out, nm("cov_out", {i}));
  }
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> in{{yEvFromGarage_[j], 1.0},
                                           {yDbFromGarage_[j], 1.0}};
    std::vector<std::pair<int, double>> bal{{yDbFromGarage_[j], 1.0},
                                            {yDbToGarage_[j], -1.0}};
    for (int i : compat_->predecessors(j)) {
      const auto& succ = compat_->successors(i);
      const int slot =
          static_cast<int>(std::find(succ.begin(), succ.end(), j) - succ.begin());
      in.push_back({yEv_[i][slot], 1.0});
      in.push_back({yDb_[i][slot], 1.0});
      bal.push_back({yDb_[i][slot], 1.0});
    }
    for (std::size_t k = 0; k < yDb_[j].size(); ++k)
      bal.push_back({yDb_[j][k], -1.0});
    m.addConstr(Sense::Equal, 1, in, nm("cov_in", {j}));
    m.addConstr(Sense::Equal, 0, bal, nm("bal", {j}));
  }

  {
    std::vector<std::pair<int, double>> share{{vVar_, 1.0}};
    for (int i = 0; i < n; ++i) {
      share.push_back({yEvToGarage_[i], 1.0 - p.fleetShare});
      share.push_back({yDbToGarage_[i], -p.fleetShare});
    }
    m.addConstr(Sense::GreaterEqual, 0, share, "share_fleet");
  }
  {
    double totalRev = 0;
    std::vector<std::pair<int, double>> share{{vPrimeVar_, 1.0}};
    for (int i = 0; i < n; ++i) {
      const double rev = net.trips()[i].revenueMinutes();
      totalRev += rev;
      share.push_back({yEvToGarage_[i], rev});
      for (std::size_t k = 0; k < yEv_[i].size(); ++k)
        share.push_back({yEv_[i][k], rev});
    }
    m.addConstr(Sense::GreaterEqual, p.timeShare * totalRev, share, "share_time");
  }

  // --- charging window and occupancy ---------------------------------------
  for (std::size_t vi = 0; vi < visits_.size(); ++vi) {
    const VisitVars& vv = visits_[vi];
    const double lo =
        net.trips()[vv.i].endTime + net.tripToStation(vv.i, vv.c);
    const double hi =
        net.trips()[vv.j].startTime - net.stationToTrip(vv.c, vv.j);
    const double M = hi + dT;
    const int id = static_cast<int>(vi);
    m.addConstr(Sense::GreaterEqual, 0, {{vv.s, 1.0}, {vv.q, -lo}}, nm("sij", {id}));
    m.addConstr(Sense::LessEqual, 0, {{vv.s, 1.0}, {vv.u, 1.0}, {vv.q, -hi}},
                nm("eij", {id}));
    std::vector<std::pair<int, double>> usync{{vv.u, 1.0}};
    for (int t = vv.steps.first; t <= vv.steps.last; ++t) {
      const int k = t - vv.steps.first;
      const int x = vv.xBase + k, xa = vv.xaBase + k, xb = vv.xbBase + k;
      const double Dt = compat_->stepStart(t);
      // s <= D_t + dT - eps + M (1 - q + xa)
      m.addConstr(Sense::LessEqual, Dt + dT - eps + M,
                  {{vv.s, 1.0}, {vv.q, M}, {xa, -M}}, nm("xa1", {id, t}));
      // s >= D_t + dT - M (2 - q - xa)
      m.addConstr(Sense::GreaterEqual, Dt + dT - 2 * M,
                  {{vv.s, 1.0}, {vv.q, -M}, {xa, -M}}, nm("xa2", {id, t}));
      // s + u <= D_t - eps + M (1 - q + xb)
      m.addConstr(Sense::LessEqual, Dt - eps + M,
                  {{vv.s, 1.0}, {vv.u, 1.0}, {vv.q, M}, {xb, -M}}, nm("xb1", {id, t}));
      // s + u >= D_t - M (2 - q - xb)
      m.addConstr(Sense::GreaterEqual, Dt - 2 * M,
                  {{vv.s, 1.0}, {vv.u, 1.0}, {vv.q, -M}, {xb, -M}}, nm("xb2", {id, t}));
      m.addConstr(Sense::Equal, 0, {{x, 1.0}, {xb, -1.0}, {xa, 1.0}}, nm("xdef", {id, t}));
      m.addConstr(Sense::LessEqual, 0, {{x, 1.0}, {vv.q, -1.0}}, nm("xq", {id, t}));
      usync.push_back({x, -dT});
    }
    m.addConstr(Sense::GreaterEqual, -2 * dT + eps, usync, nm("usync", {id}));
  }

  // plug capacity per (station, step)
  {
    std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> cap;
    for (const VisitVars& vv : visits_)
      for (int t = vv.steps.first; t <= vv.steps.last; ++t)
        cap[{vv.c, t}].push_back({vv.xBase + (t - vv.steps.first), 1.0});
    for (auto& [key, coefs] : cap)
      m.addConstr(Sense::LessEqual, net.stations()[key.first].plugs, coefs,
                  nm("cap", {key.first, key.second}));
  }

  // --- SoC -----------------------------------------------------------------
  // visits grouped by (i, j) for the SoC recursion rows
  std::map<std::pair<int, int>, std::vector<const VisitVars*>> byArc;
  std::map<int, std::vector<const VisitVars*>> byTrip;
  for (const VisitVars& vv : visits_) {
    byArc[{vv.i, vv.j}].push_back(&vv);
    byTrip[vv.i].push_back(&vv);
  }

  for (int i = 0; i < n; ++i) {
    const double Bi = net.trips()[i].energy;
    const double Tsi = net.garageToTrip(i);
    const double Tis = net.tripToGarage(i);

    // diesel SoC pinned at the ceiling
    std::vector<std::pair<int, double>> dsl{{bVar_[i], 1.0},
                                            {yDbToGarage_[i], -Bmax}};
    for (std::size_t k = 0; k < yDb_[i].size(); ++k) dsl.push_back({yDb_[i][k], -Bmax});
    m.addConstr(Sense::GreaterEqual, 0, dsl, nm("soc_db", {i}));

    // first trip from the garage
    m.addConstr(Sense::LessEqual, Bmax,
                {{bVar_[i], 1.0}, {yEvFromGarage_[i], Bmax - Binit + Tsi}},
                nm("soc_first_hi", {i}));
    m.addConstr(Sense::GreaterEqual, Bmin,
                {{bVar_[i], 1.0}, {yEvFromGarage_[i], -(Binit - Tsi - Bmin)}},
                nm("soc_first_lo", {i}));

    // battery capacity after charging, SoC floor before station detours
    {
      std::vector<std::pair<int, double>> capRow{{bVar_[i], 1.0}};
      std::vector<std::pair<int, double>> floorRow{{bVar_[i], 1.0}};
      double maxDetourToC = 0;
      for (const VisitVars* vv : byTrip.count(i) ? byTrip[i] : std::vector<const VisitVars*>{}) {
        const double Tic = net.tripToStation(i, vv->c);
        capRow.push_back({vv->q, -Tic});
        capRow.push_back({vv->u, net.stations()[vv->c].rate});
        floorRow.push_back({vv->q, -Tic});
        maxDetourToC = std::max(maxDetourToC, Tic);
      }
      m.addConstr(Sense::LessEqual, Bmax + Bi, capRow, nm("soc_cap", {i}));
      const double M = Bmin + Bi + maxDetourToC;
      floorRow.push_back({yDbToGarage_[i], M});
      for (std::size_t k = 0; k < yDb_[i].size(); ++k) floorRow.push_back({yDb_[i][k], M});
      m.addConstr(Sense::GreaterEqual, Bmin + Bi, floorRow, nm("soc_floor", {i}));
    }

    // last BEB trip must reach the garage above the floor
    m.addConstr(Sense::GreaterEqual, 0,
                {{bVar_[i], 1.0}, {yEvToGarage_[i], -(Bmin + Bi + Tis)}},
                nm("soc_last", {i}));

    // run-time anchoring and horizon
    m.addConstr(Sense::LessEqual, Tsi + T,
                {{tEtaVar_[i], 1.0}, {yEvFromGarage_[i], T}, {yDbFromGarage_[i], T}},
                nm("time_first", {i}));
    const double Mlast = Bi + Tis;
    m.addConstr(Sense::LessEqual, T - Bi - Tis + Mlast,
                {{tEtaVar_[i], 1.0}, {yEvToGarage_[i], Mlast}, {yDbToGarage_[i], Mlast}},
                nm("time_last", {i}));

    // overnight recharge back to B^iota for BEB runs ending at i
    const double Mch = Binit + (1 + Rs) * (Bi + Tis) + 1;
    m.addConstr(Sense::GreaterEqual,
                Binit + (1 + Rs) * (Bi + Tis) - Rs * T - Mch,
                {{bVar_[i], 1.0}, {tEtaVar_[i], -Rs}, {yEvToGarage_[i], -Mch}},
                nm("overnight", {i}));
  }

  for (int i = 0; i < n; ++i) {
    const auto& succ = compat_->successors(i);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      const int j = succ[k];
      const double Bi = net.trips()[i].energy;
      const double Tij = net.tripToTrip(i, j);
      double maxDetour = 0, maxGain = 0;
      std::vector<std::pair<int, double>> base{{bVar_[j], 1.0}, {bVar_[i], -1.0}};
      auto arcIt = byArc.find({i, j});
      if (arcIt != byArc.end())
        for (const VisitVars* vv : arcIt->second) {
          const double det = -Tij + net.tripToStation(i, vv->c) +
                             net.stationToTrip(vv->c, vv->j);
          const double rate = net.stations()[vv->c].rate;
          const double lo = net.trips()[i].endTime + net.tripToStation(i, vv->c);
          const double hi = net.trips()[j].startTime - net.stationToTrip(vv->c, j);
          base.push_back({vv->q, det});
          base.push_back({vv->u, -rate});
          maxDetour = std::max(maxDetour, det);
          maxGain = std::max(maxGain, rate * (hi - lo));
        }
      const double M = Bmax + Bi + Tij + maxDetour + maxGain;
      {
        auto row = base;
        row.push_back({yEv_[i][k], M});
        m.addConstr(Sense::LessEqual, -Bi - Tij + M, row, nm("soc_rec_hi", {i, j}));
      }
      {
        auto row = base;
        row.push_back({yEv_[i][k], -M});
        m.addConstr(Sense::GreaterEqual, -Bi - Tij - M, row, nm("soc_rec_lo", {i, j}));
      }
      // elapsed time increases along served arcs
      const double Mt = T + p.maxGap;
      const double dAlpha = net.trips()[j].startTime - net.trips()[i].startTime;
      m.addConstr(Sense::GreaterEqual, dAlpha - Mt,
                  {{tEtaVar_[j], 1.0},
                   {tEtaVar_[i], -1.0},
                   {yEv_[i][k], -Mt},
                   {yDb_[i][k], -Mt}},
                  nm("time_rec", {i, j}));
    }
  }

  // --- visit/arc logic ------------------------------------------------------
  for (int i = 0; i < n; ++i) {
    const auto& succ = compat_->successors(i);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      const int j = succ[k];
      std::vector<std::pair<int, double>> row{{yEv_[i][k], -1.0}};
      auto arcIt = byArc.find({i, j});
      if (arcIt != byArc.end())
        for (const VisitVars* vv : arcIt->second) row.push_back({vv->q, 1.0});
      m.addConstr(Sense::LessEqual, 0, row, nm("q_le_y", {i, j}));
      if (!compat_->isDirect(i, j)) {
        // long layover: a BEB must fit a station visit in
        for (auto& e : row) e.second = -e.second;
        m.addConstr(Sense::LessEqual, 0, row, nm("q_ge_y", {i, j}));
      }
    }
    const auto& gsucc = compat_->stationSuccessors(i, gar);
    for (std::size_t k = 0; k < gsucc.size(); ++k) {
      const int j = gsucc[k];
      const auto& s2 = compat_->successors(i);
      const int slot =
          static_cast<int>(std::find(s2.begin(), s2.end(), j) - s2.begin());
      m.addConstr(Sense::LessEqual, 0,
                  {{garageVisitQ_[i][k], 1.0}, {yDb_[i][slot], -1.0}},
                  nm("qk_le_y", {i, j}));
      if (!compat_->isDirect(i, j))
        m.addConstr(Sense::GreaterEqual, 0,
                    {{garageVisitQ_[i][k], 1.0}, {yDb_[i][slot], -1.0}},
                    nm("qk_ge_y", {i, j}));
    }
    // a DB on a long layover with no garage window cannot serve the pair
    for (std::size_t k = 0; k < succ.size(); ++k) {
      const int j = succ[k];
      if (compat_->isDirect(i, j)) continue;
      if (std::find(gsucc.begin(), gsucc.end(), j) == gsucc.end())
        m.addConstr(Sense::Equal, 0, {{yDb_[i][k], 1.0}}, nm("yk_block", {i, j}));
    }
  }
}

ExactModel buildExact(const CompatibilityIndex& compat, const CostParams& costs) {
  return ExactModel(compat, costs);
}

Solution ExactModel::extract(const SolveResult& result) const {
  const Network& net = compat_->network();
  const OpParams& p = compat_->params();
  const int n = net.numTrips();
  auto on = [&](int var) { return var >= 0 && result.values[var] > 0.5; };

  Solution sol;
  sol.objective = result.objective;
  sol.bound = result.bestBound;
  sol.wallTime = result.wallTime;
  sol.hasTimeSharePenalty = p.timeShare > 0;
  if (!result.feasible()) return sol;
  sol.fleetShortfall = vVar_ >= 0 ? result.values[vVar_] : 0;
  sol.timeShareShortfall = vPrimeVar_ >= 0 ? result.values[vPrimeVar_] : 0;

  // visit lookup per arc
  std::map<std::pair<int, int>, const VisitVars*> activeVisit;
  for (const VisitVars& vv : visits_)
    if (on(vv.q)) activeVisit[{vv.i, vv.j}] = &vv;
  std::map<std::pair<int, int>, bool> garageVisit;
  for (int i = 0; i < n; ++i) {
    const auto& gsucc = compat_->stationSuccessors(i, net.garage());
    for (std::size_t k = 0; k < gsucc.size(); ++k)
      if (on(garageVisitQ_[i][k])) garageVisit[{i, gsucc[k]}] = true;
  }

  auto nextOf = [&](int i, bool beb) -> int {
    const auto& succ = compat_->successors(i);
    const auto& ys = beb ? yEv_[i] : yDb_[i];
    for (std::size_t k = 0; k < succ.size(); ++k)
      if (on(ys[k])) return succ[k];
    return -1;
  };

  for (int first = 0; first < n; ++first) {
    const bool beb = on(yEvFromGarage_[first]);
    if (!beb && !on(yDbFromGarage_[first])) continue;
    VehicleRun run;
    run.type = beb ? VehicleType::Electric : VehicleType::Diesel;
    int i = first;
    while (i >= 0) {
      run.trips.push_back(i);
      if (beb) run.socAtTripStart.push_back(result.values[bVar_[i]]);
      const int j = nextOf(i, beb);
      if (j >= 0) {
        const int after = static_cast<int>(run.trips.size()) - 1;
        if (beb) {
          auto it = activeVisit.find({i, j});
          if (it != activeVisit.end()) {
            const VisitVars* vv = it->second;
            run.visits.push_back({after, vv->c, result.values[vv->s],
                                  result.values[vv->u]});
          }
        } else if (garageVisit.count({i, j})) {
          run.visits.push_back(
              {after, net.garage(),
               net.trips()[i].endTime + net.tripToStation(i, net.garage()), 0.0});
        }
      }
      i = j;
    }
    sol.runs.push_back(std::move(run));
  }

  // cost breakdown recomputed from the extracted schedule
  CostBreakdown bd;
  for (const auto& run : sol.runs) {
    const bool beb = run.type == VehicleType::Electric;
    const double F = costs_.operatingPerMin(beb);
    bd.vehicle += costs_.vehiclePerDay(beb);
    double dh = net.garageToTrip(run.trips.front()) + net.tripToGarage(run.trips.back());
    for (std::size_t k = 0; k < run.trips.size(); ++k) {
      bd.revenue += F * net.trips()[run.trips[k]].revenueMinutes();
      if (k + 1 < run.trips.size())
        dh += net.tripToTrip(run.trips[k], run.trips[k + 1]);
    }
    bd.deadhead += F * dh;
    for (const auto& v : run.visits) {
      const int i = run.trips[v.afterIndex];
      const int j = run.trips[v.afterIndex + 1];
      bd.detour += F * (-net.tripToTrip(i, j) + net.tripToStation(i, v.station) +
                        net.stationToTrip(v.station, j));
    }
  }
  bd.penalty = p.penalty * (sol.fleetShortfall + sol.timeShareShortfall);
  sol.breakdown = bd;
  return sol;
}

Solution solveExact(ExactModel& model, double timeLimitSeconds) {
  SolveResult res = solveMILP(model.model(), timeLimitSeconds);
  if (res.status == SolveStatus::Infeasible)
    throw std::runtime_error("exact model infeasible");
  return model.extract(res);
}

std::vector<DwellEntry> classifyDwell(const Solution& sol,
                                      const CompatibilityIndex& compat) {
  const Network& net = compat.network();
  const double dT = compat.params().timeStep;

  // joint occupancy per (station, step) over all runs
  std::map<std::pair<int, int>, int> occ;
  for (const auto& run : sol.runs) {
    if (run.type != VehicleType::Electric) continue;
    for (const auto& v : run.visits)
      for (int t : occupiedSteps(compat, run.trips[v.afterIndex],
                                 run.trips[v.afterIndex + 1], v.station,
                                 v.chargeStart, v.chargeDuration))
        ++occ[{v.station, t}];
  }

  std::vector<DwellEntry> out;
  for (std::size_t r = 0; r < sol.runs.size(); ++r) {
    const auto& run = sol.runs[r];
    for (const auto& v : run.visits) {
      const int i = run.trips[v.afterIndex];
      const int j = run.trips[v.afterIndex + 1];
      DwellEntry e;
      e.run = static_cast<int>(r);
      e.afterIndex = v.afterIndex;
      e.station = v.station;
      const double arrival = net.trips()[i].endTime + net.tripToStation(i, v.station);
      const double depart = net.trips()[j].startTime - net.stationToTrip(v.station, j);
      e.charging = v.chargeDuration;
      e.postLayover = depart - (v.chargeStart + v.chargeDuration);
      const int plugs = net.stations()[v.station].plugs;
      // pre-charging dwell split into waiting (full station) and layover
      double waiting = 0;
      if (v.chargeStart > arrival) {
        const int tFirst = static_cast<int>(std::floor(arrival / dT));
        const int tLast = static_cast<int>(std::floor((v.chargeStart - 1e-9) / dT));
        for (int t = tFirst; t <= tLast; ++t) {
          const double a = std::max(arrival, t * dT);
          const double b = std::min(v.chargeStart, (t + 1) * dT);
          if (b <= a) continue;
          auto it = occ.find({v.station, t});
          if (it != occ.end() && it->second >= plugs) waiting += b - a;
        }
      }
      e.waiting = waiting;
      e.preLayover = (v.chargeStart - arrival) - waiting;
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace efleet
