#include "efleet/validator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "efleet/column.hpp"
#include "efleet/mp.hpp"

namespace efleet {

namespace {
constexpr double kTimeTol = 1e-3;   // minutes / min-of-range
constexpr double kMoneyTol = 1e-4;  // dollars
}  // namespace

const char* violationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Coverage: return "Coverage";
    case ViolationKind::Compatibility: return "Compatibility";
    case ViolationKind::LayoverRule: return "LayoverRule";
    case ViolationKind::SoCFloor: return "SoCFloor";
    case ViolationKind::SoCCeiling: return "SoCCeiling";
    case ViolationKind::ChargeWindow: return "ChargeWindow";
    case ViolationKind::PlugCapacity: return "PlugCapacity";
    case ViolationKind::HorizonOverrun: return "HorizonOverrun";
    case ViolationKind::OvernightRecharge: return "OvernightRecharge";
    case ViolationKind::CostMismatch: return "CostMismatch";
  }
  return "?";
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << violationKindName(kind) << " at " << location << " (magnitude "
     << magnitude << ")";
  return os.str();
}

std::vector<Violation> validate(const Solution& sol, const CompatibilityIndex& compat,
                                const CostParams& costs) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  std::vector<Violation> out;
  auto flag = [&](ViolationKind k, std::string loc, double mag) {
    out.push_back({k, std::move(loc), mag});
  };

  // coverage
  std::vector<int> covered(net.numTrips(), 0);
  for (const auto& run : sol.runs)
    for (int i : run.trips)
      if (i >= 0 && i < net.numTrips()) ++covered[i];
  for (int i = 0; i < net.numTrips(); ++i)
    if (covered[i] != 1)
      flag(ViolationKind::Coverage, "trip " + net.trips()[i].id,
           std::abs(covered[i] - 1));

  double totalCost = 0;
  double bebRevenue = 0, totalRevenue = 0;
  for (const auto& t : net.trips()) totalRevenue += t.revenueMinutes();

  for (std::size_t r = 0; r < sol.runs.size(); ++r) {
    const auto& run = sol.runs[r];
    const std::string rl = "run " + std::to_string(r);
    if (run.trips.empty()) {
      flag(ViolationKind::Coverage, rl + " (empty)", 1);
      continue;
    }
    const bool beb = run.type == VehicleType::Electric;
    const double F = costs.operatingPerMin(beb);
    double cost = costs.vehiclePerDay(beb);

    std::map<int, const StationVisit*> visitAfter;
    for (const auto& v : run.visits) {
      if (v.afterIndex < 0 || v.afterIndex + 1 >= static_cast<int>(run.trips.size())) {
        flag(ViolationKind::Compatibility, rl + " visit index", 1);
        continue;
      }
      if (v.station < 0 || v.station >= net.numStations()) {
        flag(ViolationKind::Compatibility, rl + " visit station", 1);
        continue;
      }
      if (!beb && v.station != net.garage())
        flag(ViolationKind::Compatibility, rl + " diesel at non-garage station", 1);
      visitAfter[v.afterIndex] = &v;
    }

    // chain compatibility + layover rule + windows
    for (std::size_t k = 0; k + 1 < run.trips.size(); ++k) {
      const int i = run.trips[k], j = run.trips[k + 1];
      const auto& ti = net.trips()[i];
      const auto& tj = net.trips()[j];
      const double gap = tj.startTime - ti.endTime;
      const double dh = net.tripToTrip(i, j);
      const std::string al = rl + " arc " + ti.id + "->" + tj.id;
      if (gap < dh - kTimeTol)
        flag(ViolationKind::Compatibility, al, dh - gap);
      if (gap > p.maxGap + kTimeTol)
        flag(ViolationKind::Compatibility, al, gap - p.maxGap);

      auto it = visitAfter.find(static_cast<int>(k));
      const double layover = gap - dh;
      if (it == visitAfter.end()) {
        if (layover > p.maxLayover + kTimeTol)
          flag(ViolationKind::LayoverRule, al, layover - p.maxLayover);
      } else {
        const StationVisit& v = *it->second;
        const int c = v.station;
        const double lo = ti.endTime + net.tripToStation(i, c);
        const double hi = tj.startTime - net.stationToTrip(c, j);
        if (hi - lo < p.minVisit - kTimeTol)
          flag(ViolationKind::ChargeWindow, al + " window", p.minVisit - (hi - lo));
        if (beb) {
          if (v.chargeStart < lo - kTimeTol)
            flag(ViolationKind::ChargeWindow, al + " start", lo - v.chargeStart);
          if (v.chargeDuration < -kTimeTol)
            flag(ViolationKind::ChargeWindow, al + " duration", -v.chargeDuration);
          if (v.chargeStart + v.chargeDuration > hi + kTimeTol)
            flag(ViolationKind::ChargeWindow, al + " end",
                 v.chargeStart + v.chargeDuration - hi);
        }
        cost += F * (-dh + net.tripToStation(i, c) + net.stationToTrip(c, j));
      }
      cost += F * dh;
    }

    // horizon with the loosest admissible run clock
    const auto& first = net.trips()[run.trips.front()];
    const auto& last = net.trips()[run.trips.back()];
    const double elapsedEnd = (last.startTime - first.startTime) + last.energy +
                              net.tripToGarage(run.trips.back());
    if (elapsedEnd > p.horizon + kTimeTol)
      flag(ViolationKind::HorizonOverrun, rl, elapsedEnd - p.horizon);

    // SoC replay from first principles
    if (beb) {
      double b = p.socInitial - net.garageToTrip(run.trips.front());
      for (std::size_t k = 0; k < run.trips.size(); ++k) {
        const int i = run.trips[k];
        const auto& ti = net.trips()[i];
        const std::string tl = rl + " trip " + ti.id;
        if (b < p.socMin - kTimeTol)
          flag(ViolationKind::SoCFloor, tl + " start", p.socMin - b);
        if (b > p.socMax + kTimeTol)
          flag(ViolationKind::SoCCeiling, tl + " start", b - p.socMax);
        if (k + 1 == run.trips.size()) {
          const double arr = b - ti.energy - net.tripToGarage(i);
          if (arr < p.socMin - kTimeTol)
            flag(ViolationKind::SoCFloor, tl + " pull-in", p.socMin - arr);
          const double replenish =
              arr + net.stations()[net.garage()].rate * (p.horizon - elapsedEnd);
          if (replenish < p.socInitial - kTimeTol)
            flag(ViolationKind::OvernightRecharge, rl, p.socInitial - replenish);
          break;
        }
        const int j = run.trips[k + 1];
        auto it = visitAfter.find(static_cast<int>(k));
        if (it == visitAfter.end()) {
          b = b - ti.energy - net.tripToTrip(i, j);
        } else {
          const StationVisit& v = *it->second;
          const double atStation = b - ti.energy - net.tripToStation(i, v.station);
          if (atStation < p.socMin - kTimeTol)
            flag(ViolationKind::SoCFloor, tl + " station arrival",
                 p.socMin - atStation);
          const double charged =
              atStation + net.stations()[v.station].rate * v.chargeDuration;
          if (charged > p.socMax + kTimeTol)
            flag(ViolationKind::SoCCeiling, tl + " post-charge", charged - p.socMax);
          b = charged - net.stationToTrip(v.station, j);
        }
      }
    }

    for (int i : run.trips) {
      cost += F * net.trips()[i].revenueMinutes();
      if (beb) bebRevenue += net.trips()[i].revenueMinutes();
    }
    cost += F * (net.garageToTrip(run.trips.front()) +
                 net.tripToGarage(run.trips.back()));
    totalCost += cost;
  }

  // joint plug occupancy recount
  std::map<std::pair<int, int>, int> occ;
  for (const auto& run : sol.runs) {
    if (run.type != VehicleType::Electric) continue;
    for (const auto& v : run.visits) {
      if (v.afterIndex < 0 || v.afterIndex + 1 >= static_cast<int>(run.trips.size()))
        continue;
      for (int t : occupiedSteps(compat, run.trips[v.afterIndex],
                                 run.trips[v.afterIndex + 1], v.station,
                                 v.chargeStart, v.chargeDuration))
        ++occ[{v.station, t}];
    }
  }
  for (const auto& [key, count] : occ)
    if (count > net.stations()[key.first].plugs)
      flag(ViolationKind::PlugCapacity,
           "station " + net.stations()[key.first].id + " step " +
               std::to_string(key.second),
           count - net.stations()[key.first].plugs);

  // shortfalls and total cost
  const int fleet = sol.fleetSize();
  const int bebCount = sol.countType(VehicleType::Electric);
  const double v = std::max(0.0, p.fleetShare * fleet - bebCount);
  const double vp = std::max(0.0, p.timeShare * totalRevenue - bebRevenue);
  totalCost += p.penalty * (v + (sol.hasTimeSharePenalty ? vp : 0.0));
  if (std::abs(totalCost - sol.objective) > kMoneyTol)
    flag(ViolationKind::CostMismatch, "objective",
         std::abs(totalCost - sol.objective));

  return out;
}

// ---------------------------------------------------------------------------
// brute force
// ---------------------------------------------------------------------------

namespace {

struct GapChoice {
  int station = -1;  // -1: direct connection
};

struct BlockEval {
  bool dbFeasible = false;
  double dbCost = 0;
  std::vector<GapChoice> dbChoices;  // garage visits forced on long layovers
  // all SoC-feasible (capacity-ignored) BEB visit-choice combos with costs
  std::vector<std::pair<std::vector<GapChoice>, double>> bebCombos;
};

struct VisitSlot {
  int i, j, c;
  double lo, hi, rate;
  StepRange steps;
};

// Max-fill SoC replay; returns feasibility ignoring plug capacity.
bool bebReplayFeasible(const std::vector<int>& block,
                       const std::vector<GapChoice>& choices,
                       const CompatibilityIndex& compat) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  double b = p.socInitial - net.garageToTrip(block.front());
  const double elapsedEnd = (net.trips()[block.back()].startTime -
                             net.trips()[block.front()].startTime) +
                            net.trips()[block.back()].energy +
                            net.tripToGarage(block.back());
  if (elapsedEnd > p.horizon + kTimeTol) return false;
  for (std::size_t k = 0; k < block.size(); ++k) {
    const int i = block[k];
    if (b < p.socMin - kTimeTol) return false;
    if (k + 1 == block.size()) {
      const double arr = b - net.trips()[i].energy - net.tripToGarage(i);
      if (arr < p.socMin - kTimeTol) return false;
      if (arr + net.stations()[net.garage()].rate * (p.horizon - elapsedEnd) <
          p.socInitial - kTimeTol)
        return false;
      return true;
    }
    const int j = block[k + 1];
    if (choices[k].station < 0) {
      b -= net.trips()[i].energy + net.tripToTrip(i, j);
    } else {
      const int c = choices[k].station;
      const double atStation = b - net.trips()[i].energy - net.tripToStation(i, c);
      if (atStation < p.socMin - kTimeTol) return false;
      const double lo = net.trips()[i].endTime + net.tripToStation(i, c);
      const double hi = net.trips()[j].startTime - net.stationToTrip(c, j);
      const double uMax =
          std::min(hi - lo, (p.socMax - atStation) / net.stations()[c].rate);
      b = atStation + net.stations()[c].rate * std::max(0.0, uMax) -
          net.stationToTrip(c, j);
    }
  }
  return true;
}

double chainCost(const std::vector<int>& block, const std::vector<GapChoice>& choices,
                 bool beb, const CompatibilityIndex& compat, const CostParams& costs) {
  const Network& net = compat.network();
  const double F = costs.operatingPerMin(beb);
  double minutes = net.garageToTrip(block.front()) + net.tripToGarage(block.back());
  for (std::size_t k = 0; k < block.size(); ++k) {
    minutes += net.trips()[block[k]].revenueMinutes();
    if (k + 1 < block.size()) {
      const int i = block[k], j = block[k + 1];
      minutes += net.tripToTrip(i, j);
      if (choices[k].station >= 0)
        minutes += -net.tripToTrip(i, j) + net.tripToStation(i, choices[k].station) +
                   net.stationToTrip(choices[k].station, j);
    }
  }
  return costs.vehiclePerDay(beb) + F * minutes;
}

// LP over (s, u) for a fixed set of BEB chains + visit choices. extraBox adds
// per-visit interval pins used by the occupancy-choice enumeration.
struct ChainVisits {
  const std::vector<int>* block;
  const std::vector<GapChoice>* choices;
  std::vector<int> slotIdx;  // per gap; -1 when direct
};

bool solveChargingLP(const std::vector<ChainVisits>& chains,
                     std::vector<VisitSlot>& slots, const CompatibilityIndex& compat,
                     const std::vector<std::pair<double, double>>* sBox,
                     const std::vector<std::pair<double, double>>* eBox,
                     std::vector<std::pair<double, double>>& placement) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  ModelHandle m;
  std::vector<int> sVar(slots.size()), uVar(slots.size());
  for (std::size_t g = 0; g < slots.size(); ++g) {
    double sLo = slots[g].lo, sHi = slots[g].hi;
    if (sBox) {
      sLo = std::max(sLo, (*sBox)[g].first);
      sHi = std::min(sHi, (*sBox)[g].second);
    }
    sVar[g] = m.addVar(sLo, sHi, 1e-3, VarType::Continuous, "s" + std::to_string(g));
    uVar[g] = m.addVar(0, slots[g].hi - slots[g].lo, 1.0, VarType::Continuous,
                       "u" + std::to_string(g));
    double eLo = 0, eHi = slots[g].hi;
    if (eBox) {
      eLo = (*eBox)[g].first;
      eHi = std::min(eHi, (*eBox)[g].second);
    }
    m.addConstr(Sense::LessEqual, eHi, {{sVar[g], 1.0}, {uVar[g], 1.0}},
                "end_hi" + std::to_string(g));
    if (eLo > 0)
      m.addConstr(Sense::GreaterEqual, eLo, {{sVar[g], 1.0}, {uVar[g], 1.0}},
                  "end_lo" + std::to_string(g));
  }

  int row = 0;
  for (const ChainVisits& cv : chains) {
    const auto& block = *cv.block;
    const auto& choices = *cv.choices;
    // b at trip-k start = const + sum of rate*u over earlier visits
    double base = p.socInitial - net.garageToTrip(block.front());
    std::vector<std::pair<int, double>> gains;
    auto addGe = [&](double lhsConst, double rhs) {
      // lhsConst + sum(gains) >= rhs
      if (gains.empty()) return;  // constants were checked by the replay
      m.addConstr(Sense::GreaterEqual, rhs - lhsConst, gains,
                  "soc_ge" + std::to_string(row++));
    };
    for (std::size_t k = 0; k < block.size(); ++k) {
      const int i = block[k];
      addGe(base, p.socMin);
      if (k + 1 == block.size()) {
        const double elapsedEnd =
            (net.trips()[block.back()].startTime - net.trips()[block.front()].startTime) +
            net.trips()[i].energy + net.tripToGarage(i);
        const double arrConst = base - net.trips()[i].energy - net.tripToGarage(i);
        addGe(arrConst, p.socMin);
        addGe(arrConst + net.stations()[net.garage()].rate * (p.horizon - elapsedEnd),
              p.socInitial);
        break;
      }
      const int j = block[k + 1];
      if (choices[k].station < 0) {
        base -= net.trips()[i].energy + net.tripToTrip(i, j);
        continue;
      }
      const int g = cv.slotIdx[k];
      const VisitSlot& sl = slots[g];
      const double atStationConst = base - net.trips()[i].energy -
                                    net.tripToStation(i, sl.c);
      addGe(atStationConst, p.socMin);
      // ceiling after charging: atStation + rate*u <= Bmax
      {
        auto row2 = gains;
        row2.push_back({uVar[g], sl.rate});
        m.addConstr(Sense::LessEqual, p.socMax - atStationConst, row2,
                    "soc_le" + std::to_string(row++));
      }
      gains.push_back({uVar[g], sl.rate});
      base = atStationConst - net.stationToTrip(sl.c, j);
    }
  }

  SolveResult res = solveLP(m);
  if (!res.feasible()) return false;
  placement.resize(slots.size());
  for (std::size_t g = 0; g < slots.size(); ++g)
    placement[g] = {res.values[sVar[g]], res.values[uVar[g]]};
  return true;
}

bool capacityOk(const std::vector<VisitSlot>& slots,
                const std::vector<std::pair<double, double>>& placement,
                const CompatibilityIndex& compat) {
  std::map<std::pair<int, int>, int> occ;
  const Network& net = compat.network();
  for (std::size_t g = 0; g < slots.size(); ++g)
    for (int t : occupiedSteps(compat, slots[g].i, slots[g].j, slots[g].c,
                               placement[g].first, placement[g].second))
      if (++occ[{slots[g].c, t}] > net.stations()[slots[g].c].plugs) return false;
  return true;
}

// Capacity-aware joint feasibility; fills placement on success.
bool chargingFeasible(const std::vector<ChainVisits>& chains,
                      std::vector<VisitSlot>& slots, const CompatibilityIndex& compat,
                      std::vector<std::pair<double, double>>& placement) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  if (slots.empty()) {
    placement.clear();
    return true;
  }
  if (!solveChargingLP(chains, slots, compat, nullptr, nullptr, placement))
    return false;
  if (capacityOk(slots, placement, compat)) return true;

  // enumerate per-visit occupancy intervals (grid step spans or none) and
  // re-solve the LP pinned to each joint choice
  struct Option {
    bool empty;
    int ts, te;
  };
  std::vector<std::vector<Option>> opts(slots.size());
  for (std::size_t g = 0; g < slots.size(); ++g) {
    const StepRange r = slots[g].steps;
    if (r.empty() || compat.stepStart(r.first) > slots[g].lo + kTimeTol)
      opts[g].push_back({true, 0, 0});
    for (int ts = r.first; ts <= r.last; ++ts)
      for (int te = ts; te <= r.last; ++te) opts[g].push_back({false, ts, te});
  }
  long long combos = 1;
  for (const auto& o : opts) {
    combos *= static_cast<long long>(o.size());
    if (combos > 200000) return false;  // enumerated oracle scope exceeded
  }
  const double dT = p.timeStep, eps = p.epsilon;
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    // capacity pre-check on the chosen step spans
    std::map<std::pair<int, int>, int> occ;
    bool ok = true;
    for (std::size_t g = 0; g < slots.size() && ok; ++g) {
      const Option& o = opts[g][pick[g]];
      if (o.empty) continue;
      for (int t = o.ts; t <= o.te && ok; ++t)
        if (++occ[{slots[g].c, t}] > net.stations()[slots[g].c].plugs) ok = false;
    }
    if (ok) {
      std::vector<std::pair<double, double>> sBox(slots.size()), eBox(slots.size());
      for (std::size_t g = 0; g < slots.size(); ++g) {
        const Option& o = opts[g][pick[g]];
        if (o.empty) {
          const StepRange r = slots[g].steps;
          const double cut =
              r.empty() ? slots[g].hi : compat.stepStart(r.first) - eps;
          sBox[g] = {slots[g].lo, slots[g].hi};
          eBox[g] = {0, cut};
        } else {
          const double dts = compat.stepStart(o.ts);
          const double dte = compat.stepStart(o.te);
          sBox[g] = {o.ts == slots[g].steps.first ? slots[g].lo : dts,
                     dts + dT - eps};
          eBox[g] = {dte, o.te == slots[g].steps.last ? slots[g].hi
                                                      : dte + dT - eps};
        }
      }
      if (solveChargingLP(chains, slots, compat, &sBox, &eBox, placement) &&
          capacityOk(slots, placement, compat))
        return true;
    }
    std::size_t g = 0;
    while (g < slots.size() && ++pick[g] == opts[g].size()) pick[g++] = 0;
    if (g == slots.size()) break;
  }
  return false;
}

}  // namespace

BruteForceResult bruteForce(const CompatibilityIndex& compat, const CostParams& costs,
                            int maxTrips) {
  const Network& net = compat.network();
  const OpParams& p = compat.params();
  const int n = net.numTrips();
  if (n > maxTrips)
    throw std::invalid_argument("bruteForce: instance exceeds maxTrips");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ta = net.trips()[a];
    const auto& tb = net.trips()[b];
    return std::tie(ta.startTime, ta.id) < std::tie(tb.startTime, tb.id);
  });

  std::vector<std::vector<bool>> succOk(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j : compat.successors(i)) succOk[i][j] = true;

  double totalRevenue = 0;
  for (const auto& t : net.trips()) totalRevenue += t.revenueMinutes();

  BruteForceResult best;
  best.objective = kInf;

  // evaluate one complete partition into chains
  auto evaluate = [&](const std::vector<std::vector<int>>& blocks) {
    const int K = static_cast<int>(blocks.size());
    std::vector<BlockEval> evals(K);
    for (int b = 0; b < K; ++b) {
      const auto& block = blocks[b];
      BlockEval& ev = evals[b];
      const int gaps = static_cast<int>(block.size()) - 1;

      // horizon applies to both vehicle types
      const double elapsedEnd = (net.trips()[block.back()].startTime -
                                 net.trips()[block.front()].startTime) +
                                net.trips()[block.back()].energy +
                                net.tripToGarage(block.back());
      const bool horizonOk = elapsedEnd <= p.horizon + kTimeTol;

      // diesel: forced garage visits on long layovers
      ev.dbFeasible = horizonOk;
      ev.dbChoices.assign(gaps, GapChoice{});
      for (int k = 0; k < gaps && ev.dbFeasible; ++k) {
        const int i = block[k], j = block[k + 1];
        if (compat.isDirect(i, j)) continue;
        if (compat.isStationFeasible(i, net.garage(), j))
          ev.dbChoices[k].station = net.garage();
        else
          ev.dbFeasible = false;
      }
      if (ev.dbFeasible) ev.dbCost = chainCost(block, ev.dbChoices, false, compat, costs);

      // electric: enumerate visit choices per gap
      if (!horizonOk) continue;
      std::vector<std::vector<GapChoice>> gapOpts(gaps);
      bool any = true;
      for (int k = 0; k < gaps; ++k) {
        const int i = block[k], j = block[k + 1];
        if (compat.isDirect(i, j)) gapOpts[k].push_back(GapChoice{});
        for (int c : compat.reachableStations(i))
          if (compat.isStationFeasible(i, c, j)) gapOpts[k].push_back({c});
        if (gapOpts[k].empty()) any = false;
      }
      if (!any) continue;
      std::vector<std::size_t> pick(gaps, 0);
      while (true) {
        std::vector<GapChoice> choices(gaps);
        for (int k = 0; k < gaps; ++k) choices[k] = gapOpts[k][pick[k]];
        if (bebReplayFeasible(block, choices, compat))
          ev.bebCombos.push_back(
              {choices, chainCost(block, choices, true, compat, costs)});
        int k = 0;
        while (k < gaps && ++pick[k] == gapOpts[k].size()) pick[k++] = 0;
        if (k == gaps || gaps == 0) break;
      }
    }

    // vehicle-type assignment over blocks
    for (int mask = 0; mask < (1 << K); ++mask) {
      double cost = 0;
      int bebCount = 0;
      double bebRevenue = 0;
      bool ok = true;
      for (int b = 0; b < K && ok; ++b) {
        if (mask & (1 << b)) {
          if (evals[b].bebCombos.empty()) ok = false;
          ++bebCount;
          for (int i : blocks[b]) bebRevenue += net.trips()[i].revenueMinutes();
        } else {
          if (!evals[b].dbFeasible) ok = false;
          else cost += evals[b].dbCost;
        }
      }
      if (!ok) continue;
      const double v = std::max(0.0, p.fleetShare * K - bebCount);
      const double vp = std::max(0.0, p.timeShare * totalRevenue - bebRevenue);
      cost += p.penalty * (v + vp);
      if (cost >= best.objective - kMoneyTol / 10) {
        // even the cheapest BEB combos cannot beat the incumbent
        double lb = cost;
        for (int b = 0; b < K; ++b)
          if (mask & (1 << b)) {
            double c = kInf;
            for (const auto& [ch, cc] : evals[b].bebCombos) c = std::min(c, cc);
            lb += c;
          }
        if (lb >= best.objective) continue;
      }

      // enumerate BEB combo selections jointly (capacity couples them)
      std::vector<int> bebBlocks;
      for (int b = 0; b < K; ++b)
        if (mask & (1 << b)) bebBlocks.push_back(b);
      std::vector<std::size_t> sel(bebBlocks.size(), 0);
      while (true) {
        double total = cost;
        for (std::size_t q = 0; q < bebBlocks.size(); ++q)
          total += evals[bebBlocks[q]].bebCombos[sel[q]].second;
        if (total < best.objective - kMoneyTol / 10) {
          // build joint visit slots and test capacity-aware feasibility
          std::vector<VisitSlot> slots;
          std::vector<ChainVisits> chains;
          for (std::size_t q = 0; q < bebBlocks.size(); ++q) {
            const auto& block = blocks[bebBlocks[q]];
            const auto& choices = evals[bebBlocks[q]].bebCombos[sel[q]].first;
            ChainVisits cv;
            cv.block = &block;
            cv.choices = &choices;
            cv.slotIdx.assign(choices.size(), -1);
            for (std::size_t k = 0; k < choices.size(); ++k) {
              if (choices[k].station < 0) continue;
              const int i = block[k], j = block[k + 1], c = choices[k].station;
              VisitSlot sl;
              sl.i = i;
              sl.j = j;
              sl.c = c;
              sl.lo = net.trips()[i].endTime + net.tripToStation(i, c);
              sl.hi = net.trips()[j].startTime - net.stationToTrip(c, j);
              sl.rate = net.stations()[c].rate;
              sl.steps = compat.chargeSteps(i, j, c);
              cv.slotIdx[k] = static_cast<int>(slots.size());
              slots.push_back(sl);
            }
            chains.push_back(cv);
          }
          // quick accept: per-station visit counts within plug counts
          std::map<int, int> perStation;
          bool trivially = true;
          for (const auto& sl : slots)
            if (++perStation[sl.c] > net.stations()[sl.c].plugs) trivially = false;

          std::vector<std::pair<double, double>> placement;
          bool feasible;
          if (trivially) {
            feasible = true;
            placement.resize(slots.size());
            // max-fill placement replayed per chain
            for (const ChainVisits& cv : chains) {
              double bsoc = p.socInitial - net.garageToTrip(cv.block->front());
              for (std::size_t k = 0; k + 1 < cv.block->size(); ++k) {
                const int i = (*cv.block)[k], j = (*cv.block)[k + 1];
                if ((*cv.choices)[k].station < 0) {
                  bsoc -= net.trips()[i].energy + net.tripToTrip(i, j);
                  continue;
                }
                const int g = cv.slotIdx[k];
                const VisitSlot& sl = slots[g];
                const double atStation =
                    bsoc - net.trips()[i].energy - net.tripToStation(i, sl.c);
                const double uMax = std::max(
                    0.0, std::min(sl.hi - sl.lo, (p.socMax - atStation) / sl.rate));
                placement[g] = {sl.lo, uMax};
                bsoc = atStation + sl.rate * uMax - net.stationToTrip(sl.c, j);
              }
            }
          } else {
            feasible = chargingFeasible(chains, slots, compat, placement);
          }

          if (feasible) {
            best.objective = total;
            Solution sol;
            sol.objective = total;
            sol.bound = total;
            sol.fleetShortfall = v;
            sol.timeShareShortfall = vp;
            sol.hasTimeSharePenalty = true;
            for (int b = 0; b < K; ++b) {
              VehicleRun run;
              run.trips = blocks[b];
              if (mask & (1 << b)) {
                run.type = VehicleType::Electric;
                // locate this block's chain record
                for (std::size_t q = 0; q < bebBlocks.size(); ++q) {
                  if (bebBlocks[q] != b) continue;
                  const ChainVisits& cv = chains[q];
                  double bsoc = p.socInitial - net.garageToTrip(run.trips.front());
                  for (std::size_t k = 0; k < run.trips.size(); ++k) {
                    run.socAtTripStart.push_back(bsoc);
                    if (k + 1 == run.trips.size()) break;
                    const int i = run.trips[k], j = run.trips[k + 1];
                    if (cv.slotIdx[k] < 0) {
                      bsoc -= net.trips()[i].energy + net.tripToTrip(i, j);
                    } else {
                      const int g = cv.slotIdx[k];
                      run.visits.push_back({static_cast<int>(k), slots[g].c,
                                            placement[g].first,
                                            placement[g].second});
                      bsoc = bsoc - net.trips()[i].energy -
                             net.tripToStation(i, slots[g].c) +
                             slots[g].rate * placement[g].second -
                             net.stationToTrip(slots[g].c, j);
                    }
                  }
                }
              } else {
                run.type = VehicleType::Diesel;
                const auto& ch = evals[b].dbChoices;
                for (std::size_t k = 0; k < ch.size(); ++k)
                  if (ch[k].station >= 0)
                    run.visits.push_back(
                        {static_cast<int>(k), ch[k].station,
                         net.trips()[run.trips[k]].endTime +
                             net.tripToStation(run.trips[k], ch[k].station),
                         0.0});
              }
              sol.runs.push_back(std::move(run));
            }
            best.solution = std::move(sol);
          }
        }
        std::size_t q = 0;
        while (q < sel.size() && ++sel[q] == evals[bebBlocks[q]].bebCombos.size())
          sel[q++] = 0;
        if (q == sel.size()) break;
      }
    }
  };

  // enumerate ordered partitions into compatible chains (trips in time order)
  std::vector<std::vector<int>> blocks;
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == n) {
      evaluate(blocks);
      return;
    }
    const int trip = order[idx];
    for (std::size_t bi = 0, nb = blocks.size(); bi < nb; ++bi) {
      if (!succOk[blocks[bi].back()][trip]) continue;
      blocks[bi].push_back(trip);
      self(self, idx + 1);
      blocks[bi].pop_back();
    }
    blocks.push_back({trip});
    self(self, idx + 1);
    blocks.pop_back();
  };
  if (n == 0) {
    best.objective = 0;
    best.solution.objective = 0;
    best.solution.hasTimeSharePenalty = true;
    return best;
  }
  rec(rec, 0);
  return best;
}

}  // namespace efleet
