#include <cmath>
#include <stdexcept>

#include "efleet/harness.hpp"

namespace efleet {

namespace {

// Maintenance $/mi calibrated so the baseline prices reproduce 40/52 $/hr.
constexpr double kBebMaintPerMi = 2.0730;
constexpr double kDbMaintPerMi = 1.8318;

constexpr double kCapacityFactor[] = {1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6};
constexpr double kPowerFactor[] = {1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0};
constexpr double kPriceFactor[] = {0, 0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0};
constexpr std::pair<double, double> kRangeWindow[] = {
    {0.1, 0.9}, {0.2, 0.9}, {0.3, 0.9}, {0.1, 0.8}, {0.2, 0.8},
    {0.3, 0.8}, {0.1, 0.7}, {0.2, 0.7}, {0.3, 0.7}};
constexpr std::pair<double, double> kVehicleFactor[] = {
    {0.9, 0.99}, {0.85, 0.975}, {0.8, 0.95}, {0.75, 0.925},
    {0.7, 0.9},  {0.65, 0.85},  {0.6, 0.8},  {0.5, 0.77}};

void recomputeSoc(ScenarioInputs& s) {
  const EconInputs& e = s.econ;
  s.params.socMax =
      socToMinutes(e.batteryKwh, e.socHigh, e.consumptionKwhPerMi, e.avgSpeedMph);
  s.params.socMin =
      socToMinutes(e.batteryKwh, e.socLow, e.consumptionKwhPerMi, e.avgSpeedMph);
  s.params.socInitial = socToMinutes(e.batteryKwh, e.socInitial,
                                     e.consumptionKwhPerMi, e.avgSpeedMph);
}

void recomputeOperating(EconInputs& e) {
  const double dieselPerHr = e.dieselPerGal / e.fuelEconomyMpg * e.avgSpeedMph;
  const double electricPerHr =
      e.electricityPerKwh * e.consumptionKwhPerMi * e.avgSpeedMph;
  e.dbOperatingPerHr = operatingCostPerHr(dieselPerHr, kDbMaintPerMi, e.avgSpeedMph, e);
  e.bebOperatingPerHr =
      operatingCostPerHr(electricPerHr, kBebMaintPerMi, e.avgSpeedMph, e);
}

}  // namespace

const char* leverFamilyName(LeverFamily f) {
  switch (f) {
    case LeverFamily::BatteryCapacity: return "batteryCapacity";
    case LeverFamily::BatteryRange: return "batteryRange";
    case LeverFamily::ChargerLayout: return "chargerLayout";
    case LeverFamily::ChargerPower: return "chargerPower";
    case LeverFamily::DieselCost: return "dieselCost";
    case LeverFamily::DieselCostNoShare: return "dieselCostNoShare";
    case LeverFamily::ElectricityCost: return "electricityCost";
    case LeverFamily::VehicleCost: return "vehicleCost";
  }
  return "?";
}

int leverCount(LeverFamily f) {
  switch (f) {
    case LeverFamily::BatteryCapacity: return 9;
    case LeverFamily::BatteryRange: return 10;
    case LeverFamily::ChargerLayout: return 8;
    case LeverFamily::ChargerPower: return 9;
    case LeverFamily::DieselCost: return 9;
    case LeverFamily::DieselCostNoShare: return 9;
    case LeverFamily::ElectricityCost: return 9;
    case LeverFamily::VehicleCost: return 9;
  }
  return 0;
}

ScenarioInputs applyScenario(const Scenario& scenario, const EconInputs& baseEcon,
                             const OpParams& baseParams,
                             const std::vector<Station>& baseStations,
                             int garageIndex) {
  ScenarioInputs out{baseEcon, baseParams, baseStations, garageIndex};
  out.params.fleetShare = scenario.fleetShare;
  if (!scenario.lever) return out;
  const LeverFamily fam = *scenario.lever;
  const int idx = scenario.leverIndex;
  if (idx < 0 || idx >= leverCount(fam))
    throw std::invalid_argument("lever index out of range for " +
                                std::string(leverFamilyName(fam)));
  if (fam == LeverFamily::DieselCostNoShare) out.params.fleetShare = 0;
  if (idx == 0) return out;  // lever 0 is always the unchanged baseline

  const double fast = chargeRate(baseEcon.fastChargerKw, baseEcon.consumptionKwhPerMi,
                                 baseEcon.avgSpeedMph);
  const double slow = chargeRate(baseEcon.slowChargerKw, baseEcon.consumptionKwhPerMi,
                                 baseEcon.avgSpeedMph);

  switch (fam) {
    case LeverFamily::BatteryCapacity:
      out.econ.batteryKwh *= kCapacityFactor[idx - 1];
      recomputeSoc(out);
      break;
    case LeverFamily::BatteryRange: {
      const auto [lo, hi] = kRangeWindow[idx - 1];
      out.econ.socLow = lo;
      out.econ.socHigh = hi;
      out.econ.socInitial = std::min(out.econ.socInitial, hi);
      recomputeSoc(out);
      break;
    }
    case LeverFamily::ChargerLayout:
      switch (idx) {
        case 1:
        case 2:
        case 3: {
          const double keep = 1.0 - 0.25 * idx;
          for (Station& s : out.stations)
            s.plugs = static_cast<int>(std::ceil(s.plugs * keep));
          break;
        }
        case 4:
          for (Station& s : out.stations) s.rate = slow;
          break;
        case 5:
          for (Station& s : out.stations) s.rate = s.isGarage ? slow : fast;
          break;
        case 6:
        case 7: {
          std::vector<Station> kept;
          for (std::size_t k = 0; k < out.stations.size(); ++k)
            if (out.stations[k].isGarage || static_cast<int>(k) == garageIndex)
              kept.push_back(out.stations[k]);
          for (Station& s : kept) s.rate = idx == 6 ? fast : slow;
          out.stations = std::move(kept);
          out.garageIndex = 0;
          break;
        }
        default: break;
      }
      break;
    case LeverFamily::ChargerPower: {
      out.econ.fastChargerKw *= kPowerFactor[idx - 1];
      const double boosted = chargeRate(out.econ.fastChargerKw,
                                        out.econ.consumptionKwhPerMi,
                                        out.econ.avgSpeedMph);
      for (Station& s : out.stations) s.rate = boosted;  // baseline is all-fast
      break;
    }
    case LeverFamily::DieselCost:
    case LeverFamily::DieselCostNoShare:
      out.econ.dieselPerGal *= kPriceFactor[idx - 1];
      if (out.econ.dieselPerGal == 0) out.econ.dieselPerGal = 1e-12;
      recomputeOperating(out.econ);
      break;
    case LeverFamily::ElectricityCost:
      out.econ.electricityPerKwh *= kPriceFactor[idx - 1];
      if (out.econ.electricityPerKwh == 0) out.econ.electricityPerKwh = 1e-12;
      recomputeOperating(out.econ);
      break;
    case LeverFamily::VehicleCost:
      out.econ.bebPurchase *= kVehicleFactor[idx - 1].first;
      out.econ.dbPurchase *= kVehicleFactor[idx - 1].second;
      break;
  }
  return out;
}

}  // namespace efleet
