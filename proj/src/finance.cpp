#include "efleet/finance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace efleet {

using nlohmann::json;

void EconInputs::check() const {
  auto pos = [](double v, const char* what) {
    if (v <= 0) throw std::invalid_argument(std::string(what) + " must be positive");
  };
  pos(bebPurchase, "bebPurchase");
  pos(dbPurchase, "dbPurchase");
  pos(lifetimeYears, "lifetimeYears");
  pos(inflation, "inflation");
  pos(maintGrowth, "maintGrowth");
  pos(daysPerYear, "daysPerYear");
  pos(dieselPerGal, "dieselPerGal");
  pos(fuelEconomyMpg, "fuelEconomyMpg");
  pos(electricityPerKwh, "electricityPerKwh");
  pos(consumptionKwhPerMi, "consumptionKwhPerMi");
  pos(avgSpeedMph, "avgSpeedMph");
  pos(batteryKwh, "batteryKwh");
  pos(fastChargerKw, "fastChargerKw");
  pos(slowChargerKw, "slowChargerKw");
  if (!(socLow < socInitial && socInitial <= socHigh && socHigh <= 1.0))
    throw std::invalid_argument("need socLow < socInitial <= socHigh <= 1");
}

double crf(double r, double n) {
  if (r <= 0) throw std::invalid_argument("crf: rate must be positive");
  if (n < 1) throw std::invalid_argument("crf: lifetime must be at least one year");
  const double growth = std::pow(1.0 + r, n);
  return r * growth / (growth - 1.0);
}

double pva(double r, double n) {
  if (r <= 0) throw std::invalid_argument("pva: rate must be positive");
  if (n < 1) throw std::invalid_argument("pva: lifetime must be at least one year");
  return (1.0 - std::pow(1.0 + r, -n)) / r;
}

double dailyVehicleCost(double price, double r, double n, double daysPerYear) {
  if (daysPerYear <= 0)
    throw std::invalid_argument("dailyVehicleCost: daysPerYear must be positive");
  return price * crf(r, n) / daysPerYear;
}

double chargeRate(double powerKw, double consumptionKwhPerMi, double speedMph) {
  return powerKw / (consumptionKwhPerMi * speedMph);
}

double socToMinutes(double batteryKwh, double fraction, double consumptionKwhPerMi,
                    double speedMph) {
  return 60.0 * batteryKwh * fraction / (consumptionKwhPerMi * speedMph);
}

double operatingCostPerHr(double energyPerHr, double maintPerMi, double speedMph,
                          const EconInputs& econ) {
  const double escalation =
      pva(econ.maintGrowth, econ.lifetimeYears) / pva(econ.inflation, econ.lifetimeYears);
  return energyPerHr + maintPerMi * speedMph * escalation;
}

CostParams buildCostParams(const EconInputs& econ) {
  econ.check();
  CostParams cp;
  cp.bebVehiclePerDay = dailyVehicleCost(econ.bebPurchase, econ.inflation,
                                         econ.lifetimeYears, econ.daysPerYear);
  cp.dbVehiclePerDay = dailyVehicleCost(econ.dbPurchase, econ.inflation,
                                        econ.lifetimeYears, econ.daysPerYear);
  cp.bebOperatingPerHr = econ.bebOperatingPerHr;
  cp.dbOperatingPerHr = econ.dbOperatingPerHr;
  return cp;
}

EconInputs parseEconInputs(const std::string& jsonText) {
  json doc = json::parse(jsonText);
  EconInputs e;
  auto get = [&doc](const char* key, double& field) {
    if (doc.contains(key)) field = doc.at(key).get<double>();
  };
  get("bebPurchase", e.bebPurchase);
  get("dbPurchase", e.dbPurchase);
  get("lifetimeYears", e.lifetimeYears);
  get("inflation", e.inflation);
  get("maintGrowth", e.maintGrowth);
  if (doc.contains("daysPerYear")) e.daysPerYear = doc.at("daysPerYear").get<int>();
  get("dieselPerGal", e.dieselPerGal);
  get("fuelEconomyMpg", e.fuelEconomyMpg);
  get("electricityPerKwh", e.electricityPerKwh);
  get("consumptionKwhPerMi", e.consumptionKwhPerMi);
  get("avgSpeedMph", e.avgSpeedMph);
  get("batteryKwh", e.batteryKwh);
  get("socLow", e.socLow);
  get("socHigh", e.socHigh);
  get("socInitial", e.socInitial);
  get("fastChargerKw", e.fastChargerKw);
  get("slowChargerKw", e.slowChargerKw);
  get("bebOperatingPerHr", e.bebOperatingPerHr);
  get("dbOperatingPerHr", e.dbOperatingPerHr);
  e.check();
  return e;
}

EconInputs loadEconInputs(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open economics file: " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseEconInputs(ss.str());
}

}  // namespace efleet
