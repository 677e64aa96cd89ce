#pragma once

#include <filesystem>
#include <string>

namespace efleet {

// Raw economic and technology inputs (purchase prices, rates, consumption).
struct EconInputs {
  double bebPurchase = 1'000'000;  // $
  double dbPurchase = 650'000;     // $
  double lifetimeYears = 14;
  double inflation = 0.043;        // fraction/yr
  double maintGrowth = 0.0676;     // fraction/yr
  int daysPerYear = 250;
  double dieselPerGal = 3.7;       // $
  double fuelEconomyMpg = 3.59;
  double electricityPerKwh = 0.08; // $
  double consumptionKwhPerMi = 2.8;
  double avgSpeedMph = 20;
  double batteryKwh = 440;
  double socLow = 0.20;
  double socHigh = 0.80;
  double socInitial = 0.72;
  double fastChargerKw = 450;
  double slowChargerKw = 125;
  // Hourly operating costs; defaults reproduce the baseline 40/52 $/hr.
  double bebOperatingPerHr = 40;
  double dbOperatingPerHr = 52;

  void check() const;
};

// Model-facing cost parameters.
struct CostParams {
  double bebVehiclePerDay = 386;  // V^epsilon, $/day
  double dbVehiclePerDay = 251;   // V^kappa, $/day
  double bebOperatingPerHr = 40;  // F^epsilon, $/hr
  double dbOperatingPerHr = 52;   // F^kappa, $/hr

  double vehiclePerDay(bool beb) const { return beb ? bebVehiclePerDay : dbVehiclePerDay; }
  double operatingPerMin(bool beb) const {
    return (beb ? bebOperatingPerHr : dbOperatingPerHr) / 60.0;
  }
};

double crf(double r, double n);
double pva(double r, double n);
double dailyVehicleCost(double price, double r, double n, double daysPerYear);

// min-of-range gained per min of charging.
double chargeRate(double powerKw, double consumptionKwhPerMi, double speedMph);

// Battery fraction converted to minutes of operational range.
double socToMinutes(double batteryKwh, double fraction, double consumptionKwhPerMi,
                    double speedMph);

// Energy cost $/hr plus maintenance $/mi, with the maintenance component
// escalated at its own growth rate relative to general inflation.
double operatingCostPerHr(double energyPerHr, double maintPerMi, double speedMph,
                          const EconInputs& econ);

CostParams buildCostParams(const EconInputs& econ);

EconInputs loadEconInputs(const std::filesystem::path& file);
EconInputs parseEconInputs(const std::string& jsonText);

}  // namespace efleet
