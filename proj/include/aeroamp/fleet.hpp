#pragma once

#include <string>
#include <vector>

#include "aeroamp/errors.hpp"

namespace aeroamp::fleet {

enum class Fuel { diesel, electricity, none };

Fuel fuel_from_name(const std::string& name);
const char* fuel_name(Fuel f);

struct VehicleProfile {
    std::string name;
    Fuel fuel = Fuel::none;
    double nominal_energy = 0.0;      // MJ/km delivered to the wheels/rotor
    double stops_per_km = 0.0;        // S_freq
    double packages_per_stop = 1.0;   // P_freq
    double battery_ghg_base = 0.0;    // g CO2e/km
    double battery_ghg_low = 0.0;
    double battery_ghg_high = 0.0;
    double driving_style_spread = 0.40;     // fraction of nominal energy
    double delivery_density_spread = 0.0;   // fraction of S*P
    double payload_capacity = 0.0;          // kg
    std::string source;  // provenance note, carried through outputs
};

struct EmissionFactors {
    double grid_ghg_base = 182.0;  // g CO2e/MJ, 2019 US average
    double grid_ghg_low = 107.0;   // New England
    double grid_ghg_high = 249.0;  // central Mid-West non-baseload
    double diesel_combustion_ghg = 69.35;  // g/MJ
    // Derived from the reference table's diesel rows (it implies 15.34 g/MJ;
    // the commonly quoted upstream figure of 15 g/MJ is selectable in
    // factors.json).
    double upstream_diesel = 15.34;       // g/MJ
    double upstream_electricity = 22.0;   // g/MJ
    double charging_efficiency = 0.88;
    double transmission_loss = 0.05;      // fraction; see data/factors.json notes
};

enum class Scenario { base, low, high };
Scenario scenario_from_name(const std::string& name);
const char* scenario_name(Scenario s);

struct ComparisonRow {
    std::string name;
    double energy_mj_per_km = 0.0;  // grid-side for electric modes
    double fuel_ghg_g_per_km = 0.0;
    double upstream_ghg_g_per_km = 0.0;
    double battery_ghg_g_per_km = 0.0;
    double energy_mj_per_package = 0.0;
    double ghg_g_per_package = 0.0;
    double energy_reduction_vs_baseline = 0.0;  // fraction; 0 when no baseline
    double ghg_reduction_vs_baseline = 0.0;
};

// Grid-side energy of an electric mode: nominal consumption divided by
// charging efficiency and transmission retention.
double grid_energy(double nominal_mj_per_km, const EmissionFactors& factors);

double energy_per_package(double energy_mj_per_km, double stops_per_km,
                          double packages_per_stop);  // MJ/package

struct GhgPerKm {
    double fuel = 0.0;      // g/km: combustion for diesel, grid for electric
    double upstream = 0.0;  // g/km
    double battery = 0.0;   // g/km
    double total() const { return fuel + upstream + battery; }
};

GhgPerKm ghg_per_km(const VehicleProfile& vehicle, const EmissionFactors& factors);

double ghg_per_package(const VehicleProfile& vehicle, const EmissionFactors& factors);

// One row per vehicle under the chosen scenario. The low/high scenarios move
// the driving-style energy spread, the grid carbon intensity, the battery
// life-cycle column, and the delivery density together; every GHG cell is
// ordered low <= base <= high. When `baseline` names a vehicle, per-package
// reduction fractions against it are filled in.
std::vector<ComparisonRow> comparison_table(const std::vector<VehicleProfile>& vehicles,
                                            const EmissionFactors& factors,
                                            Scenario scenario,
                                            const std::string& baseline = {});

// Grid-side energy per metric tonne-km of payload capacity.
double per_tonne_km(const VehicleProfile& vehicle, const EmissionFactors& factors);

}  // namespace aeroamp::fleet
