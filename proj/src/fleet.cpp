#include "aeroamp/fleet.hpp"

#include <algorithm>
#include <cmath>

namespace aeroamp::fleet {

Fuel fuel_from_name(const std::string& name) {
    if (name == "diesel") return Fuel::diesel;
    if (name == "electricity" || name == "electric") return Fuel::electricity;
    if (name == "none") return Fuel::none;
    throw InvalidInput("unknown fuel: " + name);
}

const char* fuel_name(Fuel f) {
    switch (f) {
        case Fuel::diesel: return "diesel";
        case Fuel::electricity: return "electricity";
        case Fuel::none: return "none";
    }
    return "?";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "base") return Scenario::base;
    if (name == "low") return Scenario::low;
    if (name == "high") return Scenario::high;
    throw InvalidInput("unknown scenario: " + name);
}

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::base: return "base";
        case Scenario::low: return "low";
        case Scenario::high: return "high";
    }
    return "?";
}

double grid_energy(double nominal_mj_per_km, const EmissionFactors& factors) {
    if (!(nominal_mj_per_km > 0.0))
        throw InvalidInput("grid_energy: nominal energy must be > 0");
    if (!(factors.charging_efficiency > 0.0 && factors.charging_efficiency <= 1.0))
        throw InvalidInput("grid_energy: charging efficiency must be in (0, 1]");
    if (!(factors.transmission_loss >= 0.0 && factors.transmission_loss < 1.0))
        throw InvalidInput("grid_energy: transmission loss must be in [0, 1)");
    return nominal_mj_per_km /
           (factors.charging_efficiency * (1.0 - factors.transmission_loss));
}

double energy_per_package(double energy_mj_per_km, double stops_per_km,
                          double packages_per_stop) {
    const double rate = stops_per_km * packages_per_stop;
    if (!(rate > 0.0))
        throw ZeroDeliveryRate("energy_per_package: stops/km x packages/stop must be > 0");
    return energy_mj_per_km / rate;
}

namespace {

double delivered_energy(const VehicleProfile& v, const EmissionFactors& f) {
    switch (v.fuel) {
        case Fuel::electricity: return grid_energy(v.nominal_energy, f);
        case Fuel::diesel: return v.nominal_energy;
        case Fuel::none: return v.nominal_energy;
    }
    return v.nominal_energy;
}

}  // namespace

GhgPerKm ghg_per_km(const VehicleProfile& vehicle, const EmissionFactors& factors) {
    GhgPerKm out;
    if (vehicle.nominal_energy <= 0.0) return out;
    switch (vehicle.fuel) {
        case Fuel::diesel:
            out.fuel = vehicle.nominal_energy * factors.diesel_combustion_ghg;
            out.upstream = vehicle.nominal_energy * factors.upstream_diesel;
            break;
        case Fuel::electricity: {
            const double grid = grid_energy(vehicle.nominal_energy, factors);
            out.fuel = grid * factors.grid_ghg_base;
            out.upstream = grid * factors.upstream_electricity;
            break;
        }
        case Fuel::none:
            break;
    }
    out.battery = vehicle.battery_ghg_base;
    return out;
}

double ghg_per_package(const VehicleProfile& vehicle, const EmissionFactors& factors) {
    const double rate = vehicle.stops_per_km * vehicle.packages_per_stop;
    if (!(rate > 0.0))
        throw ZeroDeliveryRate("ghg_per_package: stops/km x packages/stop must be > 0");
    return ghg_per_km(vehicle, factors).total() / rate;
}

std::vector<ComparisonRow> comparison_table(const std::vector<VehicleProfile>& vehicles,
                                            const EmissionFactors& factors,
                                            Scenario scenario,
                                            const std::string& baseline) {
    if (vehicles.empty())
        throw InvalidInput("comparison_table: no vehicle profiles");

    const double sign = scenario == Scenario::base ? 0.0
                        : scenario == Scenario::low ? -1.0
                                                    : 1.0;
    std::vector<ComparisonRow> rows;
    rows.reserve(vehicles.size());
    for (const auto& v : vehicles) {
        // Scenario-adjusted copies; the scenario moves energy, grid carbon
        // intensity, battery life-cycle emissions, and delivery density.
        VehicleProfile adj = v;
        adj.nominal_energy = v.nominal_energy * (1.0 + sign * v.driving_style_spread);
        adj.battery_ghg_base = scenario == Scenario::low    ? v.battery_ghg_low
                               : scenario == Scenario::high ? v.battery_ghg_high
                                                            : v.battery_ghg_base;
        const double density = 1.0 - sign * v.delivery_density_spread;
        adj.stops_per_km = v.stops_per_km * density;

        EmissionFactors f = factors;
        f.grid_ghg_base = scenario == Scenario::low    ? factors.grid_ghg_low
                          : scenario == Scenario::high ? factors.grid_ghg_high
                                                       : factors.grid_ghg_base;

        ComparisonRow row;
        row.name = v.name;
        row.energy_mj_per_km = delivered_energy(adj, f);
        const GhgPerKm ghg = ghg_per_km(adj, f);
        row.fuel_ghg_g_per_km = ghg.fuel;
        row.upstream_ghg_g_per_km = ghg.upstream;
        row.battery_ghg_g_per_km = ghg.battery;
        row.energy_mj_per_package =
            energy_per_package(row.energy_mj_per_km, adj.stops_per_km, adj.packages_per_stop);
        row.ghg_g_per_package = ghg_per_package(adj, f);
        rows.push_back(row);
    }

    if (!baseline.empty()) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const ComparisonRow& r) { return r.name == baseline; });
        if (it == rows.end())
            throw UnknownVehicle("comparison_table: baseline '" + baseline + "' not found");
        for (auto& row : rows) {
            row.energy_reduction_vs_baseline =
                1.0 - row.energy_mj_per_package / it->energy_mj_per_package;
            row.ghg_reduction_vs_baseline =
                1.0 - row.ghg_g_per_package / it->ghg_g_per_package;
        }
    }
    return rows;
}

double per_tonne_km(const VehicleProfile& vehicle, const EmissionFactors& factors) {
    if (!(vehicle.payload_capacity > 0.0))
        throw ZeroPayload("per_tonne_km: payload capacity must be > 0");
    return delivered_energy(vehicle, factors) / (vehicle.payload_capacity / 1000.0);
}

}  // namespace aeroamp::fleet
