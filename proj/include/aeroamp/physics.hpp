#pragma once

#include <cmath>
#include <string>

#include "aeroamp/errors.hpp"

namespace aeroamp::physics {

struct Environment {
    double air_density = 1.225;  // kg/m^3
    double gravity = 9.81;       // m/s^2
};

// Vehicle profile used for the induced-power estimator. The default values
// are the calibrated M100-class profile shipped in data/m100.json; see the
// calibrate subcommand for how they were fixed.
struct DroneConfig {
    std::string name = "dji-m100-tb48d";
    double empty_mass = 3.0761;        // kg, airframe + battery + instrumentation
    double rotor_area_total = 0.3425;  // m^2, all four propellers
    double battery_capacity = 130.0;   // Wh
};

struct HoverPoint {
    double thrust;            // N
    double induced_velocity;  // m/s
    double induced_power;     // W
};

// Hover with no wind: thrust balances weight, the induced velocity follows
// from momentum through the rotor disk, and power is thrust times induced
// velocity.
inline HoverPoint hover_point(double total_mass, const Environment& env,
                              const DroneConfig& config) {
    if (!(total_mass > 0.0))
        throw NonPositiveMass("hover_point: total mass must be > 0");
    if (!(env.air_density > 0.0) || !(env.gravity > 0.0))
        throw InvalidInput("hover_point: air density and gravity must be > 0");
    if (!(config.rotor_area_total > 0.0))
        throw InvalidInput("hover_point: rotor area must be > 0");

    HoverPoint h;
    h.thrust = total_mass * env.gravity;
    h.induced_velocity =
        std::sqrt(h.thrust / (2.0 * env.air_density * config.rotor_area_total));
    h.induced_power = h.thrust * h.induced_velocity;
    return h;
}

inline double induced_power(double total_mass, const Environment& env,
                            const DroneConfig& config) {
    return hover_point(total_mass, env, config).induced_power;
}

}  // namespace aeroamp::physics
