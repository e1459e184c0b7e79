#pragma once

#include <array>
#include <cstdint>

#include "aeroamp/physics.hpp"
#include "aeroamp/telemetry.hpp"

namespace aeroamp::synth {

// Geometry of a synthetic trapezoid mission: idle, climb at constant rate,
// level cruise, descent at constant rate, idle.
struct TrapezoidSpec {
    double payload_mass = 0.0;      // kg
    double target_altitude = 100.0; // m
    double target_speed = 12.0;     // m/s, cruise ground speed
    double climb_speed = 2.5;       // m/s
    double descent_speed = 2.0;     // m/s
    double cruise_distance = 600.0; // m
    double idle_before = 2.0;       // s
    double idle_after = 2.0;        // s
    double rate = 5.0;              // Hz
};

// Power law used to paint electrical power onto the trajectory. Indexed by
// regime (takeoff, cruise, landing); idle samples use the cruise law so a
// uniform law produces a perfectly constant trace.
struct PowerLaw {
    std::array<double, 3> b1{2.0, 2.0, 2.0};
    std::array<double, 3> b0{10.0, 10.0, 10.0};
    double noise_sd = 0.0;   // W, per sample
    double voltage = 22.2;   // V, constant pack voltage
};

// Exact sample indices of the generated phase boundaries, for oracle tests.
struct GroundTruth {
    Eigen::Index liftoff = 0;
    Eigen::Index cruise_start = 0;
    Eigen::Index descent_start = 0;
    Eigen::Index touchdown = 0;
    std::array<double, 3> regime_duration{};  // s per regime
    double p_induced = 0.0;                   // W at flight mass
};

telemetry::FlightRecord make_flight(int flight_id, const TrapezoidSpec& spec,
                                    const PowerLaw& law,
                                    const physics::DroneConfig& config,
                                    const physics::Environment& env, std::uint64_t seed,
                                    GroundTruth* truth = nullptr);

}  // namespace aeroamp::synth
