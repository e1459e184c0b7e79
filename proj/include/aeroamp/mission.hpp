#pragma once

#include "aeroamp/estimation.hpp"
#include "aeroamp/physics.hpp"

namespace aeroamp::mission {

using estimation::RegimeModel;
using estimation::RegimeModelSet;
using physics::DroneConfig;
using physics::Environment;
using segmentation::Regime;

// A round-trip delivery: out loaded, back empty.
struct MissionSpec {
    double payload_mass = 0.0;     // kg
    double cruise_speed = 0.0;     // m/s
    double cruise_altitude = 0.0;  // m
    double takeoff_speed = 2.5;    // m/s
    double landing_speed = 2.0;    // m/s
    double one_way_distance = 0.0; // km, each leg
};

// Six-term breakdown per (regime, load state), in Wh.
struct EnergyBreakdown {
    double takeoff_loaded = 0.0;
    double cruise_loaded = 0.0;
    double landing_loaded = 0.0;
    double takeoff_unloaded = 0.0;
    double cruise_unloaded = 0.0;
    double landing_unloaded = 0.0;

    double total() const {
        return takeoff_loaded + cruise_loaded + landing_loaded + takeoff_unloaded +
               cruise_unloaded + landing_unloaded;
    }
};

// Energy of one climb or descent at constant speed: (b1*P_i + b0) * h / V.
double vertical_segment_energy(const RegimeModel& model, double p_induced,
                               double altitude, double speed);  // Wh

EnergyBreakdown mission_energy(const RegimeModelSet& models, const MissionSpec& mission,
                               const DroneConfig& config, const Environment& env);

// Maximum total out-and-back distance (km) with a battery of e_max_wh. The
// delivery range is half of it. mission.one_way_distance is ignored.
double two_way_range(const RegimeModelSet& models, const MissionSpec& mission,
                     const DroneConfig& config, const Environment& env,
                     double e_max_wh);

// Round-trip energy over round-trip distance, MJ/km (vehicle side).
double per_km_intensity(const RegimeModelSet& models, const MissionSpec& mission,
                        const DroneConfig& config, const Environment& env);

// The fitted coefficients are backed by data up to this cruise speed; the
// CLI warns beyond it.
constexpr double kMaxValidatedCruiseSpeed = 12.0;

}  // namespace aeroamp::mission
