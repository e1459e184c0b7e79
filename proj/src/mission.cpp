#include "aeroamp/mission.hpp"

#include <cmath>

#include "aeroamp/numeric.hpp"

namespace aeroamp::mission {

double vertical_segment_energy(const RegimeModel& model, double p_induced,
                               double altitude, double speed) {
    if (!(speed > 0.0))
        throw ZeroSpeed("vertical_segment_energy: speed must be > 0");
    if (altitude < 0.0)
        throw InvalidInput("vertical_segment_energy: altitude must be >= 0");
    const double joules =
        estimation::predict_mean_power(model, p_induced) * altitude / speed;
    return joules / kJoulesPerWh;
}

namespace {

struct LoadPoints {
    double p_loaded;    // W, induced power at empty + payload
    double p_unloaded;  // W, induced power at empty mass
};

LoadPoints load_points(const MissionSpec& mission, const DroneConfig& config,
                       const Environment& env) {
    return {physics::induced_power(config.empty_mass + mission.payload_mass, env, config),
            physics::induced_power(config.empty_mass, env, config)};
}

double vertical_round_trip_wh(const RegimeModelSet& models, const MissionSpec& mission,
                              const LoadPoints& lp) {
    const auto& takeoff = models.require(Regime::takeoff);
    const auto& landing = models.require(Regime::landing);
    const double h = mission.cruise_altitude;
    return vertical_segment_energy(takeoff, lp.p_loaded, h, mission.takeoff_speed) +
           vertical_segment_energy(takeoff, lp.p_unloaded, h, mission.takeoff_speed) +
           vertical_segment_energy(landing, lp.p_loaded, h, mission.landing_speed) +
           vertical_segment_energy(landing, lp.p_unloaded, h, mission.landing_speed);
}

}  // namespace

EnergyBreakdown mission_energy(const RegimeModelSet& models, const MissionSpec& mission,
                               const DroneConfig& config, const Environment& env) {
    if (!(mission.cruise_speed > 0.0))
        throw ZeroSpeed("mission_energy: cruise speed must be > 0");
    const LoadPoints lp = load_points(mission, config, env);
    const auto& takeoff = models.require(Regime::takeoff);
    const auto& cruise = models.require(Regime::cruise);
    const auto& landing = models.require(Regime::landing);

    const double h = mission.cruise_altitude;
    const double leg_time = mission.one_way_distance * 1000.0 / mission.cruise_speed;  // s

    EnergyBreakdown out;
    out.takeoff_loaded = vertical_segment_energy(takeoff, lp.p_loaded, h, mission.takeoff_speed);
    out.takeoff_unloaded =
        vertical_segment_energy(takeoff, lp.p_unloaded, h, mission.takeoff_speed);
    out.landing_loaded = vertical_segment_energy(landing, lp.p_loaded, h, mission.landing_speed);
    out.landing_unloaded =
        vertical_segment_energy(landing, lp.p_unloaded, h, mission.landing_speed);
    out.cruise_loaded =
        estimation::predict_mean_power(cruise, lp.p_loaded) * leg_time / kJoulesPerWh;
    out.cruise_unloaded =
        estimation::predict_mean_power(cruise, lp.p_unloaded) * leg_time / kJoulesPerWh;
    return out;
}

double two_way_range(const RegimeModelSet& models, const MissionSpec& mission,
                     const DroneConfig& config, const Environment& env,
                     double e_max_wh) {
    if (!(mission.cruise_speed > 0.0))
        throw ZeroSpeed("two_way_range: cruise speed must be > 0");
    const LoadPoints lp = load_points(mission, config, env);
    const double vertical_wh = vertical_round_trip_wh(models, mission, lp);
    if (vertical_wh > e_max_wh)
        throw InsufficientBattery("two_way_range: vertical profile alone needs " +
                                  std::to_string(vertical_wh) + " Wh of " +
                                  std::to_string(e_max_wh) + " Wh");

    const auto& cruise = models.require(Regime::cruise);
    // Combined cruise power of the loaded and unloaded legs; each leg covers
    // half the two-way distance at cruise speed.
    const double power_sum =
        cruise.b1 * (lp.p_loaded + lp.p_unloaded) + 2.0 * cruise.b0;  // W
    if (!(power_sum > 0.0))
        throw InvalidInput("two_way_range: non-positive cruise power");
    const double cruise_seconds = (e_max_wh - vertical_wh) * kJoulesPerWh / power_sum;
    return 2.0 * cruise_seconds * mission.cruise_speed / 1000.0;  // km
}

double per_km_intensity(const RegimeModelSet& models, const MissionSpec& mission,
                        const DroneConfig& config, const Environment& env) {
    if (!(mission.one_way_distance > 0.0))
        throw ZeroDistance("per_km_intensity: one-way distance must be > 0");
    const double total_j = mission_energy(models, mission, config, env).total() * kJoulesPerWh;
    return (total_j / kJoulesPerMJ) / (2.0 * mission.one_way_distance);
}

}  // namespace aeroamp::mission
