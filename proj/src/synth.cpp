#include "aeroamp/synth.hpp"

#include <cmath>

#include "aeroamp/rng.hpp"

namespace aeroamp::synth {

telemetry::FlightRecord make_flight(int flight_id, const TrapezoidSpec& spec,
                                    const PowerLaw& law,
                                    const physics::DroneConfig& config,
                                    const physics::Environment& env, std::uint64_t seed,
                                    GroundTruth* truth) {
    if (!(spec.target_altitude > 0.0) || !(spec.climb_speed > 0.0) ||
        !(spec.descent_speed > 0.0) || !(spec.target_speed > 0.0) ||
        !(spec.cruise_distance > 0.0) || !(spec.rate > 0.0))
        throw InvalidSpec("make_flight: all durations and speeds must be positive");
    if (spec.payload_mass < 0.0)
        throw InvalidSpec("make_flight: payload mass must be >= 0");
    if (!(law.voltage > 0.0))
        throw InvalidSpec("make_flight: voltage must be positive");

    const double t_liftoff = spec.idle_before;
    const double t_cruise = t_liftoff + spec.target_altitude / spec.climb_speed;
    const double t_descent = t_cruise + spec.cruise_distance / spec.target_speed;
    const double t_touchdown = t_descent + spec.target_altitude / spec.descent_speed;
    const double t_end = t_touchdown + spec.idle_after;

    const double dt = 1.0 / spec.rate;
    const Eigen::Index n = static_cast<Eigen::Index>(std::floor(t_end / dt + 1e-9)) + 1;
    if (n < 3)
        throw InvalidSpec("make_flight: flight too short for the sample rate");

    const double mass = config.empty_mass + spec.payload_mass;
    const double p_induced = physics::induced_power(mass, env, config);

    telemetry::FlightRecord f;
    f.flight_id = flight_id;
    f.payload_mass = spec.payload_mass;
    f.target_altitude = spec.target_altitude;
    f.target_speed = spec.target_speed;
    f.time.resize(n);
    f.voltage.resize(n);
    f.current.resize(n);
    f.pos_x.resize(n);
    f.pos_y = Eigen::ArrayXd::Zero(n);
    f.pos_z.resize(n);
    f.vel_x.resize(n);
    f.vel_y = Eigen::ArrayXd::Zero(n);
    f.vel_z.resize(n);
    f.wind_speed = Eigen::ArrayXd::Zero(n);
    f.wind_dir = Eigen::ArrayXd::Zero(n);

    auto engine = rng::substream(seed, static_cast<std::uint64_t>(flight_id));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = i * dt;
        double alt, vz, vx, x;
        int regime;  // 0 takeoff, 1 cruise, 2 landing; idle uses the cruise law
        if (t < t_liftoff) {
            alt = 0.0; vz = 0.0; vx = 0.0; x = 0.0;
            regime = 1;
        } else if (t < t_cruise) {
            alt = spec.climb_speed * (t - t_liftoff);
            vz = spec.climb_speed; vx = 0.0; x = 0.0;
            regime = 0;
        } else if (t < t_descent) {
            alt = spec.target_altitude;
            vz = 0.0; vx = spec.target_speed;
            x = spec.target_speed * (t - t_cruise);
            regime = 1;
        } else if (t < t_touchdown) {
            alt = spec.target_altitude - spec.descent_speed * (t - t_descent);
            vz = -spec.descent_speed; vx = 0.0; x = spec.cruise_distance;
            regime = 2;
        } else {
            alt = 0.0; vz = 0.0; vx = 0.0; x = spec.cruise_distance;
            regime = 1;
        }

        double power = law.b1[static_cast<std::size_t>(regime)] * p_induced +
                       law.b0[static_cast<std::size_t>(regime)];
        if (law.noise_sd > 0.0) power += rng::normal(engine, 0.0, law.noise_sd);

        f.time[i] = t;
        f.pos_x[i] = x;
        f.pos_z[i] = alt;
        f.vel_x[i] = vx;
        f.vel_z[i] = vz;
        f.voltage[i] = law.voltage;
        f.current[i] = power / law.voltage;
    }

    if (truth) {
        auto first_at_or_after = [&](double t) {
            return static_cast<Eigen::Index>(std::ceil(t / dt - 1e-9));
        };
        truth->liftoff = first_at_or_after(t_liftoff);
        truth->cruise_start = first_at_or_after(t_cruise);
        truth->descent_start = first_at_or_after(t_descent);
        truth->touchdown = first_at_or_after(t_touchdown);
        truth->regime_duration = {
            f.time[truth->cruise_start] - f.time[truth->liftoff],
            f.time[truth->descent_start] - f.time[truth->cruise_start],
            f.time[std::min(truth->touchdown, n - 1)] - f.time[truth->descent_start]};
        truth->p_induced = p_induced;
    }
    return f;
}

}  // namespace aeroamp::synth
