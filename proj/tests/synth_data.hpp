// Shared synthetic-data generators for the estimation and boosted-tree tests.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aeroamp/pipeline.hpp"
#include "aeroamp/rng.hpp"

namespace synth_data {

using aeroamp::estimation::Observation;

// Per-flight observations with continuous induced power and Gaussian noise
// on the mean-power response.
inline std::vector<Observation> linear_observations(int n, double b1, double b0,
                                                    double noise_sd, std::uint64_t seed,
                                                    double x_lo = 150.0,
                                                    double x_hi = 350.0) {
    std::vector<Observation> obs;
    obs.reserve(static_cast<std::size_t>(n));
    auto engine = aeroamp::rng::substream(seed, 0x0B5ULL);
    for (int i = 0; i < n; ++i) {
        const double x = aeroamp::rng::uniform(engine, x_lo, x_hi);
        double y = b1 * x + b0;
        if (noise_sd > 0.0) y += aeroamp::rng::normal(engine, 0.0, noise_sd);
        obs.push_back({i + 1, x, y});
    }
    return obs;
}

// Synthetic flight table built at observation level: a power law per regime
// maps induced power to mean power; durations follow the trapezoid mission
// geometry. `law(regime, p_induced)` returns the noiseless mean power.
inline aeroamp::pipeline::FlightTable make_table(
    int n_flights, const std::function<double(int, double)>& law, double noise_sd,
    std::uint64_t seed) {
    aeroamp::pipeline::FlightTable table;
    const aeroamp::physics::DroneConfig drone;
    const aeroamp::physics::Environment env;
    auto engine = aeroamp::rng::substream(seed, 0x7AB1EULL);
    for (int i = 0; i < n_flights; ++i) {
        aeroamp::pipeline::FlightRow row;
        row.flight_id = i + 1;
        row.payload_mass = aeroamp::rng::uniform(engine, 0.0, 1.0);
        row.target_altitude = 25.0 * (1 + i % 4);
        row.target_speed = 4.0 + 2.0 * (i % 5);
        row.total_mass = drone.empty_mass + row.payload_mass;
        row.p_induced = aeroamp::physics::induced_power(row.total_mass, env, drone);
        row.mean_wind = 0.0;
        row.duration = {row.target_altitude / 2.5, 600.0 / row.target_speed,
                        row.target_altitude / 2.0};
        for (int r = 0; r < 3; ++r) {
            double p = law(r, row.p_induced);
            if (noise_sd > 0.0) p += aeroamp::rng::normal(engine, 0.0, noise_sd);
            row.mean_power[static_cast<std::size_t>(r)] = p;
            row.energy[static_cast<std::size_t>(r)] =
                p * row.duration[static_cast<std::size_t>(r)];
        }
        table.rows.push_back(row);
    }
    return table;
}

inline std::vector<int> first_ids(const aeroamp::pipeline::FlightTable& table, int count) {
    std::vector<int> ids;
    for (int i = 0; i < count; ++i) ids.push_back(table.rows[static_cast<std::size_t>(i)].flight_id);
    return ids;
}

inline std::vector<int> rest_ids(const aeroamp::pipeline::FlightTable& table, int from) {
    std::vector<int> ids;
    for (std::size_t i = static_cast<std::size_t>(from); i < table.rows.size(); ++i)
        ids.push_back(table.rows[i].flight_id);
    return ids;
}

}  // namespace synth_data
