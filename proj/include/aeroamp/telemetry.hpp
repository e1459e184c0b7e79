#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aeroamp/errors.hpp"
#include "aeroamp/numeric.hpp"

namespace aeroamp::telemetry {

// One row of a synchronized flight log.
struct TelemetrySample {
    double time = 0.0;     // s since flight start
    double voltage = 0.0;  // V
    double current = 0.0;  // A
    Eigen::Vector3d position = Eigen::Vector3d::Zero();  // x,y east/north m, z altitude m
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();  // m/s
    double wind_speed = 0.0;      // m/s
    double wind_direction = 0.0;  // deg
    Eigen::Vector3d orientation = Eigen::Vector3d::Zero();  // roll,pitch,yaw deg
};

struct FlightMetadata {
    int flight_id = 0;
    double payload_mass = 0.0;     // kg
    double target_altitude = 0.0;  // m
    double target_speed = 0.0;     // m/s
};

// Column-array storage of one flight. Mandatory channels always have the
// same length; optional channels are empty when the source file lacks them.
struct FlightRecord {
    int flight_id = 0;
    double payload_mass = 0.0;
    double target_altitude = 0.0;
    double target_speed = 0.0;

    Eigen::ArrayXd time, voltage, current;
    Eigen::ArrayXd pos_x, pos_y, pos_z;
    Eigen::ArrayXd vel_x, vel_y, vel_z;
    Eigen::ArrayXd wind_speed, wind_dir, roll, pitch, yaw;  // optional

    std::size_t skipped_rows = 0;

    Eigen::Index size() const { return time.size(); }
    bool has_wind() const { return wind_speed.size() == time.size(); }

    Eigen::ArrayXd power() const { return voltage * current; }  // W
    TelemetrySample sample(Eigen::Index i) const;
};

struct FlightSummary {
    double duration = 0.0;    // s
    double mean_power = 0.0;  // W
    double energy = 0.0;      // J
};

// Canonical CSV schema (see README). `column_map` optionally renames
// canonical columns to whatever the source file uses.
inline const std::vector<std::string>& mandatory_columns() {
    static const std::vector<std::string> cols = {
        "time_s",    "voltage_v", "current_a", "pos_x_m",  "pos_y_m",
        "pos_z_m",   "vel_x_ms",  "vel_y_ms",  "vel_z_ms"};
    return cols;
}

inline const std::vector<std::string>& optional_columns() {
    static const std::vector<std::string> cols = {
        "wind_speed_ms", "wind_dir_deg", "roll_deg", "pitch_deg", "yaw_deg"};
    return cols;
}

FlightRecord parse_flight_csv(const std::string& path, const FlightMetadata& meta,
                              const std::map<std::string, std::string>& column_map = {});

// One sensor stream: its own sample times plus named channels of equal length.
struct SensorStream {
    Eigen::ArrayXd time;
    std::map<std::string, Eigen::ArrayXd> channels;
};

struct SyncTable {
    Eigen::ArrayXd time;
    std::map<std::string, Eigen::ArrayXd> channels;
};

// Resample all streams onto a uniform timeline at `rate` over their common
// window. A grid point takes the nearest source sample when it lies within
// half a period, otherwise the linear interpolation of its neighbours.
SyncTable synchronize_streams(std::span<const SensorStream> streams, double rate);

// Build a FlightRecord from a synchronized table with canonical channel names.
FlightRecord flight_from_sync(const SyncTable& table, const FlightMetadata& meta);

inline double electrical_power(const TelemetrySample& s) {
    return s.voltage * s.current;
}

// Trapezoidal integral of a power trace, in joules.
double integrate_energy(const Eigen::Ref<const Eigen::ArrayXd>& power,
                        const Eigen::Ref<const Eigen::ArrayXd>& times);

FlightSummary summarize(const FlightRecord& flight);

}  // namespace aeroamp::telemetry
