#include "aeroamp/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace aeroamp::telemetry {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim whitespace and CR
        auto b = field.find_first_not_of(" \t\r\n");
        auto e = field.find_last_not_of(" \t\r\n");
        out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end != s.c_str() && *end == '\0' && std::isfinite(out);
}

constexpr double kMaxBadRowFraction = 0.01;

}  // namespace

TelemetrySample FlightRecord::sample(Eigen::Index i) const {
    TelemetrySample s;
    s.time = time[i];
    s.voltage = voltage[i];
    s.current = current[i];
    s.position = {pos_x[i], pos_y[i], pos_z[i]};
    s.velocity = {vel_x[i], vel_y[i], vel_z[i]};
    if (has_wind()) {
        s.wind_speed = wind_speed[i];
        s.wind_direction = wind_dir[i];
    }
    if (roll.size() == time.size()) s.orientation = {roll[i], pitch[i], yaw[i]};
    return s;
}

FlightRecord parse_flight_csv(const std::string& path, const FlightMetadata& meta,
                              const std::map<std::string, std::string>& column_map) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("parse_flight_csv: cannot open " + path);

    std::string line;
    if (!std::getline(in, line))
        throw EmptyFlight("parse_flight_csv: " + path + " is empty");

    const auto header = split_csv_line(line);
    auto file_name = [&](const std::string& canonical) {
        auto it = column_map.find(canonical);
        return it == column_map.end() ? canonical : it->second;
    };
    std::map<std::string, int> index;  // canonical -> column index
    for (const auto& canonical : mandatory_columns()) {
        auto it = std::find(header.begin(), header.end(), file_name(canonical));
        if (it == header.end())
            throw MissingColumn("parse_flight_csv: missing mandatory column '" +
                                file_name(canonical) + "' in " + path);
        index[canonical] = static_cast<int>(it - header.begin());
    }
    for (const auto& canonical : optional_columns()) {
        auto it = std::find(header.begin(), header.end(), file_name(canonical));
        if (it != header.end()) index[canonical] = static_cast<int>(it - header.begin());
    }

    std::map<std::string, std::vector<double>> cols;
    std::size_t skipped = 0, data_rows = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        ++data_rows;
        const auto fields = split_csv_line(line);
        bool ok = true;
        std::map<std::string, double> row;
        for (const auto& canonical : mandatory_columns()) {
            const int c = index[canonical];
            double v;
            if (c >= static_cast<int>(fields.size()) || !parse_double(fields[c], v)) {
                ok = false;
                break;
            }
            row[canonical] = v;
        }
        if (!ok) {
            ++skipped;
            continue;
        }
        for (const auto& canonical : optional_columns()) {
            auto it = index.find(canonical);
            if (it == index.end()) continue;
            double v;
            if (it->second >= static_cast<int>(fields.size()) ||
                !parse_double(fields[it->second], v))
                v = std::numeric_limits<double>::quiet_NaN();
            row[canonical] = v;
        }
        for (const auto& [k, v] : row) cols[k].push_back(v);
    }

    if (cols["time_s"].empty())
        throw EmptyFlight("parse_flight_csv: no valid rows in " + path);
    if (data_rows > 0 &&
        static_cast<double>(skipped) > kMaxBadRowFraction * static_cast<double>(data_rows))
        throw TooManyBadRows("parse_flight_csv: " + std::to_string(skipped) + " of " +
                             std::to_string(data_rows) + " rows malformed in " + path);

    // Sort by time; drop rows that do not strictly advance the clock.
    const std::size_t n = cols["time_s"].size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cols["time_s"][a] < cols["time_s"][b];
    });
    std::vector<std::size_t> keep;
    keep.reserve(n);
    double last = -std::numeric_limits<double>::infinity();
    for (std::size_t i : order) {
        const double t = cols["time_s"][i];
        if (t > last) {
            keep.push_back(i);
            last = t;
        } else {
            ++skipped;
        }
    }

    auto gather = [&](const std::string& canonical) {
        Eigen::ArrayXd out(static_cast<Eigen::Index>(keep.size()));
        const auto& src = cols[canonical];
        for (std::size_t i = 0; i < keep.size(); ++i) out[static_cast<Eigen::Index>(i)] = src[keep[i]];
        return out;
    };

    FlightRecord f;
    f.flight_id = meta.flight_id;
    f.payload_mass = meta.payload_mass;
    f.target_altitude = meta.target_altitude;
    f.target_speed = meta.target_speed;
    f.skipped_rows = skipped;
    f.time = gather("time_s");
    f.voltage = gather("voltage_v");
    f.current = gather("current_a");
    f.pos_x = gather("pos_x_m");
    f.pos_y = gather("pos_y_m");
    f.pos_z = gather("pos_z_m");
    f.vel_x = gather("vel_x_ms");
    f.vel_y = gather("vel_y_ms");
    f.vel_z = gather("vel_z_ms");
    if (cols.count("wind_speed_ms")) f.wind_speed = gather("wind_speed_ms");
    if (cols.count("wind_dir_deg")) f.wind_dir = gather("wind_dir_deg");
    if (cols.count("roll_deg")) f.roll = gather("roll_deg");
    if (cols.count("pitch_deg")) f.pitch = gather("pitch_deg");
    if (cols.count("yaw_deg")) f.yaw = gather("yaw_deg");
    return f;
}

namespace {

// Nearest-within-half-period, else linear interpolation between neighbours.
double sample_stream(const Eigen::ArrayXd& t, const Eigen::ArrayXd& v, double g,
                     double half_period) {
    const Eigen::Index n = t.size();
    const double* begin = t.data();
    const double* it = std::lower_bound(begin, begin + n, g);
    Eigen::Index hi = it - begin;
    if (hi == 0) return v[0];
    if (hi >= n) hi = n - 1;
    const Eigen::Index lo = hi - 1;
    const double d_lo = g - t[lo], d_hi = t[hi] - g;
    const Eigen::Index nearest = d_lo <= d_hi ? lo : hi;
    if (std::abs(t[nearest] - g) <= half_period) return v[nearest];
    const double w = d_lo / (t[hi] - t[lo]);
    return (1.0 - w) * v[lo] + w * v[hi];
}

}  // namespace

SyncTable synchronize_streams(std::span<const SensorStream> streams, double rate) {
    if (streams.empty())
        throw InvalidInput("synchronize_streams: no streams");
    if (!(rate > 0.0))
        throw InvalidInput("synchronize_streams: rate must be > 0");

    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    for (const auto& s : streams) {
        if (s.time.size() == 0)
            throw InvalidInput("synchronize_streams: empty stream");
        for (Eigen::Index i = 1; i < s.time.size(); ++i)
            if (!(s.time[i] > s.time[i - 1]))
                throw InvalidInput("synchronize_streams: stream times must be increasing");
        t0 = std::max(t0, s.time[0]);
        t1 = std::min(t1, s.time[s.time.size() - 1]);
    }
    if (!(t0 <= t1))
        throw NoOverlap("synchronize_streams: streams share no time window");

    const double step = 1.0 / rate;
    const Eigen::Index n = static_cast<Eigen::Index>(std::floor((t1 - t0) / step + 1e-9)) + 1;

    SyncTable table;
    table.time = t0 + step * Eigen::ArrayXd::LinSpaced(n, 0, static_cast<double>(n - 1));
    for (const auto& s : streams) {
        for (const auto& [name, values] : s.channels) {
            if (values.size() != s.time.size())
                throw InvalidInput("synchronize_streams: channel '" + name +
                                   "' length mismatch");
            Eigen::ArrayXd out(n);
            for (Eigen::Index i = 0; i < n; ++i)
                out[i] = sample_stream(s.time, values, table.time[i], 0.5 * step);
            table.channels[name] = std::move(out);
        }
    }
    return table;
}

FlightRecord flight_from_sync(const SyncTable& table, const FlightMetadata& meta) {
    auto need = [&](const std::string& name) -> const Eigen::ArrayXd& {
        auto it = table.channels.find(name);
        if (it == table.channels.end())
            throw MissingColumn("flight_from_sync: missing channel '" + name + "'");
        return it->second;
    };
    FlightRecord f;
    f.flight_id = meta.flight_id;
    f.payload_mass = meta.payload_mass;
    f.target_altitude = meta.target_altitude;
    f.target_speed = meta.target_speed;
    f.time = table.time;
    f.voltage = need("voltage_v");
    f.current = need("current_a");
    f.pos_x = need("pos_x_m");
    f.pos_y = need("pos_y_m");
    f.pos_z = need("pos_z_m");
    f.vel_x = need("vel_x_ms");
    f.vel_y = need("vel_y_ms");
    f.vel_z = need("vel_z_ms");
    if (auto it = table.channels.find("wind_speed_ms"); it != table.channels.end())
        f.wind_speed = it->second;
    if (auto it = table.channels.find("wind_dir_deg"); it != table.channels.end())
        f.wind_dir = it->second;
    return f;
}

double integrate_energy(const Eigen::Ref<const Eigen::ArrayXd>& power,
                        const Eigen::Ref<const Eigen::ArrayXd>& times) {
    if (power.size() < 2)
        throw TooFewSamples("integrate_energy: need at least 2 samples");
    return trapezoid(times, power);
}

FlightSummary summarize(const FlightRecord& flight) {
    FlightSummary s;
    if (flight.size() < 2)
        throw TooFewSamples("summarize: flight has fewer than 2 samples");
    s.duration = flight.time[flight.size() - 1] - flight.time[0];
    s.energy = integrate_energy(flight.power(), flight.time);
    s.mean_power = s.energy / s.duration;
    return s;
}

}  // namespace aeroamp::telemetry
