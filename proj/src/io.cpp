#include "aeroamp/io.hpp"

#include <cstdio>
#include <fstream>

namespace aeroamp::io {

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path.string());
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& path, const json& value) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write " + path.string());
    out << value.dump(2) << "\n";
}

physics::DroneConfig load_drone(const std::filesystem::path& path) {
    const json j = load_json(path);
    physics::DroneConfig c;
    c.name = j.value("name", c.name);
    c.empty_mass = j.at("empty_mass_kg").get<double>();
    c.rotor_area_total = j.at("rotor_area_total_m2").get<double>();
    c.battery_capacity = j.value("battery_capacity_wh", c.battery_capacity);
    if (!(c.empty_mass > 0.0) || !(c.rotor_area_total > 0.0) ||
        !(c.battery_capacity > 0.0))
        throw InvalidInput("drone profile values must be positive in " + path.string());
    return c;
}

json drone_to_json(const physics::DroneConfig& config) {
    return json{{"name", config.name},
                {"empty_mass_kg", config.empty_mass},
                {"rotor_area_total_m2", config.rotor_area_total},
                {"battery_capacity_wh", config.battery_capacity}};
}

estimation::RegimeModelSet load_models(const std::filesystem::path& path) {
    const json j = load_json(path);
    estimation::RegimeModelSet set;
    for (const auto& entry : j) {
        estimation::RegimeModel m;
        m.regime = segmentation::regime_from_name(entry.at("regime").get<std::string>());
        m.b1 = entry.at("b1").get<double>();
        m.b0 = entry.at("b0").get<double>();
        m.se_b1 = entry.value("se_b1", 0.0);
        m.se_b0 = entry.value("se_b0", 0.0);
        m.n_train = entry.value("n_train", 0);
        set.set(m);
    }
    return set;
}

json models_to_json(const estimation::RegimeModelSet& models, std::uint64_t seed,
                    int replications) {
    json out = json::array();
    for (std::size_t r = 0; r < 3; ++r) {
        const auto& m = models.require(static_cast<estimation::Regime>(r));
        out.push_back({{"regime", segmentation::regime_name(m.regime)},
                       {"b1", m.b1},
                       {"b0", m.b0},
                       {"se_b1", m.se_b1},
                       {"se_b0", m.se_b0},
                       {"n_train", m.n_train},
                       {"seed", seed},
                       {"replications", replications}});
    }
    return out;
}

fleet::EmissionFactors load_factors(const std::filesystem::path& path) {
    const json j = load_json(path);
    fleet::EmissionFactors f;
    f.grid_ghg_base = j.value("grid_ghg_g_per_mj", f.grid_ghg_base);
    f.grid_ghg_low = j.value("grid_ghg_low_g_per_mj", f.grid_ghg_low);
    f.grid_ghg_high = j.value("grid_ghg_high_g_per_mj", f.grid_ghg_high);
    f.diesel_combustion_ghg = j.value("diesel_combustion_g_per_mj", f.diesel_combustion_ghg);
    f.upstream_diesel = j.value("upstream_diesel_g_per_mj", f.upstream_diesel);
    f.upstream_electricity =
        j.value("upstream_electricity_g_per_mj", f.upstream_electricity);
    f.charging_efficiency = j.value("charging_efficiency", f.charging_efficiency);
    f.transmission_loss = j.value("transmission_loss", f.transmission_loss);
    return f;
}

std::vector<fleet::VehicleProfile> load_vehicles(const std::filesystem::path& path) {
    const json j = load_json(path);
    std::vector<fleet::VehicleProfile> out;
    for (const auto& entry : j) {
        fleet::VehicleProfile v;
        v.name = entry.at("name").get<std::string>();
        v.fuel = fleet::fuel_from_name(entry.at("fuel").get<std::string>());
        v.nominal_energy = entry.at("nominal_energy_mj_per_km").get<double>();
        v.stops_per_km = entry.at("stops_per_km").get<double>();
        v.packages_per_stop = entry.value("packages_per_stop", 1.0);
        v.battery_ghg_base = entry.value("battery_ghg_g_per_km", 0.0);
        v.battery_ghg_low = entry.value("battery_ghg_low_g_per_km", v.battery_ghg_base);
        v.battery_ghg_high = entry.value("battery_ghg_high_g_per_km", v.battery_ghg_base);
        v.driving_style_spread = entry.value("driving_style_spread", 0.40);
        v.delivery_density_spread = entry.value("delivery_density_spread", 0.0);
        v.payload_capacity = entry.value("payload_capacity_kg", 0.0);
        v.source = entry.value("source", std::string{});
        out.push_back(v);
    }
    return out;
}

std::vector<FlightEntry> load_flight_index(const std::filesystem::path& path) {
    const json j = load_json(path);
    std::vector<FlightEntry> out;
    for (const auto& entry : j) {
        FlightEntry e;
        e.meta.flight_id = entry.at("flight_id").get<int>();
        e.meta.payload_mass = entry.at("payload_kg").get<double>();
        e.meta.target_altitude = entry.at("altitude_m").get<double>();
        e.meta.target_speed = entry.at("speed_ms").get<double>();
        e.csv_path = entry.at("csv_path").get<std::string>();
        out.push_back(e);
    }
    return out;
}

void save_flight_index(const std::filesystem::path& path,
                       const std::vector<FlightEntry>& entries) {
    json out = json::array();
    for (const auto& e : entries)
        out.push_back({{"flight_id", e.meta.flight_id},
                       {"payload_kg", e.meta.payload_mass},
                       {"altitude_m", e.meta.target_altitude},
                       {"speed_ms", e.meta.target_speed},
                       {"csv_path", e.csv_path}});
    save_json(path, out);
}

std::map<std::string, std::string> load_column_map(const std::filesystem::path& path) {
    const json j = load_json(path);
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : j.items())
        if (value.is_string()) out[key] = value.get<std::string>();
    return out;
}

std::vector<telemetry::FlightRecord> load_flights(
    const std::filesystem::path& index_path,
    const std::map<std::string, std::string>& column_map) {
    const auto entries = load_flight_index(index_path);
    const auto base = index_path.parent_path();
    std::vector<telemetry::FlightRecord> flights;
    flights.reserve(entries.size());
    for (const auto& e : entries) {
        std::filesystem::path csv(e.csv_path);
        if (csv.is_relative()) csv = base / csv;
        flights.push_back(telemetry::parse_flight_csv(csv.string(), e.meta, column_map));
    }
    return flights;
}

json params_to_json(const segmentation::SegmentationParams& p) {
    return json{{"v_up_thresh", p.v_up_thresh},
                {"v_down_thresh", p.v_down_thresh},
                {"v_settle", p.v_settle},
                {"alt_tol", p.alt_tol},
                {"min_dwell", p.min_dwell},
                {"touchdown_alt", p.touchdown_alt},
                {"touchdown_vz", p.touchdown_vz},
                {"min_flight_alt", p.min_flight_alt}};
}

json segmentation_to_json(const telemetry::FlightRecord& flight,
                          const std::array<segmentation::RegimeSlice, 3>& slices,
                          const segmentation::SegmentationParams& params) {
    json slice_array = json::array();
    for (const auto& s : slices) {
        const Eigen::Index last = std::min(s.end_index, flight.size() - 1);
        slice_array.push_back({{"regime", segmentation::regime_name(s.regime)},
                               {"start_s", flight.time[s.start_index]},
                               {"end_s", flight.time[last]},
                               {"duration_s", s.duration},
                               {"mean_power_w", s.mean_power},
                               {"energy_j", s.energy}});
    }
    return json{{"flight_id", flight.flight_id},
                {"slices", slice_array},
                {"params", params_to_json(params)}};
}

json are_report_to_json(const estimation::AreReport& report) {
    json flights = json::array();
    for (std::size_t i = 0; i < report.are.size(); ++i)
        flights.push_back({{"flight_id", report.flight_ids[i]}, {"are", report.are[i]}});
    return json{{"method", report.method},
                {"mean_are", report.mean},
                {"median_are", report.median},
                {"max_are", report.max},
                {"n_flights", report.are.size()},
                {"flights", flights}};
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_flight_csv(const std::filesystem::path& path,
                      const telemetry::FlightRecord& flight) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write " + path.string());
    const bool wind = flight.has_wind();
    out << "time_s,voltage_v,current_a,pos_x_m,pos_y_m,pos_z_m,vel_x_ms,vel_y_ms,vel_z_ms";
    if (wind) out << ",wind_speed_ms,wind_dir_deg";
    out << "\n";
    for (Eigen::Index i = 0; i < flight.size(); ++i) {
        out << format_double(flight.time[i]) << ',' << format_double(flight.voltage[i])
            << ',' << format_double(flight.current[i]) << ','
            << format_double(flight.pos_x[i]) << ',' << format_double(flight.pos_y[i])
            << ',' << format_double(flight.pos_z[i]) << ','
            << format_double(flight.vel_x[i]) << ',' << format_double(flight.vel_y[i])
            << ',' << format_double(flight.vel_z[i]);
        if (wind)
            out << ',' << format_double(flight.wind_speed[i]) << ','
                << format_double(flight.wind_dir[i]);
        out << "\n";
    }
}

void write_manifest(const std::filesystem::path& out_dir, const Manifest& manifest) {
    json j{{"command", manifest.command},
           {"tool", kToolVersion},
           {"config_paths", manifest.config_paths},
           {"parameters", manifest.parameters},
           {"outputs", manifest.outputs}};
    save_json(out_dir / "manifest.json", j);
}

}  // namespace aeroamp::io
