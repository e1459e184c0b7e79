// aeroamp: quadcopter delivery energy toolkit.
//
// Subcommands: segment, fit, evaluate, range, compare, sweep, synth,
// calibrate. Every run writes a manifest next to its outputs; all outputs
// are deterministic given the seeds.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "aeroamp/io.hpp"
#include "aeroamp/pipeline.hpp"
#include "aeroamp/rng.hpp"
#include "aeroamp/synth.hpp"

namespace fs = std::filesystem;
using namespace aeroamp;
using aeroamp::io::json;

namespace {

fs::path resolve_data_path(const std::string& given) {
    fs::path p(given);
    if (fs::exists(p)) return p;
    if (p.is_relative()) {
        if (const char* root = std::getenv("AEROAMP_DATA_DIR")) {
            const fs::path alt = fs::path(root) / p;
            if (fs::exists(alt)) return alt;
        }
    }
    return p;
}

struct CommonIo {
    std::string out_dir = ".";
    fs::path out() const {
        fs::create_directories(out_dir);
        return fs::path(out_dir);
    }
};

std::vector<telemetry::FlightRecord> load_flight_set(const std::string& flights_path,
                                                     const std::string& column_map_path) {
    std::map<std::string, std::string> cmap;
    if (!column_map_path.empty()) cmap = io::load_column_map(resolve_data_path(column_map_path));
    return io::load_flights(resolve_data_path(flights_path), cmap);
}

void add_segmentation_flags(CLI::App* cmd, segmentation::SegmentationParams& p) {
    cmd->add_option("--v-up-thresh", p.v_up_thresh, "sustained climb threshold, m/s");
    cmd->add_option("--v-down-thresh", p.v_down_thresh, "sustained descent threshold, m/s");
    cmd->add_option("--v-settle", p.v_settle, "settled |vz| bound, m/s");
    cmd->add_option("--alt-tol", p.alt_tol, "target altitude band, m");
    cmd->add_option("--min-dwell", p.min_dwell, "transition dwell, s");
}

json rejects_to_json(const std::vector<pipeline::Reject>& rejects) {
    json out = json::array();
    for (const auto& r : rejects)
        out.push_back({{"flight_id", r.flight_id},
                       {"error", r.error_kind},
                       {"message", r.message}});
    return out;
}

int run_segment(const std::string& flights_path, const std::string& column_map_path,
                const segmentation::SegmentationParams& params, const CommonIo& common) {
    const auto flights = load_flight_set(flights_path, column_map_path);
    const fs::path out = common.out();
    std::vector<pipeline::Reject> rejects;
    std::vector<std::string> outputs;
    for (const auto& flight : flights) {
        try {
            const auto slices = segmentation::detect_regimes(flight, params);
            const fs::path file =
                out / ("segments_" + std::to_string(flight.flight_id) + ".json");
            io::save_json(file, io::segmentation_to_json(flight, slices, params));
            outputs.push_back(file.string());
        } catch (const Error& e) {
            rejects.push_back({flight.flight_id, e.kind(), e.what()});
        }
    }
    io::save_json(out / "rejects.json", rejects_to_json(rejects));
    outputs.push_back((out / "rejects.json").string());

    io::Manifest manifest;
    manifest.command = "segment";
    manifest.config_paths = {flights_path};
    manifest.parameters["segmentation"] = io::params_to_json(params);
    manifest.outputs = outputs;
    io::write_manifest(out, manifest);
    std::cout << "segmented " << outputs.size() - 1 << " flights, " << rejects.size()
              << " rejected\n";
    return 0;
}

estimation::SplitPlan make_split(const pipeline::FlightTable& table, int train_count,
                                 std::uint64_t seed) {
    std::map<int, estimation::FlightCell> cells;
    for (const auto& row : table.rows)
        cells[row.flight_id] = {row.payload_mass, row.target_altitude, row.target_speed};
    return estimation::stratified_split(table.ids(), train_count, seed, &cells);
}

int run_fit(const std::string& flights_path, const std::string& column_map_path,
            const std::string& drone_path, int train_count, int bootstrap,
            std::uint64_t seed, const segmentation::SegmentationParams& params,
            const CommonIo& common) {
    const auto flights = load_flight_set(flights_path, column_map_path);
    const auto drone = io::load_drone(resolve_data_path(drone_path));
    const physics::Environment env;
    const auto table = pipeline::summarize_flights(flights, drone, env, params);
    if (table.rows.empty())
        throw EmptyFlight("fit: no usable flights after segmentation");

    const auto split = make_split(table, train_count, seed);
    const auto models = pipeline::fit_models(table, split.train_ids, bootstrap, seed);

    const fs::path out = common.out();
    io::save_json(out / "models.json", io::models_to_json(models, seed, bootstrap));
    io::save_json(out / "split.json", json{{"seed", seed},
                                           {"train_ids", split.train_ids},
                                           {"test_ids", split.test_ids}});
    io::save_json(out / "rejects.json", rejects_to_json(table.rejects));

    io::Manifest manifest;
    manifest.command = "fit";
    manifest.config_paths = {flights_path, drone_path};
    manifest.parameters["train_count"] = train_count;
    manifest.parameters["bootstrap"] = bootstrap;
    manifest.parameters["seed"] = seed;
    manifest.parameters["segmentation"] = io::params_to_json(params);
    manifest.outputs = {(out / "models.json").string(), (out / "split.json").string(),
                        (out / "rejects.json").string()};
    io::write_manifest(out, manifest);

    for (std::size_t r = 0; r < 3; ++r) {
        const auto& m = models.require(static_cast<estimation::Regime>(r));
        std::cout << segmentation::regime_name(m.regime) << ": b1=" << m.b1
                  << " +/- " << m.se_b1 << ", b0=" << m.b0 << " +/- " << m.se_b0
                  << " (n=" << m.n_train << ")\n";
    }
    return 0;
}

int run_evaluate(const std::string& flights_path, const std::string& column_map_path,
                 const std::string& drone_path, const std::string& models_path,
                 const std::string& method, int train_count, std::uint64_t seed,
                 int folds, const gbt::HyperGrid& grid,
                 const segmentation::SegmentationParams& params, const CommonIo& common) {
    const auto flights = load_flight_set(flights_path, column_map_path);
    const auto drone = io::load_drone(resolve_data_path(drone_path));
    const physics::Environment env;
    const auto table = pipeline::summarize_flights(flights, drone, env, params);
    const auto split = make_split(table, train_count, seed);
    const auto models = io::load_models(resolve_data_path(models_path));

    const fs::path out = common.out();
    std::vector<std::string> outputs;

    const auto linear_report = pipeline::evaluate_linear(table, split.test_ids, models);
    json report_json = io::are_report_to_json(linear_report);

    if (method == "gbt") {
        const auto gbt_eval =
            pipeline::evaluate_gbt(table, split.train_ids, split.test_ids, grid, folds, seed);
        // CV table CSV: grid_point, fold, are
        {
            std::ofstream csv(out / "cv_table.csv");
            csv << "grid_point,learning_rate,max_depth,gamma,fold,are\n";
            for (const auto& cell : gbt_eval.cv.table) {
                const auto& p = gbt_eval.cv.grid_points[static_cast<std::size_t>(cell.grid_point)];
                csv << cell.grid_point << ',' << io::format_double(p.learning_rate) << ','
                    << p.max_depth << ',' << io::format_double(p.gamma) << ',' << cell.fold
                    << ',' << io::format_double(cell.are) << "\n";
            }
        }
        outputs.push_back((out / "cv_table.csv").string());
        const auto& best = gbt_eval.cv.best;
        io::save_json(out / "gbt_best.json",
                      json{{"learning_rate", best.learning_rate},
                           {"max_depth", best.max_depth},
                           {"gamma", best.gamma},
                           {"row_subsample", best.row_subsample},
                           {"feature_subsample", best.feature_subsample},
                           {"rounds", best.rounds},
                           {"cv_mean_are",
                            gbt_eval.cv.mean_are[static_cast<std::size_t>(gbt_eval.cv.best_index)]}});
        outputs.push_back((out / "gbt_best.json").string());

        report_json = json{{"linear", io::are_report_to_json(linear_report)},
                           {"gbt", io::are_report_to_json(gbt_eval.report)},
                           {"adequacy",
                            {{"mean_are_linear", linear_report.mean},
                             {"mean_are_gbt", gbt_eval.report.mean},
                             {"linear_model_adequate",
                              pipeline::linear_model_adequate(linear_report.mean,
                                                              gbt_eval.report.mean)}}}};
    }

    io::save_json(out / "are_report.json", report_json);
    outputs.push_back((out / "are_report.json").string());
    {
        std::ofstream csv(out / "are_per_flight.csv");
        csv << "flight_id,are\n";
        for (std::size_t i = 0; i < linear_report.are.size(); ++i)
            csv << linear_report.flight_ids[i] << ','
                << io::format_double(linear_report.are[i]) << "\n";
    }
    outputs.push_back((out / "are_per_flight.csv").string());

    io::Manifest manifest;
    manifest.command = "evaluate";
    manifest.config_paths = {flights_path, drone_path, models_path};
    manifest.parameters["method"] = method;
    manifest.parameters["train_count"] = train_count;
    manifest.parameters["seed"] = seed;
    manifest.parameters["folds"] = folds;
    manifest.outputs = outputs;
    io::write_manifest(out, manifest);

    std::cout << "mean ARE (" << linear_report.method << "): " << linear_report.mean
              << "\n";
    return 0;
}

int run_range(const mission::MissionSpec& base_spec, double battery_wh,
              double one_way_km, const std::string& models_path,
              const std::string& drone_path, const std::string& sweep_csv,
              const CommonIo& common) {
    const auto models = io::load_models(resolve_data_path(models_path));
    const auto drone = io::load_drone(resolve_data_path(drone_path));
    const physics::Environment env;
    const double e_max = battery_wh > 0.0 ? battery_wh : drone.battery_capacity;

    mission::MissionSpec spec = base_spec;
    if (spec.cruise_speed > mission::kMaxValidatedCruiseSpeed)
        std::cerr << "warning: cruise speed " << spec.cruise_speed
                  << " m/s exceeds the validated range (<= "
                  << mission::kMaxValidatedCruiseSpeed << " m/s)\n";

    const double range_km = mission::two_way_range(models, spec, drone, env, e_max);
    spec.one_way_distance = one_way_km > 0.0 ? one_way_km : range_km / 2.0;
    const auto breakdown = mission::mission_energy(models, spec, drone, env);
    const double intensity = mission::per_km_intensity(models, spec, drone, env);

    const json result{
        {"two_way_range_km", range_km},
        {"delivery_range_km", range_km / 2.0},
        {"one_way_distance_km", spec.one_way_distance},
        {"battery_wh", e_max},
        {"round_trip_energy_wh", breakdown.total()},
        {"per_km_intensity_mj", intensity},
        {"breakdown_wh",
         {{"takeoff_loaded", breakdown.takeoff_loaded},
          {"cruise_loaded", breakdown.cruise_loaded},
          {"landing_loaded", breakdown.landing_loaded},
          {"takeoff_unloaded", breakdown.takeoff_unloaded},
          {"cruise_unloaded", breakdown.cruise_unloaded},
          {"landing_unloaded", breakdown.landing_unloaded}}},
        {"mission",
         {{"payload_kg", spec.payload_mass},
          {"cruise_speed_ms", spec.cruise_speed},
          {"cruise_altitude_m", spec.cruise_altitude},
          {"takeoff_speed_ms", spec.takeoff_speed},
          {"landing_speed_ms", spec.landing_speed}}}};
    std::cout << result.dump(2) << "\n";

    const fs::path out = common.out();
    io::save_json(out / "range.json", result);
    std::vector<std::string> outputs{(out / "range.json").string()};

    if (!sweep_csv.empty()) {
        std::ofstream csv(out / sweep_csv);
        csv << "mass,speed,distance,energy_wh\n";
        for (double speed : {4.0, 12.0}) {
            mission::MissionSpec s = spec;
            s.cruise_speed = speed;
            const double d_max = mission::two_way_range(models, s, drone, env, e_max);
            for (double d = 0.5; d <= d_max / 2.0; d += 0.5) {
                s.one_way_distance = d;
                const double wh = mission::mission_energy(models, s, drone, env).total();
                csv << io::format_double(drone.empty_mass + s.payload_mass) << ','
                    << io::format_double(speed) << ',' << io::format_double(d) << ','
                    << io::format_double(wh) << "\n";
            }
        }
        outputs.push_back((out / sweep_csv).string());
    }

    io::Manifest manifest;
    manifest.command = "range";
    manifest.config_paths = {models_path, drone_path};
    manifest.parameters["mission"] = result["mission"];
    manifest.parameters["battery_wh"] = e_max;
    manifest.outputs = outputs;
    io::write_manifest(out, manifest);
    return 0;
}

int run_sweep(const std::string& models_path, const std::string& drone_path,
              const std::string& factors_path, std::vector<double> payloads,
              std::vector<double> speeds, double altitude, double step,
              const CommonIo& common) {
    const auto models = io::load_models(resolve_data_path(models_path));
    const auto drone = io::load_drone(resolve_data_path(drone_path));
    const physics::Environment env;
    const fs::path out = common.out();

    std::ofstream csv(out / "figure1a.csv");
    csv << "mass,speed,distance,energy_wh\n";
    for (double payload : payloads) {
        for (double speed : speeds) {
            mission::MissionSpec spec;
            spec.payload_mass = payload;
            spec.cruise_speed = speed;
            spec.cruise_altitude = altitude;
            const double d_max =
                mission::two_way_range(models, spec, drone, env, drone.battery_capacity);
            for (double d = step; d <= d_max / 2.0 + 1e-9; d += step) {
                spec.one_way_distance = d;
                const double wh = mission::mission_energy(models, spec, drone, env).total();
                csv << io::format_double(drone.empty_mass + payload) << ','
                    << io::format_double(speed) << ',' << io::format_double(d) << ','
                    << io::format_double(wh) << "\n";
            }
        }
    }
    std::vector<std::string> outputs{(out / "figure1a.csv").string()};

    if (!factors_path.empty()) {
        const auto factors = io::load_factors(resolve_data_path(factors_path));
        std::ofstream ghg(out / "figure1b.csv");
        ghg << "distance,ghg_g_low,ghg_g_base,ghg_g_high\n";
        mission::MissionSpec spec;
        spec.payload_mass = payloads.empty() ? 1.0 : payloads.back();
        spec.cruise_speed = speeds.empty() ? 12.0 : speeds.back();
        spec.cruise_altitude = altitude;
        const double d_max =
            mission::two_way_range(models, spec, drone, env, drone.battery_capacity);
        for (double d = step; d <= d_max / 2.0 + 1e-9; d += step) {
            spec.one_way_distance = d;
            const double grid_mj = fleet::grid_energy(
                mission::mission_energy(models, spec, drone, env).total() * kJoulesPerWh /
                    kJoulesPerMJ,
                factors);
            auto ghg_at = [&](double grid_factor, double battery_g_per_km) {
                return grid_mj * (grid_factor + factors.upstream_electricity) +
                       battery_g_per_km * 2.0 * d;
            };
            ghg << io::format_double(d) << ','
                << io::format_double(ghg_at(factors.grid_ghg_low, 0.23)) << ','
                << io::format_double(ghg_at(factors.grid_ghg_base, 0.76)) << ','
                << io::format_double(ghg_at(factors.grid_ghg_high, 1.52)) << "\n";
        }
        outputs.push_back((out / "figure1b.csv").string());
    }

    io::Manifest manifest;
    manifest.command = "sweep";
    manifest.config_paths = {models_path, drone_path};
    manifest.parameters["payloads"] = payloads;
    manifest.parameters["speeds"] = speeds;
    manifest.parameters["altitude"] = altitude;
    manifest.parameters["step"] = step;
    manifest.outputs = outputs;
    io::write_manifest(out, manifest);
    std::cout << "wrote " << outputs[0] << "\n";
    return 0;
}

int run_compare(const std::string& vehicles_path, const std::string& factors_path,
                const std::string& scenario_name, const std::string& baseline,
                const CommonIo& common) {
    const auto vehicles = io::load_vehicles(resolve_data_path(vehicles_path));
    const auto factors = io::load_factors(resolve_data_path(factors_path));
    const auto scenario = fleet::scenario_from_name(scenario_name);
    const auto rows = fleet::comparison_table(vehicles, factors, scenario, baseline);

    // Rendered table at published precision; files carry full precision.
    std::printf("%-28s %10s %10s %10s %10s %10s %10s\n", "vehicle", "MJ/km", "fuel g/km",
                "upstr g/km", "batt g/km", "MJ/pkg", "g/pkg");
    for (const auto& r : rows)
        std::printf("%-28s %10.2f %10.1f %10.1f %10.1f %10.2f %10.1f\n", r.name.c_str(),
                    r.energy_mj_per_km, r.fuel_ghg_g_per_km, r.upstream_ghg_g_per_km,
                    r.battery_ghg_g_per_km, r.energy_mj_per_package, r.ghg_g_per_package);

    const fs::path out = common.out();
    json rows_json = json::array();
    for (const auto& r : rows) {
        json entry{{"name", r.name},
                   {"energy_mj_per_km", r.energy_mj_per_km},
                   {"fuel_ghg_g_per_km", r.fuel_ghg_g_per_km},
                   {"upstream_ghg_g_per_km", r.upstream_ghg_g_per_km},
                   {"battery_ghg_g_per_km", r.battery_ghg_g_per_km},
                   {"energy_mj_per_package", r.energy_mj_per_package},
                   {"ghg_g_per_package", r.ghg_g_per_package}};
        if (!baseline.empty()) {
            entry["energy_reduction_vs_baseline"] = r.energy_reduction_vs_baseline;
            entry["ghg_reduction_vs_baseline"] = r.ghg_reduction_vs_baseline;
        }
        rows_json.push_back(entry);
    }
    io::save_json(out / "comparison.json",
                  json{{"scenario", scenario_name},
                       {"baseline", baseline},
                       {"rows", rows_json}});
    {
        std::ofstream csv(out / "comparison.csv");
        csv << "name,energy_mj_per_km,fuel_ghg_g_per_km,upstream_ghg_g_per_km,"
               "battery_ghg_g_per_km,energy_mj_per_package,ghg_g_per_package\n";
        for (const auto& r : rows)
            csv << r.name << ',' << io::format_double(r.energy_mj_per_km) << ','
                << io::format_double(r.fuel_ghg_g_per_km) << ','
                << io::format_double(r.upstream_ghg_g_per_km) << ','
                << io::format_double(r.battery_ghg_g_per_km) << ','
                << io::format_double(r.energy_mj_per_package) << ','
                << io::format_double(r.ghg_g_per_package) << "\n";
    }

    // Error-bar data: low/base/high per vehicle, energy and GHG views.
    const auto low = fleet::comparison_table(vehicles, factors, fleet::Scenario::low);
    const auto base = fleet::comparison_table(vehicles, factors, fleet::Scenario::base);
    const auto high = fleet::comparison_table(vehicles, factors, fleet::Scenario::high);
    {
        std::ofstream f2(out / "figure2.csv");
        f2 << "name,energy_mj_per_km_low,energy_mj_per_km_base,energy_mj_per_km_high,"
              "energy_mj_per_package_low,energy_mj_per_package_base,energy_mj_per_package_high\n";
        for (std::size_t i = 0; i < base.size(); ++i)
            f2 << base[i].name << ',' << io::format_double(low[i].energy_mj_per_km) << ','
               << io::format_double(base[i].energy_mj_per_km) << ','
               << io::format_double(high[i].energy_mj_per_km) << ','
               << io::format_double(low[i].energy_mj_per_package) << ','
               << io::format_double(base[i].energy_mj_per_package) << ','
               << io::format_double(high[i].energy_mj_per_package) << "\n";
        std::ofstream f3(out / "figure3.csv");
        f3 << "name,ghg_g_per_km_low,ghg_g_per_km_base,ghg_g_per_km_high,"
              "ghg_g_per_package_low,ghg_g_per_package_base,ghg_g_per_package_high\n";
        auto total = [](const fleet::ComparisonRow& r) {
            return r.fuel_ghg_g_per_km + r.upstream_ghg_g_per_km + r.battery_ghg_g_per_km;
        };
        for (std::size_t i = 0; i < base.size(); ++i)
            f3 << base[i].name << ',' << io::format_double(total(low[i])) << ','
               << io::format_double(total(base[i])) << ','
               << io::format_double(total(high[i])) << ','
               << io::format_double(low[i].ghg_g_per_package) << ','
               << io::format_double(base[i].ghg_g_per_package) << ','
               << io::format_double(high[i].ghg_g_per_package) << "\n";
    }

    io::Manifest manifest;
    manifest.command = "compare";
    manifest.config_paths = {vehicles_path, factors_path};
    manifest.parameters["scenario"] = scenario_name;
    manifest.parameters["baseline"] = baseline;
    manifest.outputs = {(out / "comparison.json").string(), (out / "comparison.csv").string(),
                        (out / "figure2.csv").string(), (out / "figure3.csv").string()};
    io::write_manifest(out, manifest);
    return 0;
}

int run_synth(const std::string& drone_path, std::vector<double> payloads,
              std::vector<double> altitudes, std::vector<double> speeds, int repeats,
              std::vector<double> b1, std::vector<double> b0, double noise_sd,
              double cruise_distance, std::uint64_t seed, const CommonIo& common) {
    if (repeats < 1 || payloads.empty() || altitudes.empty() || speeds.empty())
        throw InvalidSpec("synth: empty generator grid");
    auto coeff3 = [](std::vector<double> v, const char* name) -> std::array<double, 3> {
        if (v.size() == 1) return {v[0], v[0], v[0]};
        if (v.size() == 3) return {v[0], v[1], v[2]};
        throw InvalidSpec(std::string("synth: ") + name + " needs 1 or 3 values");
    };
    const auto drone = io::load_drone(resolve_data_path(drone_path));
    const physics::Environment env;
    synth::PowerLaw law;
    law.b1 = coeff3(b1, "--b1");
    law.b0 = coeff3(b0, "--b0");
    law.noise_sd = noise_sd;

    const fs::path out = common.out();
    std::vector<io::FlightEntry> index;
    int id = 1;
    for (double payload : payloads)
        for (double altitude : altitudes)
            for (double speed : speeds)
                for (int rep = 0; rep < repeats; ++rep) {
                    synth::TrapezoidSpec spec;
                    spec.payload_mass = payload;
                    spec.target_altitude = altitude;
                    spec.target_speed = speed;
                    spec.cruise_distance = cruise_distance;
                    const auto flight =
                        synth::make_flight(id, spec, law, drone, env, seed);
                    const std::string name = "flight_" + std::to_string(id) + ".csv";
                    io::write_flight_csv(out / name, flight);
                    io::FlightEntry entry;
                    entry.meta = {id, payload, altitude, speed};
                    entry.csv_path = name;
                    index.push_back(entry);
                    ++id;
                }
    io::save_flight_index(out / "flights_index.json", index);

    io::Manifest manifest;
    manifest.command = "synth";
    manifest.config_paths = {drone_path};
    manifest.parameters["seed"] = seed;
    manifest.parameters["true_b1"] = law.b1;
    manifest.parameters["true_b0"] = law.b0;
    manifest.parameters["noise_sd"] = noise_sd;
    manifest.parameters["flights"] = index.size();
    manifest.outputs = {(out / "flights_index.json").string()};
    io::write_manifest(out, manifest);
    std::cout << "wrote " << index.size() << " flights to " << out.string() << "\n";
    return 0;
}

// Least-squares fit of the drone profile's empty mass against the reference
// mission anchors (vertical energy, round-trip energy at 11 km, two-way
// range), with the rotor area fixed. Golden-section over the mass.
int run_calibrate(const std::string& models_path, double rotor_area,
                  double anchor_vertical_wh, double anchor_trip_wh,
                  double anchor_range_km, const CommonIo& common) {
    const auto models = io::load_models(resolve_data_path(models_path));
    const physics::Environment env;

    auto objective = [&](double empty_mass) {
        physics::DroneConfig cfg;
        cfg.empty_mass = empty_mass;
        cfg.rotor_area_total = rotor_area;
        mission::MissionSpec spec;
        spec.payload_mass = 1.0;
        spec.cruise_speed = 12.0;
        spec.cruise_altitude = 100.0;
        const double p_l = physics::induced_power(cfg.empty_mass + 1.0, env, cfg);
        const double p_u = physics::induced_power(cfg.empty_mass, env, cfg);
        const auto& tk = models.require(estimation::Regime::takeoff);
        const auto& ld = models.require(estimation::Regime::landing);
        const double vertical =
            mission::vertical_segment_energy(tk, p_l, 100.0, 2.5) +
            mission::vertical_segment_energy(tk, p_u, 100.0, 2.5) +
            mission::vertical_segment_energy(ld, p_l, 100.0, 2.0) +
            mission::vertical_segment_energy(ld, p_u, 100.0, 2.0);
        spec.one_way_distance = anchor_range_km / 2.0;
        const double trip = mission::mission_energy(models, spec, cfg, env).total();
        const double range = mission::two_way_range(models, spec, cfg, env, 130.0);
        auto rel = [](double value, double anchor) { return value / anchor - 1.0; };
        const double e1 = rel(vertical, anchor_vertical_wh);
        const double e2 = rel(trip, anchor_trip_wh);
        const double e3 = rel(range, anchor_range_km);
        return e1 * e1 + e2 * e2 + e3 * e3;
    };

    double lo = 1.0, hi = 6.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = objective(a), fb = objective(b);
    for (int iter = 0; iter < 100; ++iter) {
        if (fa < fb) {
            hi = b; b = a; fb = fa;
            a = hi - phi * (hi - lo);
            fa = objective(a);
        } else {
            lo = a; a = b; fa = fb;
            b = lo + phi * (hi - lo);
            fb = objective(b);
        }
    }
    const double empty_mass = 0.5 * (lo + hi);

    physics::DroneConfig cfg;
    cfg.empty_mass = empty_mass;
    cfg.rotor_area_total = rotor_area;
    const json profile = io::drone_to_json(cfg);
    std::cout << profile.dump(2) << "\n";

    const fs::path out = common.out();
    io::save_json(out / "calibrated_drone.json", profile);
    io::Manifest manifest;
    manifest.command = "calibrate";
    manifest.config_paths = {models_path};
    manifest.parameters["rotor_area_total_m2"] = rotor_area;
    manifest.parameters["anchor_vertical_wh"] = anchor_vertical_wh;
    manifest.parameters["anchor_trip_wh"] = anchor_trip_wh;
    manifest.parameters["anchor_range_km"] = anchor_range_km;
    manifest.parameters["objective"] = objective(empty_mass);
    manifest.outputs = {(out / "calibrated_drone.json").string()};
    io::write_manifest(out, manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadcopter delivery energy toolkit"};
    app.require_subcommand(1);

    CommonIo common;
    segmentation::SegmentationParams seg_params;
    std::string flights_path = "flights_index.json";
    std::string column_map_path, drone_path = "data/m100.json";
    std::string models_path = "models.json";

    // segment
    auto* segment = app.add_subcommand("segment", "split flights into regimes");
    segment->add_option("--flights", flights_path, "flight index JSON");
    segment->add_option("--column-map", column_map_path, "CSV column map JSON");
    segment->add_option("--out", common.out_dir, "output directory");
    add_segmentation_flags(segment, seg_params);

    // fit
    int train_count = 120, bootstrap = 1000;
    std::uint64_t seed = 0;
    auto* fit = app.add_subcommand("fit", "fit per-regime linear models");
    fit->add_option("--flights", flights_path, "flight index JSON");
    fit->add_option("--column-map", column_map_path, "CSV column map JSON");
    fit->add_option("--drone", drone_path, "drone profile JSON");
    fit->add_option("--train-count", train_count, "flights in the train fold");
    fit->add_option("--bootstrap", bootstrap, "bootstrap replications");
    fit->add_option("--seed", seed, "split/bootstrap seed");
    fit->add_option("--out", common.out_dir, "output directory");
    add_segmentation_flags(fit, seg_params);

    // evaluate
    std::string method = "linear";
    int folds = 5;
    gbt::HyperGrid grid;
    auto* evaluate = app.add_subcommand("evaluate", "flight-level ARE on the test fold");
    evaluate->add_option("--flights", flights_path, "flight index JSON");
    evaluate->add_option("--column-map", column_map_path, "CSV column map JSON");
    evaluate->add_option("--drone", drone_path, "drone profile JSON");
    evaluate->add_option("--models", models_path, "fitted models JSON");
    evaluate->add_option("--method", method, "linear|gbt")
        ->check(CLI::IsMember({"linear", "gbt"}));
    evaluate->add_option("--train-count", train_count, "flights in the train fold");
    evaluate->add_option("--seed", seed, "split seed");
    evaluate->add_option("--folds", folds, "CV folds for gbt tuning");
    evaluate->add_option("--gbt-learning-rates", grid.learning_rates, "grid axis");
    evaluate->add_option("--gbt-depths", grid.max_depths, "grid axis");
    evaluate->add_option("--gbt-gammas", grid.gammas, "grid axis");
    evaluate->add_option("--gbt-rounds", grid.rounds, "boosting rounds");
    evaluate->add_option("--out", common.out_dir, "output directory");
    add_segmentation_flags(evaluate, seg_params);

    // range
    mission::MissionSpec spec;
    double battery_wh = 0.0, one_way_km = 0.0;
    std::string sweep_csv;
    auto* range = app.add_subcommand("range", "mission energy and two-way range");
    range->add_option("--payload-kg", spec.payload_mass, "payload mass")->required();
    range->add_option("--cruise-speed", spec.cruise_speed, "m/s")->required();
    range->add_option("--altitude", spec.cruise_altitude, "cruise altitude m")->required();
    range->add_option("--takeoff-speed", spec.takeoff_speed, "m/s");
    range->add_option("--landing-speed", spec.landing_speed, "m/s");
    range->add_option("--battery-wh", battery_wh, "usable battery energy");
    range->add_option("--distance-km", one_way_km, "one-way distance (default: range/2)");
    range->add_option("--models", models_path, "fitted models JSON");
    range->add_option("--drone", drone_path, "drone profile JSON");
    range->add_option("--sweep-csv", sweep_csv, "also write a distance sweep CSV");
    range->add_option("--out", common.out_dir, "output directory");

    // sweep
    std::vector<double> payloads{0.0, 0.5, 1.0}, speeds{4.0, 12.0};
    double altitude = 100.0, step = 0.25;
    std::string factors_path = "data/factors.json";
    auto* sweep = app.add_subcommand("sweep", "energy-vs-distance grids (figure data)");
    sweep->add_option("--models", models_path, "fitted models JSON");
    sweep->add_option("--drone", drone_path, "drone profile JSON");
    sweep->add_option("--factors", factors_path, "emission factors JSON");
    sweep->add_option("--payloads", payloads, "payload masses kg");
    sweep->add_option("--speeds", speeds, "cruise speeds m/s");
    sweep->add_option("--altitude", altitude, "cruise altitude m");
    sweep->add_option("--step", step, "distance step km");
    sweep->add_option("--out", common.out_dir, "output directory");

    // compare
    std::string vehicles_path = "data/vehicles.json", scenario = "base",
                baseline;
    auto* compare = app.add_subcommand("compare", "per-km and per-package comparison");
    compare->add_option("--vehicles", vehicles_path, "vehicle registry JSON");
    compare->add_option("--factors", factors_path, "emission factors JSON");
    compare->add_option("--scenario", scenario, "base|low|high")
        ->check(CLI::IsMember({"base", "low", "high"}));
    compare->add_option("--baseline", baseline, "vehicle name for reduction columns");
    compare->add_option("--out", common.out_dir, "output directory");

    // synth
    std::vector<double> synth_altitudes{25, 50, 75, 100};
    std::vector<double> synth_speeds{4, 6, 8, 10, 12};
    std::vector<double> synth_payloads{0.0, 0.25, 0.5};
    std::vector<double> b1{2.0}, b0{10.0};
    double noise_sd = 0.0, cruise_distance = 600.0;
    int repeats = 2;
    auto* synth_cmd = app.add_subcommand("synth", "generate synthetic trapezoid flights");
    synth_cmd->add_option("--drone", drone_path, "drone profile JSON");
    synth_cmd->add_option("--payloads", synth_payloads, "payload grid kg");
    synth_cmd->add_option("--altitudes", synth_altitudes, "altitude grid m");
    synth_cmd->add_option("--speeds", synth_speeds, "speed grid m/s");
    synth_cmd->add_option("--repeats", repeats, "flights per grid cell");
    synth_cmd->add_option("--b1", b1, "true slope (1 or 3 values)");
    synth_cmd->add_option("--b0", b0, "true intercept (1 or 3 values)");
    synth_cmd->add_option("--noise-sd", noise_sd, "per-sample power noise W");
    synth_cmd->add_option("--cruise-distance", cruise_distance, "m");
    synth_cmd->add_option("--seed", seed, "generator seed");
    synth_cmd->add_option("--out", common.out_dir, "output directory");

    // calibrate
    double rotor_area = 0.3425;
    double anchor_vertical = 19.4, anchor_trip = 120.0, anchor_range = 11.0;
    auto* calibrate =
        app.add_subcommand("calibrate", "fit the drone profile to the reference mission");
    calibrate->add_option("--models", models_path, "reference coefficients JSON");
    calibrate->add_option("--rotor-area", rotor_area, "total rotor area m^2");
    calibrate->add_option("--anchor-vertical-wh", anchor_vertical, "vertical energy anchor");
    calibrate->add_option("--anchor-trip-wh", anchor_trip, "round-trip energy anchor");
    calibrate->add_option("--anchor-range-km", anchor_range, "two-way range anchor");
    calibrate->add_option("--out", common.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*segment)
            return run_segment(flights_path, column_map_path, seg_params, common);
        if (*fit)
            return run_fit(flights_path, column_map_path, drone_path, train_count,
                           bootstrap, seed, seg_params, common);
        if (*evaluate)
            return run_evaluate(flights_path, column_map_path, drone_path, models_path,
                                method, train_count, seed, folds, grid, seg_params,
                                common);
        if (*range)
            return run_range(spec, battery_wh, one_way_km, models_path, drone_path,
                             sweep_csv, common);
        if (*sweep)
            return run_sweep(models_path, drone_path, factors_path, payloads, speeds,
                             altitude, step, common);
        if (*compare)
            return run_compare(vehicles_path, factors_path, scenario, baseline, common);
        if (*synth_cmd)
            return run_synth(drone_path, synth_payloads, synth_altitudes, synth_speeds,
                             repeats, b1, b0, noise_sd, cruise_distance, seed, common);
        if (*calibrate)
            return run_calibrate(models_path, rotor_area, anchor_vertical, anchor_trip,
                                 anchor_range, common);
    } catch (const Error& e) {
        std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}
