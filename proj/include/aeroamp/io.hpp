#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "aeroamp/estimation.hpp"
#include "aeroamp/fleet.hpp"
#include "aeroamp/mission.hpp"
#include "aeroamp/pipeline.hpp"

namespace aeroamp::io {

using nlohmann::json;

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& value);

physics::DroneConfig load_drone(const std::filesystem::path& path);
json drone_to_json(const physics::DroneConfig& config);

estimation::RegimeModelSet load_models(const std::filesystem::path& path);
json models_to_json(const estimation::RegimeModelSet& models, std::uint64_t seed,
                    int replications);

fleet::EmissionFactors load_factors(const std::filesystem::path& path);
std::vector<fleet::VehicleProfile> load_vehicles(const std::filesystem::path& path);

// Flight metadata batch: [{flight_id, payload_kg, altitude_m, speed_ms, csv_path}].
struct FlightEntry {
    telemetry::FlightMetadata meta;
    std::string csv_path;
};
std::vector<FlightEntry> load_flight_index(const std::filesystem::path& path);
void save_flight_index(const std::filesystem::path& path,
                       const std::vector<FlightEntry>& entries);

std::map<std::string, std::string> load_column_map(const std::filesystem::path& path);

// Load and parse every flight in an index file; csv paths are resolved
// relative to the index file's directory.
std::vector<telemetry::FlightRecord> load_flights(
    const std::filesystem::path& index_path,
    const std::map<std::string, std::string>& column_map = {});

json segmentation_to_json(const telemetry::FlightRecord& flight,
                          const std::array<segmentation::RegimeSlice, 3>& slices,
                          const segmentation::SegmentationParams& params);
json params_to_json(const segmentation::SegmentationParams& params);

json are_report_to_json(const estimation::AreReport& report);

void write_flight_csv(const std::filesystem::path& path,
                      const telemetry::FlightRecord& flight);

// Run manifest written next to every command's outputs. Deterministic: no
// timestamps, stable key order.
struct Manifest {
    std::string command;
    std::vector<std::string> config_paths;
    std::map<std::string, json> parameters;
    std::vector<std::string> outputs;
};
void write_manifest(const std::filesystem::path& out_dir, const Manifest& manifest);

constexpr const char* kToolVersion = "aeroamp 0.1.0";

// Fixed-format floating point for CSV output (shortest round-trip).
std::string format_double(double v);

}  // namespace aeroamp::io
