#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aeroamp/estimation.hpp"
#include "aeroamp/gbt.hpp"
#include "aeroamp/mission.hpp"

namespace aeroamp::pipeline {

using estimation::Regime;

// Per-flight summary after segmentation: everything the estimators consume.
struct FlightRow {
    int flight_id = 0;
    double payload_mass = 0.0;
    double target_altitude = 0.0;
    double target_speed = 0.0;
    double total_mass = 0.0;   // kg, empty + payload
    double p_induced = 0.0;    // W
    double mean_wind = 0.0;    // m/s, 0 when the log has no wind channel
    std::array<double, 3> duration{};    // s, per regime
    std::array<double, 3> mean_power{};  // W
    std::array<double, 3> energy{};      // J

    double measured_energy() const { return energy[0] + energy[1] + energy[2]; }
};

struct Reject {
    int flight_id = 0;
    std::string error_kind;
    std::string message;
};

struct FlightTable {
    std::vector<FlightRow> rows;
    std::vector<Reject> rejects;

    const FlightRow& row(int flight_id) const;
    std::vector<int> ids() const;
};

// Segment and summarize a batch of flights; segmentation failures land in
// the rejects list instead of aborting the batch.
FlightTable summarize_flights(const std::vector<telemetry::FlightRecord>& flights,
                              const physics::DroneConfig& config,
                              const physics::Environment& env,
                              const segmentation::SegmentationParams& params = {});

// OLS + bootstrap per regime on the given flights.
estimation::RegimeModelSet fit_models(const FlightTable& table,
                                      const std::vector<int>& train_ids,
                                      int bootstrap_replications, std::uint64_t seed);

estimation::AreReport evaluate_linear(const FlightTable& table,
                                      const std::vector<int>& test_ids,
                                      const estimation::RegimeModelSet& models);

// Feature assembly for the boosted-tree baseline, in this fixed order.
inline const std::vector<std::string>& gbt_feature_names() {
    static const std::vector<std::string> names = {
        "p_induced", "total_mass", "target_speed",
        "target_altitude", "duration", "mean_wind"};
    return names;
}

std::array<gbt::RegimeData, 3> gbt_datasets(const FlightTable& table,
                                            const std::vector<int>& flight_ids,
                                            const std::vector<std::string>& features =
                                                gbt_feature_names());

struct GbtEvaluation {
    gbt::CvResult cv;
    estimation::AreReport report;  // test-fold flight-level ARE
};

// Paper protocol: grid-search on the train fold with k-fold CV, retrain the
// winner on the whole train fold, evaluate flight-level ARE on the test fold.
GbtEvaluation evaluate_gbt(const FlightTable& table, const std::vector<int>& train_ids,
                           const std::vector<int>& test_ids, const gbt::HyperGrid& grid,
                           int folds, std::uint64_t seed,
                           const std::vector<std::string>& features = gbt_feature_names());

// Adequacy rule: the linear model counts as adequate when the boosted-tree
// baseline does not beat it by more than two percentage points of mean ARE.
inline bool linear_model_adequate(double mean_are_linear, double mean_are_gbt) {
    return std::abs(mean_are_gbt - mean_are_linear) <= 0.02;
}

}  // namespace aeroamp::pipeline
