#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aeroamp/segmentation.hpp"

namespace aeroamp::estimation {

using segmentation::Regime;

// Fitted mean-power model for one regime: P_mean = b1 * P_induced + b0.
struct RegimeModel {
    Regime regime = Regime::cruise;
    double b1 = 0.0;    // dimensionless
    double b0 = 0.0;    // W
    double se_b1 = 0.0;
    double se_b0 = 0.0;
    int n_train = 0;
};

// Three-regime model set; slots may be empty until fitted/loaded.
struct RegimeModelSet {
    std::array<std::optional<RegimeModel>, 3> models;

    const RegimeModel& require(Regime r) const {
        const auto& slot = models[static_cast<std::size_t>(r)];
        if (!slot)
            throw MissingModel(std::string("no model for regime ") +
                               segmentation::regime_name(r));
        return *slot;
    }
    void set(const RegimeModel& m) { models[static_cast<std::size_t>(m.regime)] = m; }
};

// One (P_induced, mean power) pair; the flight is the unit of observation.
struct Observation {
    int flight_id = 0;
    double p_induced = 0.0;   // W
    double mean_power = 0.0;  // W
};

struct SplitPlan {
    std::vector<int> train_ids, test_ids;
    std::uint64_t seed = 0;
};

// Experiment-grid coordinates used for stratification.
struct FlightCell {
    double payload = 0.0;
    double altitude = 0.0;
    double speed = 0.0;
    auto operator<=>(const FlightCell&) const = default;
};

// Flight-granularity split, deterministic per seed. With metadata the
// (payload, altitude, speed) cells are allocated to the train fold by
// largest remainder, remainders broken in cell order; the members drawn
// from each cell are chosen by a per-cell seeded shuffle.
SplitPlan stratified_split(std::vector<int> flight_ids, int train_count,
                           std::uint64_t seed,
                           const std::map<int, FlightCell>* metadata = nullptr);

// Ordinary least squares of mean power on induced power.
RegimeModel fit_regime_model(std::span<const Observation> observations, Regime regime);

struct BootstrapResult {
    double se_b1 = 0.0;
    double se_b0 = 0.0;
    int degenerate_redraws = 0;
};

// Nonparametric bootstrap over flights: resample observations with
// replacement, refit per replicate, report the standard deviation of each
// coefficient. Replicates use independent seeded substreams and are reduced
// in replicate order.
BootstrapResult bootstrap_se(std::span<const Observation> observations, Regime regime,
                             int replications, std::uint64_t seed);

inline double predict_mean_power(const RegimeModel& model, double p_induced) {
    return model.b1 * p_induced + model.b0;
}

struct AreReport {
    std::string method;  // "EnergyModel" or "BoostedTrees"
    std::vector<int> flight_ids;
    std::vector<double> are;
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
};

// Per-flight inputs for flight-level evaluation.
struct FlightEnergyObs {
    int flight_id = 0;
    double p_induced = 0.0;             // W, from flight total mass
    std::array<double, 3> durations{};  // s per regime
    double measured_energy = 0.0;       // J, integral of measured power
};

// Flight-resolution absolute relative error of the three-regime linear model.
AreReport evaluate_are(std::span<const FlightEnergyObs> test_flights,
                       const RegimeModelSet& models,
                       const std::string& method_label = "EnergyModel");

// Aggregate an externally computed per-flight ARE list (used by the boosted
// tree path, which produces its own estimates).
AreReport make_are_report(std::string method_label, std::vector<int> flight_ids,
                          std::vector<double> are_values);

}  // namespace aeroamp::estimation
