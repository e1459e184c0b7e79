#include "aeroamp/pipeline.hpp"

#include <algorithm>
#include <set>

namespace aeroamp::pipeline {

const FlightRow& FlightTable::row(int flight_id) const {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const FlightRow& r) { return r.flight_id == flight_id; });
    if (it == rows.end())
        throw InvalidInput("FlightTable: unknown flight id " + std::to_string(flight_id));
    return *it;
}

std::vector<int> FlightTable::ids() const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.flight_id);
    return out;
}

FlightTable summarize_flights(const std::vector<telemetry::FlightRecord>& flights,
                              const physics::DroneConfig& config,
                              const physics::Environment& env,
                              const segmentation::SegmentationParams& params) {
    FlightTable table;
    for (const auto& flight : flights) {
        try {
            const auto slices = segmentation::detect_regimes(flight, params);
            FlightRow row;
            row.flight_id = flight.flight_id;
            row.payload_mass = flight.payload_mass;
            row.target_altitude = flight.target_altitude;
            row.target_speed = flight.target_speed;
            row.total_mass = config.empty_mass + flight.payload_mass;
            row.p_induced = physics::induced_power(row.total_mass, env, config);
            row.mean_wind = flight.has_wind() ? flight.wind_speed.mean() : 0.0;
            for (const auto& s : slices) {
                const auto r = static_cast<std::size_t>(s.regime);
                row.duration[r] = s.duration;
                row.mean_power[r] = s.mean_power;
                row.energy[r] = s.energy;
            }
            table.rows.push_back(row);
        } catch (const Error& e) {
            table.rejects.push_back({flight.flight_id, e.kind(), e.what()});
        }
    }
    return table;
}

namespace {

std::vector<estimation::Observation> regime_observations(const FlightTable& table,
                                                         const std::vector<int>& ids,
                                                         std::size_t regime) {
    std::set<int> wanted(ids.begin(), ids.end());
    std::vector<estimation::Observation> obs;
    for (const auto& row : table.rows)
        if (wanted.count(row.flight_id))
            obs.push_back({row.flight_id, row.p_induced, row.mean_power[regime]});
    return obs;
}

}  // namespace

estimation::RegimeModelSet fit_models(const FlightTable& table,
                                      const std::vector<int>& train_ids,
                                      int bootstrap_replications, std::uint64_t seed) {
    estimation::RegimeModelSet set;
    for (std::size_t r = 0; r < 3; ++r) {
        const auto regime = static_cast<Regime>(r);
        const auto obs = regime_observations(table, train_ids, r);
        auto model = estimation::fit_regime_model(obs, regime);
        if (bootstrap_replications > 0) {
            const auto boot = estimation::bootstrap_se(
                obs, regime, bootstrap_replications, seed + r);
            model.se_b1 = boot.se_b1;
            model.se_b0 = boot.se_b0;
        }
        set.set(model);
    }
    return set;
}

estimation::AreReport evaluate_linear(const FlightTable& table,
                                      const std::vector<int>& test_ids,
                                      const estimation::RegimeModelSet& models) {
    std::vector<estimation::FlightEnergyObs> obs;
    obs.reserve(test_ids.size());
    for (int id : test_ids) {
        const auto& row = table.row(id);
        obs.push_back({id, row.p_induced, row.duration, row.measured_energy()});
    }
    return estimation::evaluate_are(obs, models, "EnergyModel");
}

std::array<gbt::RegimeData, 3> gbt_datasets(const FlightTable& table,
                                            const std::vector<int>& flight_ids,
                                            const std::vector<std::string>& features) {
    std::set<int> wanted(flight_ids.begin(), flight_ids.end());
    std::array<gbt::RegimeData, 3> out;
    for (std::size_t r = 0; r < 3; ++r) {
        std::vector<const FlightRow*> rows;
        for (const auto& row : table.rows)
            if (wanted.count(row.flight_id)) rows.push_back(&row);
        auto& data = out[r];
        data.features.resize(static_cast<Eigen::Index>(rows.size()),
                             static_cast<Eigen::Index>(features.size()));
        data.mean_power.resize(static_cast<Eigen::Index>(rows.size()));
        data.duration.resize(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = *rows[i];
            for (std::size_t j = 0; j < features.size(); ++j) {
                const auto& name = features[j];
                double v = 0.0;
                if (name == "p_induced") v = row.p_induced;
                else if (name == "total_mass") v = row.total_mass;
                else if (name == "target_speed") v = row.target_speed;
                else if (name == "target_altitude") v = row.target_altitude;
                else if (name == "duration") v = row.duration[r];
                else if (name == "mean_wind") v = row.mean_wind;
                else throw InvalidInput("gbt_datasets: unknown feature '" + name + "'");
                data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            }
            data.mean_power[static_cast<Eigen::Index>(i)] = row.mean_power[r];
            data.duration[static_cast<Eigen::Index>(i)] = row.duration[r];
            data.flight_ids.push_back(row.flight_id);
        }
    }
    return out;
}

GbtEvaluation evaluate_gbt(const FlightTable& table, const std::vector<int>& train_ids,
                           const std::vector<int>& test_ids, const gbt::HyperGrid& grid,
                           int folds, std::uint64_t seed,
                           const std::vector<std::string>& features) {
    std::map<int, double> measured;
    for (const auto& row : table.rows) measured[row.flight_id] = row.measured_energy();

    GbtEvaluation out;
    const auto train_data = gbt_datasets(table, train_ids, features);
    out.cv = gbt::cv_grid_search(train_data, measured, grid, folds, seed);

    // Test-fold flight-level ARE with the retrained winner.
    const auto test_data = gbt_datasets(table, test_ids, features);
    std::vector<int> ids;
    std::vector<double> ares;
    for (int id : test_ids) {
        double estimated = 0.0;
        bool found = false;
        for (std::size_t r = 0; r < 3; ++r) {
            const auto& data = test_data[r];
            for (std::size_t i = 0; i < data.flight_ids.size(); ++i) {
                if (data.flight_ids[i] != id) continue;
                estimated += gbt::predict_gbt(
                                 out.cv.final_models[r],
                                 data.features.row(static_cast<Eigen::Index>(i)).transpose()) *
                             data.duration[static_cast<Eigen::Index>(i)];
                found = true;
            }
        }
        if (!found) continue;
        const double meas = measured.at(id);
        if (meas <= 0.0)
            throw ZeroMeasuredEnergy("evaluate_gbt: flight " + std::to_string(id));
        ids.push_back(id);
        ares.push_back(std::abs(meas - estimated) / meas);
    }
    out.report = estimation::make_are_report("BoostedTrees", std::move(ids), std::move(ares));
    return out;
}

}  // namespace aeroamp::pipeline
