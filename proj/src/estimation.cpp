#include "aeroamp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aeroamp/numeric.hpp"
#include "aeroamp/rng.hpp"

namespace aeroamp::estimation {

SplitPlan stratified_split(std::vector<int> flight_ids, int train_count,
                           std::uint64_t seed,
                           const std::map<int, FlightCell>* metadata) {
    std::sort(flight_ids.begin(), flight_ids.end());
    flight_ids.erase(std::unique(flight_ids.begin(), flight_ids.end()), flight_ids.end());
    const int n = static_cast<int>(flight_ids.size());
    if (train_count <= 0 || train_count >= n)
        throw TrainCountTooLarge("stratified_split: train_count " +
                                 std::to_string(train_count) + " with " +
                                 std::to_string(n) + " flights");

    // Group ids by grid cell; without metadata everything is one cell.
    std::map<FlightCell, std::vector<int>> cells;
    for (int id : flight_ids) {
        FlightCell cell{};
        if (metadata) {
            auto it = metadata->find(id);
            if (it != metadata->end()) cell = it->second;
        }
        cells[cell].push_back(id);
    }

    // Largest-remainder allocation of the train quota across cells.
    struct CellQuota {
        std::vector<int>* ids;
        int quota;
        double remainder;
        std::size_t order;
    };
    std::vector<CellQuota> quotas;
    quotas.reserve(cells.size());
    int assigned = 0;
    std::size_t order = 0;
    for (auto& [cell, ids] : cells) {
        const double ideal =
            static_cast<double>(train_count) * static_cast<double>(ids.size()) / n;
        const int q = static_cast<int>(std::floor(ideal));
        quotas.push_back({&ids, q, ideal - q, order++});
        assigned += q;
    }
    int leftover = train_count - assigned;
    std::vector<std::size_t> by_remainder(quotas.size());
    for (std::size_t i = 0; i < quotas.size(); ++i) by_remainder[i] = i;
    std::sort(by_remainder.begin(), by_remainder.end(), [&](std::size_t a, std::size_t b) {
        if (quotas[a].remainder != quotas[b].remainder)
            return quotas[a].remainder > quotas[b].remainder;
        return quotas[a].order < quotas[b].order;
    });
    for (std::size_t i = 0; i < by_remainder.size() && leftover > 0; ++i) {
        auto& q = quotas[by_remainder[i]];
        if (q.quota < static_cast<int>(q.ids->size())) {
            ++q.quota;
            --leftover;
        }
    }
    // Rare fallback when remainders ran out before the quota was filled.
    for (auto& q : quotas) {
        while (leftover > 0 && q.quota < static_cast<int>(q.ids->size())) {
            ++q.quota;
            --leftover;
        }
    }

    SplitPlan plan;
    plan.seed = seed;
    for (auto& q : quotas) {
        std::vector<int> ids = *q.ids;  // already ascending
        auto engine = rng::substream(seed, q.order);
        rng::shuffle(ids, engine);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (static_cast<int>(i) < q.quota)
                plan.train_ids.push_back(ids[i]);
            else
                plan.test_ids.push_back(ids[i]);
        }
    }
    std::sort(plan.train_ids.begin(), plan.train_ids.end());
    std::sort(plan.test_ids.begin(), plan.test_ids.end());
    return plan;
}

namespace {

struct OlsFit {
    double b1, b0;
};

OlsFit ols(std::span<const Observation> obs) {
    const Eigen::Index n = static_cast<Eigen::Index>(obs.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = obs[static_cast<std::size_t>(i)].p_induced;
        design(i, 1) = 1.0;
        y[i] = obs[static_cast<std::size_t>(i)].mean_power;
    }
    const double mean_x = design.col(0).mean();
    const double sxx = (design.col(0).array() - mean_x).square().sum();
    const double scale = std::max(1.0, mean_x * mean_x) * static_cast<double>(n);
    if (sxx <= 1e-12 * scale)
        throw DegenerateDesign("fit_regime_model: induced power has zero variance");

    const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(y);
    return {beta[0], beta[1]};
}

}  // namespace

RegimeModel fit_regime_model(std::span<const Observation> observations, Regime regime) {
    if (observations.size() < 3)
        throw TooFewObservations("fit_regime_model: need at least 3 observations");
    const OlsFit fit = ols(observations);
    RegimeModel m;
    m.regime = regime;
    m.b1 = fit.b1;
    m.b0 = fit.b0;
    m.n_train = static_cast<int>(observations.size());
    return m;
}

BootstrapResult bootstrap_se(std::span<const Observation> observations, Regime regime,
                             int replications, std::uint64_t seed) {
    if (replications < 2)
        throw InvalidInput("bootstrap_se: need at least 2 replications");
    if (observations.size() < 3)
        throw TooFewObservations("bootstrap_se: need at least 3 observations");

    const std::size_t n = observations.size();
    const int redraw_cap = 10 * replications;
    int redraws = 0;

    Eigen::ArrayXd b1s(replications), b0s(replications);
    std::vector<Observation> resampled(n);
    for (int r = 0; r < replications; ++r) {
        auto engine = rng::substream(seed, static_cast<std::uint64_t>(r));
        for (;;) {
            for (std::size_t i = 0; i < n; ++i)
                resampled[i] = observations[rng::uniform_index(engine, n)];
            try {
                const OlsFit fit = ols(resampled);
                b1s[r] = fit.b1;
                b0s[r] = fit.b0;
                break;
            } catch (const DegenerateDesign&) {
                if (++redraws > redraw_cap)
                    throw DegenerateDesign(
                        "bootstrap_se: degenerate replicates exceeded redraw cap");
            }
        }
    }
    (void)regime;

    BootstrapResult out;
    out.se_b1 = sample_stddev(b1s);
    out.se_b0 = sample_stddev(b0s);
    out.degenerate_redraws = redraws;
    return out;
}

AreReport evaluate_are(std::span<const FlightEnergyObs> test_flights,
                       const RegimeModelSet& models, const std::string& method_label) {
    std::vector<int> ids;
    std::vector<double> ares;
    ids.reserve(test_flights.size());
    ares.reserve(test_flights.size());
    for (const auto& flight : test_flights) {
        if (flight.measured_energy <= 0.0)
            throw ZeroMeasuredEnergy("evaluate_are: flight " +
                                     std::to_string(flight.flight_id) +
                                     " has non-positive measured energy");
        double estimated = 0.0;
        for (std::size_t r = 0; r < 3; ++r) {
            const auto& model = models.require(static_cast<Regime>(r));
            estimated += predict_mean_power(model, flight.p_induced) * flight.durations[r];
        }
        ids.push_back(flight.flight_id);
        ares.push_back(std::abs(flight.measured_energy - estimated) /
                       flight.measured_energy);
    }
    return make_are_report(method_label, std::move(ids), std::move(ares));
}

AreReport make_are_report(std::string method_label, std::vector<int> flight_ids,
                          std::vector<double> are_values) {
    AreReport report;
    report.method = std::move(method_label);
    report.flight_ids = std::move(flight_ids);
    report.are = std::move(are_values);
    if (!report.are.empty()) {
        Eigen::Map<const Eigen::ArrayXd> v(report.are.data(),
                                           static_cast<Eigen::Index>(report.are.size()));
        report.mean = v.mean();
        report.max = v.maxCoeff();
        report.median = median(v);
    }
    return report;
}

}  // namespace aeroamp::estimation
