#include <doctest.h>

#include <algorithm>
#include <set>

#include "aeroamp/estimation.hpp"
#include "oracles.hpp"
#include "synth_data.hpp"

using namespace aeroamp;
using estimation::FlightCell;
using estimation::Observation;
using estimation::Regime;
using estimation::RegimeModel;
using estimation::RegimeModelSet;

TEST_SUITE("estimation") {

TEST_CASE("stratified split: sizes, determinism, disjointness") {
    std::vector<int> ids(187);
    for (int i = 0; i < 187; ++i) ids[i] = i + 1;
    const auto plan = estimation::stratified_split(ids, 120, 7);
    CHECK(plan.train_ids.size() == 120);
    CHECK(plan.test_ids.size() == 67);

    std::set<int> all(plan.train_ids.begin(), plan.train_ids.end());
    all.insert(plan.test_ids.begin(), plan.test_ids.end());
    CHECK(all.size() == 187);

    const auto again = estimation::stratified_split(ids, 120, 7);
    CHECK(plan.train_ids == again.train_ids);
    CHECK(plan.test_ids == again.test_ids);

    const auto other = estimation::stratified_split(ids, 120, 8);
    CHECK(plan.train_ids != other.train_ids);

    CHECK_THROWS_AS(estimation::stratified_split(ids, 187, 0),
                    TrainCountTooLarge);
    CHECK_THROWS_AS(estimation::stratified_split(ids, 0, 0), TrainCountTooLarge);
}

TEST_CASE("stratified split balances grid cells") {
    // 4 ids in 2 cells, train_count 2: one id per cell on each side.
    std::vector<int> ids{1, 2, 3, 4};
    std::map<int, FlightCell> meta{{1, {0.0, 25, 4}},
                                   {2, {0.0, 25, 4}},
                                   {3, {0.5, 100, 12}},
                                   {4, {0.5, 100, 12}}};
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto plan = estimation::stratified_split(ids, 2, seed, &meta);
        auto cell_of = [&](int id) { return id <= 2 ? 0 : 1; };
        CHECK(plan.train_ids.size() == 2);
        CHECK(cell_of(plan.train_ids[0]) + cell_of(plan.train_ids[1]) == 1);
        CHECK(cell_of(plan.test_ids[0]) + cell_of(plan.test_ids[1]) == 1);
    }
}

TEST_CASE("noiseless recovery is exact") {
    const auto obs = synth_data::linear_observations(10, 2.0, 10.0, 0.0, 5);
    const auto model = estimation::fit_regime_model(obs, Regime::cruise);
    CHECK(model.b1 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(model.b0 == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(model.n_train == 10);
}

TEST_CASE("fit matches the closed-form oracle on noisy data") {
    const auto obs = synth_data::linear_observations(60, 1.7, 15.0, 5.0, 6);
    const auto model = estimation::fit_regime_model(obs, Regime::cruise);
    const auto oracle = oracles::ols_closed_form(obs);
    CHECK(model.b1 == doctest::Approx(oracle.b1).epsilon(1e-9));
    CHECK(model.b0 == doctest::Approx(oracle.b0).epsilon(1e-9));
}

TEST_CASE("degenerate design and too-few observations") {
    std::vector<Observation> flat{{1, 100.0, 210.0}, {2, 100.0, 211.0}, {3, 100.0, 212.0}};
    CHECK_THROWS_AS(estimation::fit_regime_model(flat, Regime::cruise), DegenerateDesign);
    std::vector<Observation> two{{1, 100.0, 210.0}, {2, 150.0, 310.0}};
    CHECK_THROWS_AS(estimation::fit_regime_model(two, Regime::cruise),
                    TooFewObservations);
}

TEST_CASE("residual orthogonality") {
    const auto obs = synth_data::linear_observations(80, 2.2, -3.0, 8.0, 9);
    const auto model = estimation::fit_regime_model(obs, Regime::takeoff);
    double sum_r = 0.0, sum_rx = 0.0, scale = 0.0;
    for (const auto& o : obs) {
        const double r = o.mean_power - estimation::predict_mean_power(model, o.p_induced);
        sum_r += r;
        sum_rx += r * o.p_induced;
        scale += std::abs(o.mean_power) * o.p_induced;
    }
    CHECK(std::abs(sum_r) <= 1e-9 * scale);
    CHECK(std::abs(sum_rx) <= 1e-9 * scale * 350.0);
}

TEST_CASE("fit is invariant to observation order") {
    auto obs = synth_data::linear_observations(50, 1.5, 20.0, 4.0, 10);
    const auto a = estimation::fit_regime_model(obs, Regime::landing);
    std::reverse(obs.begin(), obs.end());
    const auto b = estimation::fit_regime_model(obs, Regime::landing);
    CHECK(a.b1 == doctest::Approx(b.b1).epsilon(1e-12));
    CHECK(a.b0 == doctest::Approx(b.b0).epsilon(1e-12));
}

TEST_CASE("bootstrap: zero-noise SEs vanish") {
    const auto obs = synth_data::linear_observations(30, 2.0, 10.0, 0.0, 11);
    const auto boot = estimation::bootstrap_se(obs, Regime::cruise, 200, 0);
    CHECK(boot.se_b1 < 1e-9);
    CHECK(boot.se_b0 < 1e-9);
    CHECK(boot.degenerate_redraws == 0);
}

TEST_CASE("bootstrap SE within 15% of the analytic OLS SE") {
    const auto obs = synth_data::linear_observations(120, 1.69, 16.8, 5.0, 12);
    const auto boot = estimation::bootstrap_se(obs, Regime::cruise, 1000, 3);
    const auto oracle = oracles::ols_closed_form(obs);
    CHECK(boot.se_b1 == doctest::Approx(oracle.se_b1).epsilon(0.15));
    CHECK(boot.se_b0 == doctest::Approx(oracle.se_b0).epsilon(0.15));
}

TEST_CASE("bootstrap converges: 1000 vs 2000 replications within 10%") {
    const auto obs = synth_data::linear_observations(100, 2.0, 5.0, 6.0, 13);
    const auto a = estimation::bootstrap_se(obs, Regime::cruise, 1000, 4);
    const auto b = estimation::bootstrap_se(obs, Regime::cruise, 2000, 4);
    CHECK(a.se_b1 == doctest::Approx(b.se_b1).epsilon(0.10));
    CHECK(a.se_b0 == doctest::Approx(b.se_b0).epsilon(0.10));
}

TEST_CASE("bootstrap is deterministic per seed") {
    const auto obs = synth_data::linear_observations(40, 2.0, 5.0, 3.0, 14);
    const auto a = estimation::bootstrap_se(obs, Regime::cruise, 300, 9);
    const auto b = estimation::bootstrap_se(obs, Regime::cruise, 300, 9);
    CHECK(a.se_b1 == b.se_b1);
    CHECK(a.se_b0 == b.se_b0);
}

TEST_CASE("predict_mean_power with the reference coefficients") {
    RegimeModel landing{Regime::landing, 1.62, -4.7, 0, 0, 120};
    CHECK(estimation::predict_mean_power(landing, 0.0) == doctest::Approx(-4.7));
    RegimeModel cruise{Regime::cruise, 1.69, 16.8, 0, 0, 120};
    CHECK(estimation::predict_mean_power(cruise, 100.0) == doctest::Approx(185.8));
    RegimeModel identity{Regime::cruise, 1.0, 0.0, 0, 0, 3};
    CHECK(estimation::predict_mean_power(identity, 123.4) == doctest::Approx(123.4));
}

TEST_CASE("evaluate_are arithmetic and perfect-model zero") {
    RegimeModelSet models;
    models.set({Regime::takeoff, 2.0, 10.0, 0, 0, 10});
    models.set({Regime::cruise, 2.0, 10.0, 0, 0, 10});
    models.set({Regime::landing, 2.0, 10.0, 0, 0, 10});

    // 100 kJ measured vs 97 kJ estimated -> ARE 0.03.
    // p_induced 100 -> predicted power 210 W; durations chosen so the
    // estimate integrates to 97 kJ.
    std::vector<estimation::FlightEnergyObs> flights{
        {1, 100.0, {100.0, 261.904761904761904, 100.0}, 100000.0}};
    auto report = estimation::evaluate_are(flights, models);
    CHECK(report.method == "EnergyModel");
    CHECK(report.mean == doctest::Approx(0.03).epsilon(1e-9));

    // Perfect model: measured equals the estimate.
    std::vector<estimation::FlightEnergyObs> perfect;
    for (int i = 0; i < 5; ++i) {
        const double p = 100.0 + 20.0 * i;
        const double power = 2.0 * p + 10.0;
        perfect.push_back({i, p, {40.0, 60.0, 50.0}, power * 150.0});
    }
    const auto zero = estimation::evaluate_are(perfect, models);
    CHECK(zero.mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zero.max == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<estimation::FlightEnergyObs> bad{{1, 100.0, {1, 1, 1}, 0.0}};
    CHECK_THROWS_AS(estimation::evaluate_are(bad, models), ZeroMeasuredEnergy);
}

TEST_CASE("missing regime model is reported") {
    RegimeModelSet partial;
    partial.set({Regime::takeoff, 2.0, 10.0, 0, 0, 10});
    std::vector<estimation::FlightEnergyObs> flights{{1, 100.0, {10, 10, 10}, 1000.0}};
    CHECK_THROWS_AS(estimation::evaluate_are(flights, partial), MissingModel);
}

TEST_CASE("Monte Carlo: noisy fits stay within 3 analytic SEs") {
    int ok = 0;
    const int repeats = 100;
    for (int rep = 0; rep < repeats; ++rep) {
        const auto obs = synth_data::linear_observations(
            40, 2.0, 10.0, 5.0, 1000 + static_cast<std::uint64_t>(rep));
        const auto model = estimation::fit_regime_model(obs, Regime::cruise);
        const auto oracle = oracles::ols_closed_form(obs);
        if (std::abs(model.b1 - 2.0) <= 3.0 * oracle.se_b1 &&
            std::abs(model.b0 - 10.0) <= 3.0 * oracle.se_b0)
            ++ok;
    }
    CHECK(ok >= 99);
}

}  // TEST_SUITE
