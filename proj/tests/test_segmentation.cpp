#include <doctest.h>

#include "aeroamp/segmentation.hpp"
#include "aeroamp/synth.hpp"
#include "oracles.hpp"

using namespace aeroamp;
using segmentation::Regime;
using segmentation::RegimeSlice;
using segmentation::SegmentationParams;

namespace {

telemetry::FlightRecord reference_trapezoid(synth::GroundTruth* truth = nullptr) {
    // Climb at 2.5 m/s to 100 m (40 s), cruise 60 s, descend at 2.0 m/s.
    synth::TrapezoidSpec spec;
    spec.payload_mass = 0.5;
    spec.target_altitude = 100.0;
    spec.target_speed = 10.0;
    spec.climb_speed = 2.5;
    spec.descent_speed = 2.0;
    spec.cruise_distance = 600.0;  // 60 s at 10 m/s
    spec.idle_before = 0.0;
    spec.idle_after = 2.0;
    synth::PowerLaw law;  // uniform 2*P_i + 10
    return synth::make_flight(1, spec, law, {}, {}, 0, truth);
}

double whole_flight_energy(const telemetry::FlightRecord& f, Eigen::Index start,
                           Eigen::Index last) {
    const Eigen::Index len = last - start + 1;
    return trapezoid(f.time.segment(start, len),
                     (f.voltage.segment(start, len) * f.current.segment(start, len)).eval());
}

}  // namespace

TEST_SUITE("segmentation") {

TEST_CASE("trapezoid boundaries land at the kinks") {
    synth::GroundTruth truth;
    const auto flight = reference_trapezoid(&truth);
    const auto slices = segmentation::detect_regimes(flight);

    CHECK(slices[0].regime == Regime::takeoff);
    CHECK(slices[1].regime == Regime::cruise);
    CHECK(slices[2].regime == Regime::landing);

    // Boundaries at t = 40 s and t = 100 s, within one sample at 5 Hz.
    CHECK(std::abs(slices[0].end_index - truth.cruise_start) <= 1);
    CHECK(std::abs(slices[1].end_index - truth.descent_start) <= 1);
    CHECK(flight.time[slices[0].end_index] == doctest::Approx(40.0).epsilon(0.01));
    CHECK(flight.time[slices[1].end_index] == doctest::Approx(100.0).epsilon(0.01));
    CHECK(std::abs(slices[0].start_index - truth.liftoff) <= 1);
    CHECK(std::abs(slices[2].end_index - 1 - truth.touchdown) <= 1);
}

TEST_CASE("all-zero altitude raises NoFlightDetected") {
    telemetry::FlightRecord f;
    const int n = 200;
    f.time = Eigen::ArrayXd::LinSpaced(n, 0.0, 39.8);
    f.voltage = Eigen::ArrayXd::Constant(n, 22.2);
    f.current = Eigen::ArrayXd::Constant(n, 1.0);
    f.pos_z = Eigen::ArrayXd::Zero(n);
    f.vel_z = Eigen::ArrayXd::Zero(n);
    CHECK_THROWS_AS(segmentation::detect_regimes(f), NoFlightDetected);
}

TEST_CASE("double climb raises AmbiguousProfile") {
    // Two stacked climbs with a level stretch in between.
    const double rate = 5.0;
    const int n = 1000;
    telemetry::FlightRecord f;
    f.time = Eigen::ArrayXd::LinSpaced(n, 0.0, (n - 1) / rate);
    f.voltage = Eigen::ArrayXd::Constant(n, 22.2);
    f.current = Eigen::ArrayXd::Constant(n, 10.0);
    f.pos_z.resize(n);
    f.vel_z.resize(n);
    f.target_altitude = 100.0;
    double alt = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = f.time[i];
        double vz = 0.0;
        if (t < 20.0) vz = 2.5;                    // climb to 50
        else if (t < 60.0) vz = 0.0;               // level
        else if (t < 80.0) vz = 2.5;               // climb to 100 (second cycle)
        else if (t < 120.0) vz = 0.0;              // level
        else if (t < 170.0) vz = -2.0;             // descend
        f.vel_z[i] = vz;
        f.pos_z[i] = alt;
        alt = std::max(0.0, alt + vz / rate);
    }
    CHECK_THROWS_AS(segmentation::detect_regimes(f), AmbiguousProfile);
}

TEST_CASE("slices are contiguous, ordered, and energy-conserving") {
    const auto flight = reference_trapezoid();
    const auto slices = segmentation::detect_regimes(flight);

    CHECK(slices[0].end_index == slices[1].start_index);
    CHECK(slices[1].end_index == slices[2].start_index);
    CHECK(slices[0].start_index < slices[0].end_index);

    const double sum = slices[0].energy + slices[1].energy + slices[2].energy;
    const Eigen::Index last = std::min(slices[2].end_index, flight.size() - 1);
    const double whole = whole_flight_energy(flight, slices[0].start_index, last);
    CHECK(sum == doctest::Approx(whole).epsilon(1e-12));

    const double dur_sum = slices[0].duration + slices[1].duration + slices[2].duration;
    CHECK(dur_sum ==
          doctest::Approx(flight.time[last] - flight.time[slices[0].start_index])
              .epsilon(1e-12));
}

TEST_CASE("segmentation is deterministic") {
    const auto flight = reference_trapezoid();
    const auto a = segmentation::detect_regimes(flight);
    const auto b = segmentation::detect_regimes(flight);
    for (int i = 0; i < 3; ++i) {
        CHECK(a[i].start_index == b[i].start_index);
        CHECK(a[i].end_index == b[i].end_index);
    }
}

TEST_CASE("altitude noise moves boundaries at most one dwell window") {
    synth::GroundTruth truth;
    auto flight = reference_trapezoid(&truth);
    const auto clean = segmentation::detect_regimes(flight);

    auto engine = rng::substream(11, 0);
    for (Eigen::Index i = 0; i < flight.size(); ++i)
        flight.pos_z[i] += rng::normal(engine, 0.0, 0.2);
    const auto noisy = segmentation::detect_regimes(flight);

    const SegmentationParams params;
    const double rate = 5.0;
    const auto dwell = static_cast<Eigen::Index>(params.min_dwell * rate);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(noisy[i].start_index - clean[i].start_index) <= dwell);
        CHECK(std::abs(noisy[i].end_index - clean[i].end_index) <= dwell);
    }
}

TEST_CASE("regime summary: constant slice and whole flight") {
    telemetry::FlightRecord f;
    const int n = 51;
    f.time = Eigen::ArrayXd::LinSpaced(n, 0.0, 10.0);
    f.voltage = Eigen::ArrayXd::Constant(n, 20.0);
    f.current = Eigen::ArrayXd::Constant(n, 10.0);  // 200 W
    RegimeSlice slice{Regime::cruise, 0, n, 0, 0, 0};
    const auto s = segmentation::regime_summary(f, slice);
    CHECK(s.duration == doctest::Approx(10.0));
    CHECK(s.mean_power == doctest::Approx(200.0));
    CHECK(s.energy == doctest::Approx(2000.0));

    const auto whole = telemetry::summarize(f);
    CHECK(s.energy == doctest::Approx(whole.energy));
    CHECK(s.mean_power == doctest::Approx(whole.mean_power));
}

TEST_CASE("regime summary: ramp slice has the analytic mean") {
    telemetry::FlightRecord f;
    const int n = 101;
    f.time = Eigen::ArrayXd::LinSpaced(n, 0.0, 10.0);
    f.voltage = Eigen::ArrayXd::Constant(n, 1.0);
    f.current = 30.0 * f.time;  // ramp 0 -> 300 W
    RegimeSlice slice{Regime::takeoff, 0, n, 0, 0, 0};
    const auto s = segmentation::regime_summary(f, slice);
    CHECK(s.mean_power == doctest::Approx(150.0).epsilon(1e-12));

    RegimeSlice out_of_range{Regime::takeoff, 50, n + 1, 0, 0, 0};
    CHECK_THROWS_AS(segmentation::regime_summary(f, out_of_range), Error);
}

}  // TEST_SUITE
