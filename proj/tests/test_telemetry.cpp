#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "aeroamp/telemetry.hpp"
#include "oracles.hpp"

using namespace aeroamp;
using telemetry::FlightMetadata;
using telemetry::FlightRecord;
using telemetry::SensorStream;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

constexpr const char* kHeader =
    "time_s,voltage_v,current_a,pos_x_m,pos_y_m,pos_z_m,vel_x_ms,vel_y_ms,vel_z_ms\n";

}  // namespace

TEST_SUITE("telemetry") {

TEST_CASE("parse well-formed three-row file") {
    const auto path = write_temp("flight_ok.csv",
                                 std::string(kHeader) +
                                     "0.0,22.2,10,0,0,0,0,0,0\n"
                                     "0.2,22.1,11,0.1,0,0.5,0.5,0,2.5\n"
                                     "0.4,22.0,12,0.2,0,1.0,0.5,0,2.5\n");
    const auto flight = telemetry::parse_flight_csv(path.string(), {7, 0.25, 50, 8});
    CHECK(flight.size() == 3);
    CHECK(flight.flight_id == 7);
    CHECK(flight.payload_mass == doctest::Approx(0.25));
    CHECK(flight.voltage[1] == doctest::Approx(22.1));
    CHECK(flight.vel_z[2] == doctest::Approx(2.5));
    CHECK(flight.skipped_rows == 0);
    CHECK_FALSE(flight.has_wind());
}

TEST_CASE("missing mandatory column is reported by name") {
    const auto path = write_temp(
        "flight_nocur.csv",
        "time_s,voltage_v,pos_x_m,pos_y_m,pos_z_m,vel_x_ms,vel_y_ms,vel_z_ms\n"
        "0.0,22.2,0,0,0,0,0,0\n");
    CHECK_THROWS_WITH_AS(telemetry::parse_flight_csv(path.string(), {}),
                         doctest::Contains("current_a"), MissingColumn);
}

TEST_CASE("empty file and all-bad rows") {
    const auto empty = write_temp("flight_empty.csv", kHeader);
    CHECK_THROWS_AS(telemetry::parse_flight_csv(empty.string(), {}), EmptyFlight);

    const auto junk = write_temp("flight_junk.csv",
                                 std::string(kHeader) + "a,b,c,d,e,f,g,h,i\n");
    CHECK_THROWS_AS(telemetry::parse_flight_csv(junk.string(), {}), EmptyFlight);
}

TEST_CASE("more than 1% malformed rows rejects the file") {
    std::string content(kHeader);
    for (int i = 0; i < 50; ++i)
        content += std::to_string(0.2 * i) + ",22.2,10,0,0,0,0,0,0\n";
    content += "oops,22.2,10,0,0,0,0,0,0\n";  // 1 bad of 51 > 1%
    const auto path = write_temp("flight_bad.csv", content);
    CHECK_THROWS_AS(telemetry::parse_flight_csv(path.string(), {}), TooManyBadRows);
}

TEST_CASE("rows are sorted by time and unknown columns ignored") {
    const auto path = write_temp("flight_unsorted.csv",
                                 "time_s,voltage_v,current_a,pos_x_m,pos_y_m,pos_z_m,"
                                 "vel_x_ms,vel_y_ms,vel_z_ms,extra\n"
                                 "0.4,22.0,12,0,0,0,0,0,0,9\n"
                                 "0.0,22.2,10,0,0,0,0,0,0,9\n"
                                 "0.2,22.1,11,0,0,0,0,0,0,9\n");
    const auto flight = telemetry::parse_flight_csv(path.string(), {});
    CHECK(flight.time[0] == doctest::Approx(0.0));
    CHECK(flight.time[2] == doctest::Approx(0.4));
    CHECK(flight.current[2] == doctest::Approx(12));
}

TEST_CASE("column map renames source columns") {
    const auto path = write_temp("flight_mapped.csv",
                                 "t,v,i,x,y,z,vx,vy,vz\n"
                                 "0.0,22.2,10,0,0,0,0,0,0\n"
                                 "0.2,22.2,10,0,0,0,0,0,0\n");
    const std::map<std::string, std::string> cmap = {
        {"time_s", "t"},      {"voltage_v", "v"},  {"current_a", "i"},
        {"pos_x_m", "x"},     {"pos_y_m", "y"},    {"pos_z_m", "z"},
        {"vel_x_ms", "vx"},   {"vel_y_ms", "vy"},  {"vel_z_ms", "vz"}};
    const auto flight = telemetry::parse_flight_csv(path.string(), {}, cmap);
    CHECK(flight.size() == 2);
}

TEST_CASE("electrical power definition") {
    telemetry::TelemetrySample s;
    s.voltage = 22.2;
    s.current = 10.0;
    CHECK(telemetry::electrical_power(s) == doctest::Approx(222.0));
    s.voltage = 0.0;
    s.current = 5.0;
    CHECK(telemetry::electrical_power(s) == doctest::Approx(0.0));
    s.voltage = 22.2;
    s.current = -1.0;  // negative current passes through
    CHECK(telemetry::electrical_power(s) == doctest::Approx(-22.2));
}

TEST_CASE("integrate constant and ramp") {
    const Eigen::ArrayXd t60 = Eigen::ArrayXd::LinSpaced(61, 0.0, 60.0);
    const Eigen::ArrayXd p_const = Eigen::ArrayXd::Constant(61, 100.0);
    CHECK(telemetry::integrate_energy(p_const, t60) == doctest::Approx(6000.0));

    const Eigen::ArrayXd t10 = Eigen::ArrayXd::LinSpaced(101, 0.0, 10.0);
    const Eigen::ArrayXd ramp = 10.0 * t10;  // 0 -> 100 W
    CHECK(telemetry::integrate_energy(ramp, t10) == doctest::Approx(500.0));

    const Eigen::ArrayXd one = Eigen::ArrayXd::Constant(1, 5.0);
    CHECK_THROWS_AS(telemetry::integrate_energy(one, one), TooFewSamples);
}

TEST_CASE("integration agrees with the loop oracle on irregular grids") {
    auto engine = rng::substream(3, 0);
    std::vector<double> t{0.0}, y{rng::uniform(engine, 0, 200)};
    for (int i = 0; i < 200; ++i) {
        t.push_back(t.back() + rng::uniform(engine, 0.05, 0.4));
        y.push_back(rng::uniform(engine, 0, 200));
    }
    const Eigen::Map<const Eigen::ArrayXd> tm(t.data(), 201), ym(y.data(), 201);
    CHECK(telemetry::integrate_energy(ym, tm) ==
          doctest::Approx(oracles::trapezoid_loop(t, y)).epsilon(1e-12));
}

TEST_CASE("integration linearity and time-shift invariance") {
    auto engine = rng::substream(4, 0);
    const Eigen::ArrayXd t = Eigen::ArrayXd::LinSpaced(100, 0.0, 20.0);
    Eigen::ArrayXd p1(100), p2(100);
    for (int i = 0; i < 100; ++i) {
        p1[i] = rng::uniform(engine, 0, 500);
        p2[i] = rng::uniform(engine, 0, 500);
    }
    const double a = 2.5, b = -0.75;
    const double lhs = telemetry::integrate_energy(a * p1 + b * p2, t);
    const double rhs = a * telemetry::integrate_energy(p1, t) +
                       b * telemetry::integrate_energy(p2, t);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

    CHECK(telemetry::integrate_energy(p1, t + 1234.5) ==
          doctest::Approx(telemetry::integrate_energy(p1, t)).epsilon(1e-9));
}

TEST_CASE("synchronize: identical uniform streams pass through") {
    SensorStream s;
    s.time = Eigen::ArrayXd::LinSpaced(26, 0.0, 5.0);  // 5 Hz
    s.channels["voltage_v"] = Eigen::ArrayXd::Constant(26, 22.2);
    s.channels["current_a"] = Eigen::ArrayXd::LinSpaced(26, 10.0, 15.0);
    std::vector<SensorStream> streams{s, s};
    const auto table = telemetry::synchronize_streams(streams, 5.0);
    REQUIRE(table.time.size() == 26);
    CHECK((table.time - s.time).abs().maxCoeff() == doctest::Approx(0.0));
    CHECK((table.channels.at("current_a") - s.channels["current_a"]).abs().maxCoeff() ==
          doctest::Approx(0.0));
}

TEST_CASE("synchronize: 10 Hz ramp to 5 Hz keeps every other sample") {
    SensorStream s;
    s.time = Eigen::ArrayXd::LinSpaced(101, 0.0, 10.0);  // 10 Hz
    s.channels["x"] = 3.0 * s.time + 1.0;
    std::vector<SensorStream> streams{s};
    const auto table = telemetry::synchronize_streams(streams, 5.0);
    REQUIRE(table.time.size() == 51);
    for (Eigen::Index i = 0; i < 51; ++i) {
        CHECK(table.time[i] == doctest::Approx(0.2 * static_cast<double>(i)));
        CHECK(table.channels.at("x")[i] == doctest::Approx(s.channels["x"][2 * i]));
    }
}

TEST_CASE("synchronize: disjoint windows raise NoOverlap") {
    SensorStream a, b;
    a.time = Eigen::ArrayXd::LinSpaced(11, 0.0, 1.0);
    a.channels["u"] = Eigen::ArrayXd::Zero(11);
    b.time = Eigen::ArrayXd::LinSpaced(11, 5.0, 6.0);
    b.channels["w"] = Eigen::ArrayXd::Zero(11);
    std::vector<SensorStream> streams{a, b};
    CHECK_THROWS_AS(telemetry::synchronize_streams(streams, 5.0), NoOverlap);
}

TEST_CASE("synchronize: off-grid samples are linearly interpolated") {
    SensorStream s;
    s.time = Eigen::ArrayXd(3);
    s.time << 0.0, 1.0, 2.0;  // 1 Hz stream resampled at 2 Hz
    s.channels["x"] = Eigen::ArrayXd(3);
    s.channels["x"] << 0.0, 10.0, 20.0;
    std::vector<SensorStream> streams{s};
    const auto table = telemetry::synchronize_streams(streams, 2.0);
    REQUIRE(table.time.size() == 5);
    CHECK(table.channels.at("x")[1] == doctest::Approx(5.0));  // t=0.5 midpoint
    CHECK(table.channels.at("x")[3] == doctest::Approx(15.0));
}

TEST_CASE("resampling conserves energy of a bandlimited signal within 1%") {
    // 0.2 Hz tone around 100 W sampled at 50 Hz, resampled to 5 Hz over 60 s;
    // the integral over a whole number of periods is 6000 J exactly.
    SensorStream s;
    const int n = 3001;
    s.time = Eigen::ArrayXd::LinSpaced(n, 0.0, 60.0);
    s.channels["p"] = 100.0 + 10.0 * (2.0 * M_PI * 0.2 * s.time).sin();
    std::vector<SensorStream> streams{s};
    const auto table = telemetry::synchronize_streams(streams, 5.0);
    const double energy = telemetry::integrate_energy(table.channels.at("p"), table.time);
    CHECK(energy == doctest::Approx(6000.0).epsilon(0.01));
}

TEST_CASE("flight summary satisfies energy = mean_power * duration") {
    FlightRecord f;
    const int n = 100;
    f.time = Eigen::ArrayXd::LinSpaced(n, 0.0, 19.8);
    f.voltage = Eigen::ArrayXd::Constant(n, 22.2);
    f.current = Eigen::ArrayXd::LinSpaced(n, 8.0, 12.0);
    const auto s = telemetry::summarize(f);
    CHECK(s.energy ==
          doctest::Approx(s.mean_power * s.duration).epsilon(1e-6));
    CHECK(s.duration == doctest::Approx(19.8));
}

}  // TEST_SUITE
