#pragma once

#include <array>
#include <string>

#include "aeroamp/telemetry.hpp"

namespace aeroamp::segmentation {

enum class Regime { takeoff = 0, cruise = 1, landing = 2 };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::takeoff: return "takeoff";
        case Regime::cruise: return "cruise";
        case Regime::landing: return "landing";
    }
    return "?";
}

Regime regime_from_name(const std::string& name);

// All thresholds of the boundary rule. The values below are the tool's
// documented defaults and are echoed into every segmentation output.
struct SegmentationParams {
    double v_up_thresh = 0.3;     // m/s, sustained climb marks liftoff
    double v_down_thresh = 0.3;   // m/s, sustained descent marks landing
    double v_settle = 0.5;        // m/s, |vz| below this counts as level
    double alt_tol = 2.0;         // m, band below target altitude ending takeoff
    double min_dwell = 1.0;       // s, hysteresis window for transitions
    double touchdown_alt = 1.0;   // m
    double touchdown_vz = 0.2;    // m/s
    double min_flight_alt = 3.0;  // m, below this the trace is not a flight
};

// Half-open [start_index, end_index) over the flight's samples. The slice
// time extent runs to the first sample of the next slice, so the three
// slices tile [liftoff, touchdown] exactly.
struct RegimeSlice {
    Regime regime;
    Eigen::Index start_index = 0;
    Eigen::Index end_index = 0;
    double duration = 0.0;    // s
    double mean_power = 0.0;  // W
    double energy = 0.0;      // J
};

// Split a flight into takeoff/cruise/landing. Throws NoFlightDetected when
// the altitude trace never exceeds min_flight_alt, AmbiguousProfile when the
// trace has more than one climb/descent cycle.
std::array<RegimeSlice, 3> detect_regimes(const telemetry::FlightRecord& flight,
                                          const SegmentationParams& params = {});

telemetry::FlightSummary regime_summary(const telemetry::FlightRecord& flight,
                                        const RegimeSlice& slice);

}  // namespace aeroamp::segmentation
