#include "aeroamp/segmentation.hpp"

#include <cmath>
#include <vector>

namespace aeroamp::segmentation {

Regime regime_from_name(const std::string& name) {
    if (name == "takeoff") return Regime::takeoff;
    if (name == "cruise") return Regime::cruise;
    if (name == "landing") return Regime::landing;
    throw InvalidInput("unknown regime name: " + name);
}

namespace {

// True when cond holds on every sample within min_dwell seconds of t[i]
// (always including i itself).
bool sustained(const std::vector<char>& cond, const Eigen::ArrayXd& t, Eigen::Index i,
               double min_dwell) {
    if (!cond[static_cast<std::size_t>(i)]) return false;
    const double t_end = t[i] + min_dwell;
    for (Eigen::Index j = i + 1; j < t.size() && t[j] <= t_end; ++j)
        if (!cond[static_cast<std::size_t>(j)]) return false;
    return true;
}

struct Run {
    Eigen::Index begin, end;  // [begin, end)
};

// Maximal runs of cond lasting at least min_dwell seconds, with runs
// separated by gaps shorter than min_dwell merged first (jitter tolerance).
std::vector<Run> sustained_runs(const std::vector<char>& cond, const Eigen::ArrayXd& t,
                                double min_dwell) {
    std::vector<Run> raw;
    const Eigen::Index n = t.size();
    Eigen::Index i = 0;
    while (i < n) {
        if (!cond[static_cast<std::size_t>(i)]) {
            ++i;
            continue;
        }
        Eigen::Index j = i;
        while (j < n && cond[static_cast<std::size_t>(j)]) ++j;
        raw.push_back({i, j});
        i = j;
    }
    std::vector<Run> merged;
    for (const auto& run : raw) {
        if (!merged.empty() && t[run.begin] - t[merged.back().end - 1] < min_dwell)
            merged.back().end = run.end;
        else
            merged.push_back(run);
    }
    std::vector<Run> out;
    for (const auto& run : merged)
        if (t[run.end - 1] - t[run.begin] >= min_dwell) out.push_back(run);
    return out;
}

}  // namespace

std::array<RegimeSlice, 3> detect_regimes(const telemetry::FlightRecord& flight,
                                          const SegmentationParams& p) {
    const Eigen::Index n = flight.size();
    if (n < 3)
        throw TooFewSamples("detect_regimes: flight too short");
    const Eigen::ArrayXd& t = flight.time;
    const Eigen::ArrayXd& alt = flight.pos_z;
    const Eigen::ArrayXd& vz = flight.vel_z;

    if (alt.maxCoeff() < p.min_flight_alt)
        throw NoFlightDetected("detect_regimes: altitude never exceeds " +
                               std::to_string(p.min_flight_alt) + " m");

    std::vector<char> climbing(n), descending(n), settled(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        climbing[static_cast<std::size_t>(i)] = vz[i] > p.v_up_thresh;
        descending[static_cast<std::size_t>(i)] = vz[i] < -p.v_down_thresh;
        settled[static_cast<std::size_t>(i)] = std::abs(vz[i]) < p.v_settle;
    }

    // Exactly one climb episode and one descent episode make a clean profile.
    const auto climbs = sustained_runs(climbing, t, p.min_dwell);
    const auto descents = sustained_runs(descending, t, p.min_dwell);
    if (climbs.empty())
        throw AmbiguousProfile("detect_regimes: no sustained climb found");
    if (descents.empty())
        throw AmbiguousProfile("detect_regimes: no sustained descent found");
    if (climbs.size() > 1 || descents.size() > 1)
        throw AmbiguousProfile("detect_regimes: multiple climb/descent cycles (" +
                               std::to_string(climbs.size()) + " climbs, " +
                               std::to_string(descents.size()) + " descents)");

    const Eigen::Index liftoff = climbs.front().begin;

    // Takeoff ends when the altitude first enters the target band and the
    // vertical speed has settled (settle condition held for min_dwell).
    const double target = flight.target_altitude > 0.0 ? flight.target_altitude
                                                       : alt.maxCoeff();
    Eigen::Index takeoff_end = -1;
    for (Eigen::Index i = liftoff; i < n; ++i) {
        if (alt[i] >= target - p.alt_tol && sustained(settled, t, i, p.min_dwell)) {
            takeoff_end = i;
            break;
        }
    }
    if (takeoff_end < 0)
        throw AmbiguousProfile("detect_regimes: climb never settles at target altitude");

    // Landing starts where the (single) sustained descent begins.
    const Run landing_run = descents.back();
    const Eigen::Index landing_start = landing_run.begin;
    if (landing_start <= takeoff_end)
        throw AmbiguousProfile("detect_regimes: descent begins before cruise");

    // Touchdown: first sample at ground level with vertical speed spent.
    Eigen::Index touchdown = n - 1;
    for (Eigen::Index i = landing_run.end - 1; i < n; ++i) {
        if (alt[i] < p.touchdown_alt && std::abs(vz[i]) < p.touchdown_vz) {
            touchdown = i;
            break;
        }
    }

    std::array<RegimeSlice, 3> slices;
    slices[0] = {Regime::takeoff, liftoff, takeoff_end, 0, 0, 0};
    slices[1] = {Regime::cruise, takeoff_end, landing_start, 0, 0, 0};
    slices[2] = {Regime::landing, landing_start, touchdown + 1, 0, 0, 0};
    for (auto& s : slices) {
        if (s.end_index <= s.start_index)
            throw AmbiguousProfile(std::string("detect_regimes: empty ") +
                                   regime_name(s.regime) + " slice");
        const auto summary = regime_summary(flight, s);
        s.duration = summary.duration;
        s.mean_power = summary.mean_power;
        s.energy = summary.energy;
    }
    return slices;
}

telemetry::FlightSummary regime_summary(const telemetry::FlightRecord& flight,
                                        const RegimeSlice& slice) {
    const Eigen::Index n = flight.size();
    if (slice.start_index < 0 || slice.end_index > n || slice.end_index <= slice.start_index)
        throw InvalidInput("regime_summary: slice indices out of range");
    // The right edge is the first sample of the next slice (or the last
    // sample of the flight), so adjacent slices share edges and their
    // integrals sum to the whole-flight integral exactly.
    const Eigen::Index last = std::min(slice.end_index, n - 1);
    const Eigen::Index len = last - slice.start_index + 1;

    telemetry::FlightSummary s;
    if (len < 2) {
        s.duration = 0.0;
        s.energy = 0.0;
        s.mean_power = flight.voltage[slice.start_index] * flight.current[slice.start_index];
        return s;
    }
    const auto times = flight.time.segment(slice.start_index, len);
    const Eigen::ArrayXd power =
        flight.voltage.segment(slice.start_index, len) *
        flight.current.segment(slice.start_index, len);
    s.duration = times[len - 1] - times[0];
    s.energy = trapezoid(times, power);
    s.mean_power = s.energy / s.duration;
    return s;
}

}  // namespace aeroamp::segmentation
