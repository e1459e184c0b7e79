// Test-only oracles, kept independent of the library implementation paths
// they check: plain-loop integration, closed-form OLS with analytic standard
// errors, and a reference table for the fleet comparison.
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "aeroamp/estimation.hpp"

namespace oracles {

// Plain-loop trapezoid, no Eigen expressions.
inline double trapezoid_loop(std::span<const double> t, std::span<const double> y) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        total += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
    return total;
}

struct OlsAnalytic {
    double b1 = 0.0, b0 = 0.0;
    double se_b1 = 0.0, se_b0 = 0.0;
};

// Closed-form simple regression with textbook standard errors.
inline OlsAnalytic ols_closed_form(std::span<const aeroamp::estimation::Observation> obs) {
    const double n = static_cast<double>(obs.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& o : obs) {
        sx += o.p_induced;
        sy += o.mean_power;
    }
    const double xbar = sx / n, ybar = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& o : obs) {
        sxx += (o.p_induced - xbar) * (o.p_induced - xbar);
        sxy += (o.p_induced - xbar) * (o.mean_power - ybar);
    }
    OlsAnalytic out;
    out.b1 = sxy / sxx;
    out.b0 = ybar - out.b1 * xbar;
    double rss = 0.0;
    for (const auto& o : obs) {
        const double r = o.mean_power - (out.b1 * o.p_induced + out.b0);
        rss += r * r;
    }
    const double sigma2 = rss / (n - 2.0);
    out.se_b1 = std::sqrt(sigma2 / sxx);
    out.se_b0 = std::sqrt(sigma2 * (1.0 / n + xbar * xbar / sxx));
    return out;
}

// Reference comparison table the shipped defaults must reproduce: one row
// per vehicle, columns { MJ/km, fuel g/km, upstream g/km, battery g/km,
// MJ/package, g/package }, with the number of displayed decimals per column.
struct ReferenceRow {
    const char* name;
    double cell[6];
    bool has_battery;
};

inline const std::vector<ReferenceRow>& reference_table() {
    static const std::vector<ReferenceRow> rows = {
        {"medium_duty_diesel_truck", {11.00, 764.5, 168.7, 0.0, 5.24, 444.4}, false},
        {"small_diesel_van", {4.90, 340.6, 75.2, 0.0, 1.41, 119.5}, false},
        {"medium_duty_electric_truck", {3.74, 681.4, 82.4, 24.5, 1.78, 375.4}, true},
        {"small_electric_van", {1.63, 296.1, 35.8, 14.1, 0.47, 99.4}, true},
        {"electric_cargo_bicycle", {0.10, 18.1, 2.2, 1.3, 0.10, 21.6}, true},
        {"quadcopter_drone", {0.05, 8.5, 1.0, 0.8, 0.19, 41.1}, true},
    };
    return rows;
}

inline int reference_decimals(int column) {
    static const int decimals[6] = {2, 1, 1, 1, 2, 1};
    return decimals[column];
}

// Within 2% of the published cell, or within half a unit of its displayed
// precision (published values are rounded).
inline bool matches_reference(double computed, double published, int column) {
    const double half_ulp = 0.5 * std::pow(10.0, -reference_decimals(column));
    const double tol = std::max(0.02 * std::abs(published), half_ulp);
    return std::abs(computed - published) <= tol;
}

}  // namespace oracles
