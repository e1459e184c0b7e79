#pragma once

#include <Eigen/Dense>

#include "aeroamp/errors.hpp"

namespace aeroamp {

// Trapezoidal integral of y(x) over an irregular grid. Accepts any dense
// Eigen expression; both inputs must have the same length (>= 2) and x must
// be strictly increasing.
template <class DerivedX, class DerivedY>
typename DerivedY::Scalar trapezoid(const Eigen::DenseBase<DerivedX>& x_in,
                                    const Eigen::DenseBase<DerivedY>& y_in) {
    using Scalar = typename DerivedY::Scalar;
    const auto x = x_in.derived().eval();
    const auto y = y_in.derived().eval();
    const Eigen::Index n = x.size();
    if (n != y.size())
        throw InvalidInput("trapezoid: x and y lengths differ");
    if (n < 2)
        throw TooFewSamples("trapezoid: need at least 2 samples");
    const auto dx = x.array().tail(n - 1) - x.array().head(n - 1);
    if ((dx <= Scalar(0)).any())
        throw InvalidInput("trapezoid: x must be strictly increasing");
    return (dx * (y.array().tail(n - 1) + y.array().head(n - 1))).sum() / Scalar(2);
}

// Statistics over a dense expression.
template <class Derived>
typename Derived::Scalar sample_stddev(const Eigen::DenseBase<Derived>& v_in) {
    using Scalar = typename Derived::Scalar;
    const auto v = v_in.derived().eval();
    const Eigen::Index n = v.size();
    if (n < 2)
        throw TooFewSamples("sample_stddev: need at least 2 values");
    const Scalar mean = v.array().mean();
    return std::sqrt((v.array() - mean).square().sum() / Scalar(n - 1));
}

inline double median(Eigen::ArrayXd v) {
    const Eigen::Index n = v.size();
    if (n == 0)
        throw TooFewSamples("median: empty input");
    std::sort(v.data(), v.data() + n);
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

constexpr double kJoulesPerWh = 3600.0;
constexpr double kJoulesPerMJ = 1.0e6;

}  // namespace aeroamp
