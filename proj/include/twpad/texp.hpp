// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "twpad/errors.hpp"

namespace twpad {

/// Exponential distribution with rate lambda conditioned on [theta1, theta2].
/// Density lambda·e^{-lambda·y} / (e^{-lambda·theta1} - e^{-lambda·theta2}).
class TruncatedExp {
  public:
    TruncatedExp(double theta1, double theta2, double lambda) : theta1_(theta1), theta2_(theta2), lambda_(lambda) {
        detail::require(lambda > 0.0, "truncated exponential needs lambda > 0");
        detail::require(theta1 < theta2, "truncated exponential needs theta1 < theta2");
        lo_ = std::exp(-lambda_ * theta1_);
        hi_ = std::exp(-lambda_ * theta2_);
    }

    double theta1() const noexcept { return theta1_; }
    double theta2() const noexcept { return theta2_; }
    double lambda() const noexcept { return lambda_; }

    double pdf(double y) const {
        if (y < theta1_ || y > theta2_) {
            return 0.0;
        }
        return lambda_ * std::exp(-lambda_ * y) / (lo_ - hi_);
    }

    double cdf(double y) const {
        if (y <= theta1_) {
            return 0.0;
        }
        if (y >= theta2_) {
            return 1.0;
        }
        return (lo_ - std::exp(-lambda_ * y)) / (lo_ - hi_);
    }

    /// Inverse CDF. u = 0 and u = 1 map exactly to theta1 and theta2.
    double sample(double u) const {
        detail::require(u >= 0.0 && u <= 1.0, "uniform draw must lie in [0, 1]");
        if (u == 0.0) {
            return theta1_;
        }
        if (u == 1.0) {
            return theta2_;
        }
        const double y = -std::log(lo_ - u * (lo_ - hi_)) / lambda_;
        return std::clamp(y, theta1_, theta2_);
    }

  private:
    double theta1_;
    double theta2_;
    double lambda_;
    double lo_;
    double hi_;
};

/// One-sample Kolmogorov-Smirnov statistic of `draws` against dist's CDF.
inline double ks_statistic(std::vector<double> draws, const TruncatedExp& dist) {
    detail::require(!draws.empty(), "KS statistic needs at least one draw");
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = dist.cdf(draws[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// Asymptotic KS critical value at significance 0.01: sqrt(-ln(0.005)/2)/sqrt(n).
inline double ks_critical_value_1pct(std::size_t n) {
    return std::sqrt(-std::log(0.005) / 2.0) / std::sqrt(static_cast<double>(n));
}

} // namespace twpad
