// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "expiring/errors.hpp"

namespace expiring {

double dkw_epsilon(std::size_t sample_count, double confidence)
{
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(sample_count)));
}

std::vector<MomentEstimate> empirical_moments(std::span<double const> scaled_samples, std::size_t r_max)
{
    if (r_max > 4) {
        throw DomainError("empirical_moments: orders above 4 are not supported");
    }
    if (scaled_samples.empty()) {
        throw DomainError("empirical_moments: empty sample");
    }
    auto const n = static_cast<double>(scaled_samples.size());
    std::vector<MomentEstimate> out;
    for (std::size_t r = 1; r <= r_max; ++r) {
        double sum = 0.0;
        for (double x : scaled_samples) {
            sum += std::pow(x, static_cast<double>(r));
        }
        MomentEstimate est;
        est.value = sum / n;
        if (scaled_samples.size() > 1) {
            // Leave-one-out means (sum - x^r)/(n-1); jackknife variance (n-1)/n sum (loo - mean)^2.
            double ss = 0.0;
            for (double x : scaled_samples) {
                double const loo = (sum - std::pow(x, static_cast<double>(r))) / (n - 1.0);
                ss += (loo - est.value) * (loo - est.value);
            }
            est.stderr_estimate = std::sqrt((n - 1.0) / n * ss);
        }
        out.push_back(est);
    }
    return out;
}

GofReport ks_exp1(std::span<double const> scaled_samples)
{
    if (scaled_samples.empty()) {
        throw DomainError("ks_exp1: empty sample");
    }
    std::vector<double> sorted(scaled_samples.begin(), scaled_samples.end());
    std::sort(sorted.begin(), sorted.end());
    auto const n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double const cdf = -std::expm1(-std::max(sorted[i], 0.0));
        double const above = static_cast<double>(i + 1) / n - cdf;
        double const below = cdf - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    GofReport report;
    report.sample_count = sorted.size();
    report.ks_stat = std::min(d, 1.0);
    report.moments = empirical_moments(scaled_samples, 4);
    report.dkw_epsilon = dkw_epsilon(sorted.size());
    return report;
}

}  // namespace expiring
