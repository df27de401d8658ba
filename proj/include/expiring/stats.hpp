// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace expiring {

struct MomentEstimate {
    double value = 0.0;
    double stderr_estimate = 0.0;  ///< jackknife
};

/// Goodness of fit of already-normalised samples against Exp(1).
struct GofReport {
    std::size_t sample_count = 0;
    double ks_stat = 0.0;
    std::vector<MomentEstimate> moments;  ///< r = 1..4
    double dkw_epsilon = 0.0;             ///< 99% DKW band half-width
};

inline constexpr double kDkwConfidence = 0.99;

/// sqrt(log(2 / (1 - confidence)) / (2 N)).
double dkw_epsilon(std::size_t sample_count, double confidence = kDkwConfidence);

/// Kolmogorov-Smirnov distance of the empirical CDF to 1 - e^{-x}, plus the
/// first four moments. The caller owns the normalisation. Throws on empty input.
GofReport ks_exp1(std::span<double const> scaled_samples);

/// Mean of x^r for r = 1..r_max (r_max <= 4) with jackknife standard errors.
std::vector<MomentEstimate> empirical_moments(std::span<double const> scaled_samples, std::size_t r_max);

}  // namespace expiring
