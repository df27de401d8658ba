// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>

#include "expiring/model_params.hpp"

namespace expiring {

/// Where a (types, window) pair sits relative to the coupon-collector scales.
struct RegimeDescriptor {
    std::size_t types = 0;
    std::size_t window = 0;
    double expected_missing = 0.0;          ///< n (1 - 1/n)^M
    std::optional<double> linear_ratio;     ///< M / n
    std::optional<double> log_ratio;        ///< M / (n log n), needs n >= 2
    std::optional<double> critical_offset;  ///< (M - n log n) / n, needs n >= 2
};

/// Expected number of types missing from a stationary window, n (1 - 1/n)^M.
double missing_mean(ModelParams const& params);

RegimeDescriptor describe_regime(ModelParams const& params);

/// tau / (1 - e^{-tau}), continuous at tau = 0.
double ztp_mean(double tau);

/// 1 - (1 + tau) e^{-tau}, without cancellation for small tau.
double one_minus_one_plus_tau_exp(double tau);

/// Unique tau > 0 with tau / (1 - e^{-tau}) = ratio. Requires ratio > 1.
double tau_solve(double ratio);

/// Exponential rate I(a) = a log(tau/a) + a - log(e^tau - 1) with tau = tau_solve(a).
double rate_I(double ratio);

struct FixedAlphaPrediction {
    std::size_t window = 0;               ///< floor(alpha n log n)
    double leading_log = 0.0;             ///< -n^{1-alpha}
    std::optional<double> sharp_flux;     ///< n^{-alpha} exp(-n^{1-alpha}), alpha > 1/2 only
};

/// Leading-order flux scale for M = floor(alpha n log n). Throws DomainError if
/// that window is shorter than n.
FixedAlphaPrediction fixed_alpha_prediction(std::size_t types, double alpha);

/// Window floor(alpha n log n) (natural log).
std::size_t fixed_alpha_window(std::size_t types, double alpha);

struct CriticalLimits {
    double pi_limit = 0.0;      ///< exp(-e^{-c})
    double n_flux_limit = 0.0;  ///< e^{-c} exp(-e^{-c})
};

CriticalLimits critical_limits(double offset);

/// Last-occurrence scale functions at offset u, with N = n-1 and m = M-1:
///   q_u = (1 - 1/N)^{u-1},  y_u = 1 - e^{-u/n},
///   Lambda_u = N e^{-tau (m-u)/m} (1 - e^{-tau u/m}) / (1 - e^{-tau}),
///   eta_u = q_u Lambda_u,  with tau = tau_solve(m / N).
struct ScaleFunctions {
    std::size_t offset = 0;
    double q = 0.0;
    double y = 0.0;
    double split_mean = 0.0;
    double eta = 0.0;
};

/// Requires window > types >= 2 and 1 <= u <= window - 2.
ScaleFunctions last_occurrence_scales(ModelParams const& params, std::size_t offset);

}  // namespace expiring
