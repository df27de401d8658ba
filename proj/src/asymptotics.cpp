// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/asymptotics.hpp"

#include <cmath>
#include <string>

#include "expiring/combinatorics.hpp"
#include "expiring/errors.hpp"

namespace expiring {

double missing_mean(ModelParams const& params)
{
    return expected_missing(params.types(), params.window());
}

RegimeDescriptor describe_regime(ModelParams const& params)
{
    RegimeDescriptor out;
    out.types = params.types();
    out.window = params.window();
    out.expected_missing = missing_mean(params);
    auto const n = static_cast<double>(params.types());
    auto const window = static_cast<double>(params.window());
    out.linear_ratio = window / n;
    if (params.types() >= 2) {
        double const scale = n * std::log(n);
        out.log_ratio = window / scale;
        out.critical_offset = (window - scale) / n;
    }
    return out;
}

double ztp_mean(double tau)
{
    if (tau == 0.0) {
        return 1.0;
    }
    return tau / -std::expm1(-tau);
}

double one_minus_one_plus_tau_exp(double tau)
{
    if (std::abs(tau) < 0.05) {
        // sum_{k>=2} (-1)^k (k-1) tau^k / k!
        double term = 1.0;  // tau^k / k!, starting at k = 1
        double sum = 0.0;
        for (int k = 2; k < 30; ++k) {
            term *= tau / k;
            double const add = (k % 2 == 0 ? 1.0 : -1.0) * (k - 1) * term * tau;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) {
                break;
            }
        }
        return sum;
    }
    return -std::expm1(-tau) - tau * std::exp(-tau);
}

double tau_solve(double ratio)
{
    if (!(ratio > 1.0)) {
        throw DomainError("tau_solve: ratio must exceed 1, got " + std::to_string(ratio));
    }
    // ztp_mean is increasing with ztp_mean(tau) > tau, so [0, ratio] brackets the root.
    double lo = 0.0;
    double hi = ratio;
    while (hi - lo > 1e-6 * hi) {
        double const mid = 0.5 * (lo + hi);
        if (ztp_mean(mid) < ratio) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double tau = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        double const denom = -std::expm1(-tau);
        double const slope = one_minus_one_plus_tau_exp(tau) / (denom * denom);
        double const residual = ztp_mean(tau) - ratio;
        if (std::abs(residual) <= 1e-15 * ratio || slope <= 0.0) {
            break;
        }
        double const step = tau - residual / slope;
        tau = (step >= lo && step <= hi) ? step : 0.5 * (lo + hi);
    }
    return tau;
}

namespace {

// log(e^tau - 1) without overflow or small-tau cancellation.
double log_expm1(double tau)
{
    if (tau > 30.0) {
        return tau + std::log1p(-std::exp(-tau));
    }
    return std::log(tau) + std::log1p((std::expm1(tau) - tau) / tau);
}

}  // namespace

double rate_I(double ratio)
{
    double const tau = tau_solve(ratio);
    return ratio * std::log(tau / ratio) + ratio - log_expm1(tau);
}

std::size_t fixed_alpha_window(std::size_t types, double alpha)
{
    auto const n = static_cast<double>(types);
    return static_cast<std::size_t>(std::floor(alpha * n * std::log(n)));
}

FixedAlphaPrediction fixed_alpha_prediction(std::size_t types, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("fixed_alpha_prediction: alpha must lie in (0, 1)");
    }
    if (types < 2) {
        throw DomainError("fixed_alpha_prediction: need at least two types");
    }
    FixedAlphaPrediction out;
    out.window = fixed_alpha_window(types, alpha);
    if (out.window < types) {
        throw DomainError("fixed_alpha_prediction: window floor(alpha n log n) = " +
                          std::to_string(out.window) + " is below n = " + std::to_string(types));
    }
    auto const n = static_cast<double>(types);
    double const scale = std::pow(n, 1.0 - alpha);
    out.leading_log = -scale;
    if (alpha > 0.5) {
        out.sharp_flux = std::exp(-alpha * std::log(n) - scale);
    }
    return out;
}

CriticalLimits critical_limits(double offset)
{
    double const decay = std::exp(-offset);
    CriticalLimits out;
    out.pi_limit = std::exp(-decay);
    out.n_flux_limit = decay * out.pi_limit;
    return out;
}

ScaleFunctions last_occurrence_scales(ModelParams const& params, std::size_t offset)
{
    std::size_t const n = params.types();
    std::size_t const window = params.window();
    if (n < 2 || window <= n) {
        throw DomainError("last_occurrence_scales: requires window > types >= 2 "
                          "(the permutation endpoint window == types has no saddle point)");
    }
    if (offset < 1 || offset + 2 > window) {
        throw DomainError("last_occurrence_scales: offset " + std::to_string(offset) +
                          " outside 1.." + std::to_string(window - 2));
    }
    auto const alphabet = static_cast<double>(n - 1);
    auto const length = static_cast<double>(window - 1);
    auto const u = static_cast<double>(offset);
    double const tau = tau_solve(length / alphabet);

    ScaleFunctions out;
    out.offset = offset;
    out.q = offset == 1 ? 1.0 : std::exp((u - 1.0) * std::log1p(-1.0 / alphabet));
    out.y = -std::expm1(-u / static_cast<double>(n));
    out.split_mean = alphabet * std::exp(-tau * (length - u) / length) * -std::expm1(-tau * u / length) /
                     -std::expm1(-tau);
    out.eta = out.q * out.split_mean;
    return out;
}

}  // namespace expiring
