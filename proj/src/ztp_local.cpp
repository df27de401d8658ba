// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/ztp_local.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "expiring/asymptotics.hpp"
#include "expiring/errors.hpp"

namespace expiring {

namespace {

double log_choose(double n, double k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

struct CutPmf {
    std::vector<double> probs;  // probs[j] = P(D = j + 1)
    double tail = 0.0;
};

CutPmf cut_pmf(ZtpModel const& model)
{
    CutPmf out;
    std::size_t const max_value = model.total() - model.colors() + 1;
    if (model.tau() == 0.0) {
        out.probs = {1.0};
        return out;
    }
    for (std::size_t k = 1; k <= max_value; ++k) {
        out.probs.push_back(ztp_pmf(model.tau(), k));
        // Once successive ratios tau/(j+1) are at most 1/2, the tail past k is
        // bounded by a geometric series starting at P(D = k + 1).
        auto const kd = static_cast<double>(k);
        if (kd + 2.0 >= 2.0 * model.tau() && k < max_value) {
            double const tail = ztp_pmf(model.tau(), k + 1) / (1.0 - model.tau() / (kd + 2.0));
            if (tail < kPmfTailCutoff) {
                out.tail = tail;
                break;
            }
        }
    }
    return out;
}

void check_budget(ZtpModel const& model)
{
    if (static_cast<double>(model.colors()) * static_cast<double>(model.total()) >
        static_cast<double>(kConvolutionBudget)) {
        throw BudgetError("ztp_sum_exact: N * m = " + std::to_string(model.colors() * model.total()) +
                          " exceeds the convolution budget");
    }
}

// dist[s] = P(partial sum = s); next[s] = sum_j dist[s - j - 1] pmf[j].
inline double convolve_cell(std::vector<double> const& dist, std::vector<double> const& pmf, std::size_t s)
{
    double acc = 0.0;
    std::size_t const reach = std::min(pmf.size(), s);
    for (std::size_t j = 0; j < reach; ++j) {
        acc += dist[s - j - 1] * pmf[j];
    }
    return acc;
}

SumPointMass finish(ZtpModel const& model, CutPmf const& pmf, double probability)
{
    return {probability, static_cast<double>(model.colors()) * pmf.tail};
}

}  // namespace

ZtpModel::ZtpModel(std::size_t colors, std::size_t total) : colors_(colors), total_(total)
{
    if (colors < 1 || total < colors) {
        throw DomainError("ZtpModel: need total >= colors >= 1, got colors " + std::to_string(colors) +
                          ", total " + std::to_string(total));
    }
    if (total == colors) {
        tau_ = 0.0;
        mean_ = 1.0;
        variance_ = 0.0;
        return;
    }
    tau_ = tau_solve(static_cast<double>(total) / static_cast<double>(colors));
    mean_ = ztp_mean(tau_);
    variance_ = ztp_variance(tau_);
}

double ztp_variance(double tau)
{
    // mu (1 + tau - mu) = mu (1 - (1 + tau) e^{-tau}) / (1 - e^{-tau})
    if (tau == 0.0) {
        return 0.0;
    }
    return ztp_mean(tau) * one_minus_one_plus_tau_exp(tau) / -std::expm1(-tau);
}

double ztp_pmf(double tau, std::size_t k)
{
    if (k == 0) {
        throw DomainError("ztp_pmf: zero-truncated law has no mass at 0");
    }
    if (tau == 0.0) {
        return k == 1 ? 1.0 : 0.0;
    }
    auto const kd = static_cast<double>(k);
    double log_norm;
    if (tau > 30.0) {
        log_norm = tau + std::log1p(-std::exp(-tau));
    } else {
        log_norm = std::log(std::expm1(tau));
    }
    return std::exp(kd * std::log(tau) - std::lgamma(kd + 1.0) - log_norm);
}

double ztp_pmf(ZtpModel const& model, std::size_t k)
{
    return ztp_pmf(model.tau(), k);
}

SumPointMass ztp_sum_exact(ZtpModel const& model)
{
    check_budget(model);
    auto const pmf = cut_pmf(model);
    std::size_t const total = model.total();
    std::vector<double> dist(total + 1, 0.0);
    std::vector<double> next(total + 1, 0.0);
    dist[0] = 1.0;
    for (std::size_t round = 1; round <= model.colors(); ++round) {
        auto const hi = static_cast<std::ptrdiff_t>(total);
        auto const lo = static_cast<std::ptrdiff_t>(round);
        std::fill(next.begin(), next.begin() + lo, 0.0);
#pragma omp parallel for schedule(static) if (total >= 2048)
        for (std::ptrdiff_t s = lo; s <= hi; ++s) {
            next[static_cast<std::size_t>(s)] = convolve_cell(dist, pmf.probs, static_cast<std::size_t>(s));
        }
        std::swap(dist, next);
    }
    return finish(model, pmf, dist[total]);
}

namespace serial {

SumPointMass ztp_sum_exact(ZtpModel const& model)
{
    check_budget(model);
    auto const pmf = cut_pmf(model);
    std::size_t const total = model.total();
    std::vector<double> dist(total + 1, 0.0);
    std::vector<double> next(total + 1, 0.0);
    dist[0] = 1.0;
    for (std::size_t round = 1; round <= model.colors(); ++round) {
        std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(round), 0.0);
        for (std::size_t s = round; s <= total; ++s) {
            next[s] = convolve_cell(dist, pmf.probs, s);
        }
        std::swap(dist, next);
    }
    return finish(model, pmf, dist[total]);
}

}  // namespace serial

double gaussian_local(double sum_variance)
{
    return 1.0 / std::sqrt(2.0 * std::numbers::pi * sum_variance);
}

double gaussian_local(ZtpModel const& model)
{
    return gaussian_local(model.sum_variance());
}

double bounded_B_construction(ZtpModel const& model)
{
    std::size_t const extra = model.total() - model.colors();
    auto const n = static_cast<double>(model.colors());
    auto const k = static_cast<double>(extra);
    if (extra > model.colors()) {
        return 0.0;
    }
    if (extra == 0) {
        return std::pow(ztp_pmf(model, 1), n);
    }
    double const log_value =
        log_choose(n, k) + k * std::log(ztp_pmf(model, 2)) + (n - k) * std::log(ztp_pmf(model, 1));
    return std::exp(log_value);
}

double binomial_point_at_mean(std::size_t trials, std::size_t successes)
{
    if (successes > trials) {
        return 0.0;
    }
    if (successes == 0 || successes == trials) {
        return 1.0;
    }
    auto const m = static_cast<double>(trials);
    auto const u = static_cast<double>(successes);
    double const p = u / m;
    return std::exp(log_choose(m, u) + u * std::log(p) + (m - u) * std::log1p(-p));
}

double conditioning_prob(std::size_t colors, std::size_t total, std::size_t split)
{
    if (colors < 2 || total <= colors) {
        throw DomainError("conditioning_prob: requires total > colors >= 2");
    }
    if (split < 1 || split >= total) {
        throw DomainError("conditioning_prob: split must lie in 1..total-1");
    }
    ZtpModel const model(colors, total);
    return ztp_sum_exact(model).probability * binomial_point_at_mean(total, split);
}

double cf_modulus(double tau, double t)
{
    if (std::abs(t) > std::numbers::pi + 1e-12) {
        throw DomainError("cf_modulus: |t| must not exceed pi");
    }
    if (tau == 0.0) {
        return 1.0;  // point mass at 1
    }
    // (e^{tau (e^{it} - 1)} - e^{-tau}) / (1 - e^{-tau}), scaled to avoid overflow.
    std::complex<double> const shifted = std::exp(tau * (std::exp(std::complex<double>(0.0, t)) - 1.0));
    return std::abs(shifted - std::exp(-tau)) / -std::expm1(-tau);
}

}  // namespace expiring
