// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include <omp.h>

#include "expiring/errors.hpp"

namespace expiring {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Rows shorter than this are not worth a parallel region.
constexpr std::size_t kParallelRowThreshold = 512;

double log_add(double a, double b)
{
    if (a < b) {
        std::swap(a, b);
    }
    if (b == kNegInf) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

struct TransitionLogs {
    std::vector<double> stay;     // log(k / n)
    std::vector<double> advance;  // log((n - k + 1) / n)
};

TransitionLogs transition_logs(std::size_t alphabet)
{
    TransitionLogs logs;
    logs.stay.assign(alphabet + 1, kNegInf);
    logs.advance.assign(alphabet + 1, kNegInf);
    auto const n = static_cast<double>(alphabet);
    for (std::size_t k = 1; k <= alphabet; ++k) {
        logs.stay[k] = std::log(static_cast<double>(k) / n);
        logs.advance[k] = std::log(static_cast<double>(alphabet - k + 1) / n);
    }
    return logs;
}

inline double coverage_cell(std::vector<double> const& row, TransitionLogs const& logs, std::size_t k)
{
    return log_add(row[k] + logs.stay[k], row[k - 1] + logs.advance[k]);
}

void check_coverage_args(std::size_t alphabet)
{
    if (alphabet < 1) {
        throw DomainError("coverage_dp: alphabet must be positive");
    }
}

mpz_class factorial(std::size_t k)
{
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

mpz_class power(std::size_t base, std::size_t exponent)
{
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
    return out;
}

bool within_budget(std::size_t m, std::size_t k, ExactBudget budget)
{
    return k == 0 || m <= budget.max_cells / k;
}

}  // namespace

double log_integer(mpz_class const& z)
{
    if (z <= 0) {
        return z == 0 ? kNegInf : std::numeric_limits<double>::quiet_NaN();
    }
    long exponent = 0;
    double const mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_rational(mpq_class const& q)
{
    if (q == 0) {
        return kNegInf;
    }
    return log_integer(q.get_num()) - log_integer(q.get_den());
}

bool DualProb::consistent(double rel_tol) const
{
    if (!(log_value <= 0.0)) {
        return false;
    }
    if (!exact) {
        return true;
    }
    if (*exact < 0 || *exact > 1) {
        return false;
    }
    double const exact_log = log_rational(*exact);
    if (exact_log == kNegInf || log_value == kNegInf) {
        return exact_log == log_value;
    }
    return std::abs(exact_log - log_value) <= rel_tol * std::max(1.0, std::abs(log_value));
}

mpz_class stirling2(std::size_t m, std::size_t k, ExactBudget budget)
{
    if (!within_budget(m, k, budget)) {
        throw BudgetError("stirling2: table of " + std::to_string(m) + " x " + std::to_string(k) +
                          " cells exceeds the exact budget; use the log-space routes");
    }
    if (k > m) {
        return 0;
    }
    if (k == 0) {
        return m == 0 ? 1 : 0;
    }
    // row[j] holds S(i, j) for the current i; updated in place from high j down.
    std::vector<mpz_class> row(k + 1, 0);
    row[0] = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        std::size_t const top = std::min(i, k);
        for (std::size_t j = top; j >= 1; --j) {
            row[j] *= static_cast<unsigned long>(j);
            row[j] += row[j - 1];
        }
        row[0] = 0;
    }
    return row[k];
}

CoverageDistribution::CoverageDistribution(std::size_t alphabet, std::size_t length,
                                           std::vector<double> log_probs)
    : alphabet_(alphabet), length_(length), log_probs_(std::move(log_probs))
{
}

double CoverageDistribution::log_prob(std::size_t k) const
{
    return k < log_probs_.size() ? log_probs_[k] : kNegInf;
}

double CoverageDistribution::prob(std::size_t k) const
{
    return std::exp(log_prob(k));
}

CoverageDistribution coverage_dp(std::size_t alphabet, std::size_t length)
{
    check_coverage_args(alphabet);
    auto const logs = transition_logs(alphabet);
    std::vector<double> cur(alphabet + 1, kNegInf);
    std::vector<double> next(alphabet + 1, kNegInf);
    cur[0] = 0.0;

#pragma omp parallel if (alphabet >= kParallelRowThreshold)
    for (std::size_t t = 0; t < length; ++t) {
        auto const top = static_cast<std::ptrdiff_t>(std::min(t + 1, alphabet));
#pragma omp for schedule(static)
        for (std::ptrdiff_t k = 1; k <= top; ++k) {
            next[static_cast<std::size_t>(k)] = coverage_cell(cur, logs, static_cast<std::size_t>(k));
        }
#pragma omp single
        {
            next[0] = kNegInf;
            std::swap(cur, next);
        }
    }
    return {alphabet, length, std::move(cur)};
}

namespace serial {

CoverageDistribution coverage_dp(std::size_t alphabet, std::size_t length)
{
    check_coverage_args(alphabet);
    auto const logs = transition_logs(alphabet);
    std::vector<double> cur(alphabet + 1, kNegInf);
    std::vector<double> next(alphabet + 1, kNegInf);
    cur[0] = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
        std::size_t const top = std::min(t + 1, alphabet);
        for (std::size_t k = 1; k <= top; ++k) {
            next[k] = coverage_cell(cur, logs, k);
        }
        next[0] = kNegInf;
        std::swap(cur, next);
    }
    return {alphabet, length, std::move(cur)};
}

}  // namespace serial

DualProb onto_prob(std::size_t alphabet, std::size_t length, ExactBudget budget)
{
    if (alphabet < 1) {
        throw DomainError("onto_prob: alphabet must be positive");
    }
    DualProb out;
    if (length < alphabet) {
        out.exact = mpq_class(0);
        out.log_value = kNegInf;
        return out;
    }
    if (within_budget(length, alphabet, budget)) {
        mpq_class q(factorial(alphabet) * stirling2(length, alphabet, budget), power(alphabet, length));
        q.canonicalize();
        out.exact = std::move(q);
    }
    out.log_value = coverage_dp(alphabet, length).log_prob(alphabet);
    return out;
}

DualProb mass(ModelParams const& params, ExactBudget budget)
{
    return onto_prob(params.types(), params.window(), budget);
}

DualProb flux(ModelParams const& params, ExactBudget budget)
{
    std::size_t const n = params.types();
    std::size_t const window = params.window();
    if (n < 2) {
        throw DomainError("flux: undefined for a single coupon type (completion at the first draw)");
    }
    DualProb out;
    if (within_budget(window - 1, n - 1, budget)) {
        mpq_class q(mpz_class(static_cast<unsigned long>(n - 1)) * factorial(n - 1) *
                        stirling2(window - 1, n - 1, budget),
                    power(n, window));
        q.canonicalize();
        out.exact = std::move(q);
    }
    out.log_value = log_survival(n, window) + coverage_dp(n - 1, window - 1).log_prob(n - 1);
    return out;
}

mpq_class flux_factored_exact(ModelParams const& params, ExactBudget budget)
{
    std::size_t const n = params.types();
    std::size_t const window = params.window();
    if (n < 2) {
        throw DomainError("flux: undefined for a single coupon type (completion at the first draw)");
    }
    mpq_class survival(power(n - 1, window), power(n, window));
    survival.canonicalize();
    mpq_class onto(factorial(n - 1) * stirling2(window - 1, n - 1, budget), power(n - 1, window - 1));
    onto.canonicalize();
    return survival * onto;
}

mpq_class mass_inclusion_exclusion(ModelParams const& params)
{
    std::size_t const n = params.types();
    std::size_t const window = params.window();
    mpz_class sum = 0;
    mpz_class binom;
    for (std::size_t j = 0; j <= n; ++j) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
        mpz_class term = binom * power(n - j, window);
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    mpq_class out(sum, power(n, window));
    out.canonicalize();
    return out;
}

double log_survival(std::size_t types, std::size_t draws)
{
    if (draws == 0) {
        return 0.0;
    }
    if (types <= 1) {
        return kNegInf;
    }
    return static_cast<double>(draws) * std::log1p(-1.0 / static_cast<double>(types));
}

double expected_missing(std::size_t alphabet, std::size_t length)
{
    return static_cast<double>(alphabet) * std::exp(log_survival(alphabet, length));
}

double occupancy_upper_bound(std::size_t alphabet, std::size_t length)
{
    if (alphabet < 2 || length < alphabet) {
        throw DomainError("occupancy_upper_bound: requires length >= alphabet >= 2");
    }
    return std::exp(-expected_missing(alphabet, length));
}

}  // namespace expiring
