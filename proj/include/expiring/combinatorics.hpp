// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "expiring/dual_prob.hpp"
#include "expiring/model_params.hpp"

namespace expiring {

/// Cell budget for exact big-integer tables. A Stirling table S(m, k) costs
/// m * k cells; beyond the budget only log-space routes are used.
struct ExactBudget {
    std::size_t max_cells = 10'000'000;
};

/// Stirling number of the second kind via S(m,k) = k S(m-1,k) + S(m-1,k-1).
/// Throws BudgetError when m * k exceeds the budget.
mpz_class stirling2(std::size_t m, std::size_t k, ExactBudget budget = {});

/// Probability that `length` uniform draws over `alphabet` symbols hit exactly
/// k distinct symbols, for k = 0..alphabet. Stored as natural logs.
class CoverageDistribution {
public:
    CoverageDistribution(std::size_t alphabet, std::size_t length, std::vector<double> log_probs);

    std::size_t alphabet() const noexcept { return alphabet_; }
    std::size_t length() const noexcept { return length_; }
    std::vector<double> const& log_probs() const noexcept { return log_probs_; }

    double log_prob(std::size_t k) const;
    double prob(std::size_t k) const;

private:
    std::size_t alphabet_;
    std::size_t length_;
    std::vector<double> log_probs_;
};

/// Forward occupancy recurrence
///   p(t+1,k) = p(t,k) k/n + p(t,k-1) (n-k+1)/n,  p(0,0) = 1,
/// evaluated in log space. Each row is split across OpenMP threads; the
/// result does not depend on the thread count.
CoverageDistribution coverage_dp(std::size_t alphabet, std::size_t length);

namespace serial {
/// Single-threaded reference for coverage_dp; bitwise identical output.
CoverageDistribution coverage_dp(std::size_t alphabet, std::size_t length);
}  // namespace serial

/// Probability rho_{N,m} = N! S(m,N) / N^m that an iid uniform word of
/// length m over N symbols is onto. Exact zero when m < N.
DualProb onto_prob(std::size_t alphabet, std::size_t length, ExactBudget budget = {});

/// Stationary probability that a window is onto: types! S(window, types) / types^window.
DualProb mass(ModelParams const& params, ExactBudget budget = {});

/// Stationary entry flux
///   mu = (n-1) (n-1)! S(M-1, n-1) / n^M = (1 - 1/n)^M rho_{n-1, M-1}.
/// Requires at least two types.
DualProb flux(ModelParams const& params, ExactBudget budget = {});

/// Exact flux through the factored form (1-1/n)^M (n-1)! S(M-1,n-1) / (n-1)^(M-1).
mpq_class flux_factored_exact(ModelParams const& params, ExactBudget budget = {});

/// Exact mass through the alternating inclusion-exclusion sum. Cross-check only.
mpq_class mass_inclusion_exclusion(ModelParams const& params);

/// M * log(1 - 1/n), accurate for large n.
double log_survival(std::size_t types, std::size_t draws);

/// Expected number of unseen symbols N (1 - 1/N)^m after m draws.
double expected_missing(std::size_t alphabet, std::size_t length);

/// exp(-N (1 - 1/N)^m), an upper bound for onto_prob(N, m). Requires m >= N >= 2.
double occupancy_upper_bound(std::size_t alphabet, std::size_t length);

}  // namespace expiring
