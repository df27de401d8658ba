// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace expiring {

/// Sum of `colors` iid zero-truncated Poisson counts tuned so the sum has mean `total`:
/// tau solves tau / (1 - e^{-tau}) = total / colors. At total == colors the
/// family degenerates to the point mass at 1 (tau = 0).
class ZtpModel {
public:
    ZtpModel(std::size_t colors, std::size_t total);

    std::size_t colors() const noexcept { return colors_; }
    std::size_t total() const noexcept { return total_; }
    double tau() const noexcept { return tau_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return variance_; }
    /// colors * variance, the variance of the sum.
    double sum_variance() const noexcept { return static_cast<double>(colors_) * variance_; }

private:
    std::size_t colors_;
    std::size_t total_;
    double tau_;
    double mean_;
    double variance_;
};

/// P(D = k) = tau^k / (k! (e^tau - 1)) for k >= 1; throws DomainError for k = 0.
double ztp_pmf(double tau, std::size_t k);
double ztp_pmf(ZtpModel const& model, std::size_t k);

/// Variance of one zero-truncated Poisson count, mu (1 + tau - mu).
double ztp_variance(double tau);

inline constexpr std::uint64_t kConvolutionBudget = 100'000'000;
inline constexpr double kPmfTailCutoff = 1e-15;

struct SumPointMass {
    double probability = 0.0;
    double truncated_mass = 0.0;  ///< upper bound on probability dropped by the pmf cut
};

/// P(D_1 + ... + D_N = m) by iterated convolution of the pmf cut where its
/// tail falls below kPmfTailCutoff. Each round is OpenMP-parallel over the
/// output support. Throws BudgetError when N * m exceeds kConvolutionBudget.
SumPointMass ztp_sum_exact(ZtpModel const& model);

namespace serial {
SumPointMass ztp_sum_exact(ZtpModel const& model);
}  // namespace serial

/// (2 pi B)^{-1/2} with B the variance of the sum.
double gaussian_local(ZtpModel const& model);
double gaussian_local(double sum_variance);

/// C(N, k) p_2^k p_1^{N-k} with k = m - N: the event that exactly k counts are 2
/// and the rest are 1. A lower bound for ztp_sum_exact.
double bounded_B_construction(ZtpModel const& model);

/// P(Bin(trials, successes/trials) = successes), via log-gamma.
double binomial_point_at_mean(std::size_t trials, std::size_t successes);

/// P_*(C_u) = P(S_N = m) P(Bin(m, u/m) = u). Requires m > N >= 2 and 1 <= u <= m-1.
double conditioning_prob(std::size_t colors, std::size_t total, std::size_t split);

/// |E e^{itD}| = |e^{tau e^{it}} - 1| / (e^tau - 1), for |t| <= pi.
double cf_modulus(double tau, double t);

}  // namespace expiring
