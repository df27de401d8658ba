// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "expiring/combinatorics.hpp"
#include "expiring/errors.hpp"
#include "expiring/exact_oracle.hpp"

using namespace expiring;

namespace {

mpq_class q(char const* text)
{
    mpq_class value(text);
    value.canonicalize();
    return value;
}

}  // namespace

TEST_CASE("stirling2 small values")
{
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(7, 5) == 140);
    CHECK(stirling2(5, 5) == 1);
    CHECK(stirling2(0, 0) == 1);
    CHECK(stirling2(5, 0) == 0);
    CHECK(stirling2(3, 5) == 0);
    CHECK(stirling2(10, 3) == 9330);
}

TEST_CASE("stirling2 respects the cell budget")
{
    CHECK_THROWS_AS(stirling2(5000, 4000, ExactBudget{1000}), BudgetError);
}

TEST_CASE("mass and flux at hand-enumerated parameters")
{
    CHECK(*mass(ModelParams(3, 3)).exact == q("2/9"));
    CHECK(*mass(ModelParams(2, 3)).exact == q("3/4"));
    CHECK(*mass(ModelParams(2, 5)).exact == q("15/16"));
    CHECK(*flux(ModelParams(2, 2)).exact == q("1/4"));
    CHECK(*flux(ModelParams(3, 3)).exact == q("4/27"));
    CHECK(*flux(ModelParams(2, 3)).exact == q("1/8"));
    CHECK(*flux(ModelParams(6, 8)).exact == q("84000/1679616"));
    CHECK(flux(ModelParams(3, 3)).log_value == doctest::Approx(std::log(4.0 / 27.0)).epsilon(1e-13));
}

TEST_CASE("flux is undefined for one type")
{
    CHECK_THROWS_AS(flux(ModelParams(1, 4)), DomainError);
    CHECK(*mass(ModelParams(1, 4)).exact == 1);
}

TEST_CASE("coverage distribution")
{
    auto const d3 = coverage_dp(3, 3);
    CHECK(d3.prob(3) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    auto const d2 = coverage_dp(2, 3);
    CHECK(d2.prob(2) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(d2.prob(1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(d2.prob(0) == 0.0);

    auto const big = coverage_dp(40, 90);
    double total = 0.0;
    for (std::size_t k = 0; k <= 40; ++k) {
        total += big.prob(k);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parallel coverage kernel matches the serial reference bit for bit")
{
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{600, 1800}, {1000, 1000}, {20, 50}}) {
        auto const a = coverage_dp(n, m);
        auto const b = serial::coverage_dp(n, m);
        for (std::size_t k = 0; k <= n; ++k) {
            REQUIRE(a.log_prob(k) == b.log_prob(k));
        }
    }
}

TEST_CASE("onto probability")
{
    CHECK(*onto_prob(3, 3).exact == q("2/9"));
    CHECK(*onto_prob(5, 7).exact == q("16800/78125"));
    auto const empty = onto_prob(3, 2);
    CHECK(*empty.exact == 0);
    CHECK(std::isinf(empty.log_value));
    CHECK(empty.log_value < 0);
}

TEST_CASE("log mode beyond the exact budget")
{
    auto const p = flux(ModelParams(2000, 15202), ExactBudget{1000});
    CHECK_FALSE(p.exact.has_value());
    CHECK(std::isfinite(p.log_value));
}

TEST_CASE("exact values agree with enumeration and with inclusion-exclusion")
{
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::size_t m = n; m <= 9; ++m) {
            ModelParams const params(n, m);
            CAPTURE(n);
            CAPTURE(m);
            auto const pi = mass(params);
            auto const mu = flux(params);
            CHECK(*pi.exact == oracle::enumerate_mass(params));
            CHECK(*pi.exact == mass_inclusion_exclusion(params));
            CHECK(*mu.exact == flux_factored_exact(params));
            CHECK(*mu.exact <= *pi.exact);
            CHECK(pi.consistent());
            CHECK(mu.consistent());
        }
    }
}

TEST_CASE("flux never exceeds mass on a wider grid")
{
    for (std::size_t n : {5, 10, 30, 100}) {
        for (std::size_t m : {n, n + 1, 2 * n, 5 * n}) {
            ModelParams const params(n, m);
            auto const pi = mass(params);
            auto const mu = flux(params);
            CHECK(mu.log_value <= pi.log_value);
            CHECK(pi.consistent());
            CHECK(mu.consistent());
            CHECK(*mu.exact == flux_factored_exact(params));
        }
    }
}

TEST_CASE("survival factor keeps precision for large type counts")
{
    CHECK(log_survival(1'000'000, 3) == doctest::Approx(3.0 * std::log1p(-1e-6)).epsilon(1e-15));
    CHECK(log_survival(5, 0) == 0.0);
    CHECK(std::isinf(log_survival(1, 3)));
}

TEST_CASE("occupancy upper bound")
{
    CHECK(occupancy_upper_bound(2, 2) == doctest::Approx(std::exp(-0.5)));
    CHECK(occupancy_upper_bound(3, 3) == doctest::Approx(std::exp(-8.0 / 9.0)));
    CHECK(occupancy_upper_bound(2, 2) >= 0.5);
    CHECK(occupancy_upper_bound(3, 3) >= 2.0 / 9.0);
    CHECK(std::log(occupancy_upper_bound(10, 40)) >= onto_prob(10, 40).log_value);
    for (std::size_t n : {2, 3, 7, 25, 120}) {
        for (std::size_t m : {n, n + 3, 2 * n, 4 * n, 9 * n}) {
            CHECK(onto_prob(n, m, ExactBudget{0}).log_value <= -expected_missing(n, m) + 1e-12);
        }
    }
}

TEST_CASE("missing means of the conditioned and unconditioned windows are comparable")
{
    for (std::size_t n : {10, 100, 1000, 10000}) {
        double const nlog = static_cast<double>(n) * std::log(static_cast<double>(n));
        for (double frac : {0.3, 0.6, 1.0}) {
            auto const m = std::max<std::size_t>(n, static_cast<std::size_t>(frac * nlog));
            double const ratio = expected_missing(n - 1, m - 1) / expected_missing(n, m);
            CHECK(ratio >= 0.5);
            CHECK(ratio <= 2.0);
        }
    }
}
