// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "expiring/asymptotics.hpp"
#include "expiring/errors.hpp"
#include "expiring/ztp_local.hpp"

using namespace expiring;

TEST_CASE("pmf normalisation and moments")
{
    for (double tau : {0.05, 0.5, 1.5, 5.0}) {
        CAPTURE(tau);
        double total = 0.0;
        double mean = 0.0;
        double second = 0.0;
        for (std::size_t k = 1; k <= 80; ++k) {
            double const p = ztp_pmf(tau, k);
            total += p;
            mean += static_cast<double>(k) * p;
            second += static_cast<double>(k * k) * p;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
        CHECK(std::abs(mean - ztp_mean(tau)) < 1e-9);
        CHECK(second - mean * mean == doctest::Approx(ztp_variance(tau)).epsilon(1e-9));
    }
    double tail = 1.0;
    for (std::size_t k = 1; k <= 50; ++k) {
        tail -= ztp_pmf(5.0, k);
    }
    CHECK(tail < 1e-12);
    CHECK(ztp_pmf(1e-9, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ztp_pmf(1.0, 0), DomainError);
}

TEST_CASE("model at the linear ratio two")
{
    ZtpModel const model(200, 400);
    CHECK(model.tau() == doctest::Approx(tau_solve(2.0)).epsilon(1e-14));
    CHECK(model.mean() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(model.variance() == doctest::Approx(1.18724852).epsilon(1e-8));
    CHECK(model.sum_variance() == doctest::Approx(237.4497).epsilon(1e-6));
    CHECK(gaussian_local(model) == doctest::Approx(0.0259).epsilon(0.01));
    CHECK(gaussian_local(1.0 / (2.0 * std::numbers::pi)) == doctest::Approx(1.0));
}

TEST_CASE("degenerate model with one count per colour")
{
    ZtpModel const model(10, 10);
    CHECK(model.tau() == 0.0);
    CHECK(model.variance() == 0.0);
    CHECK(ztp_sum_exact(model).probability == 1.0);
    CHECK_THROWS_AS(ZtpModel(10, 9), DomainError);
}

TEST_CASE("exact convolution against the local limit")
{
    double prev_gap = 1.0;
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{100, 200}, {200, 400}, {400, 800}}) {
        ZtpModel const model(n, m);
        auto const exact = ztp_sum_exact(model);
        double const ratio = exact.probability * std::sqrt(2.0 * std::numbers::pi * model.sum_variance());
        CHECK(ratio >= 0.9);
        CHECK(ratio <= 1.1);
        CHECK(std::abs(ratio - 1.0) < prev_gap);
        prev_gap = std::abs(ratio - 1.0);
        CHECK(exact.truncated_mass < 1e-12);
    }
    ZtpModel const model(200, 400);
    CHECK(std::abs(ztp_sum_exact(model).probability / gaussian_local(model) - 1.0) <= 0.10);
}

TEST_CASE("tiny convolution by hand")
{
    // Two colours, total three: P(D1 + D2 = 3) = 2 p(1) p(2).
    ZtpModel const model(2, 3);
    double const p1 = ztp_pmf(model.tau(), 1);
    double const p2 = ztp_pmf(model.tau(), 2);
    CHECK(ztp_sum_exact(model).probability == doctest::Approx(2.0 * p1 * p2).epsilon(1e-13));
}

TEST_CASE("parallel convolution matches the serial reference")
{
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{50, 120}, {1500, 3000}}) {
        ZtpModel const model(n, m);
        CHECK(ztp_sum_exact(model).probability == serial::ztp_sum_exact(model).probability);
    }
}

TEST_CASE("bounded-B construction")
{
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{10, 12}, {100, 200}, {50, 60}, {1000, 1002}}) {
        ZtpModel const model(n, m);
        CHECK(bounded_B_construction(model) <= ztp_sum_exact(model).probability * (1.0 + 1e-12));
    }
    ZtpModel const near(1000, 1002);
    CHECK(bounded_B_construction(near) >= std::pow(1002.0, -5.0));
}

TEST_CASE("conditioning probability")
{
    // Exponent 5 frozen after calibration on this grid.
    double constexpr kExponent = 5.0;
    for (std::size_t n : {20, 50, 100}) {
        for (double ratio : {1.5, 2.0, 4.0}) {
            auto const m = static_cast<std::size_t>(ratio * static_cast<double>(n));
            for (std::size_t u : {std::size_t{1}, m / 4, m / 2, m - 1}) {
                double const p = conditioning_prob(n, m, u);
                CHECK(p >= std::pow(static_cast<double>(m), -kExponent));
                CHECK(p == doctest::Approx(conditioning_prob(n, m, m - u)).epsilon(1e-12));
            }
        }
    }
    CHECK(conditioning_prob(50, 100, 50) >= std::pow(100.0, -5.0));
    double const edge = conditioning_prob(50, 100, 1);
    CHECK(edge > 0.0);
    CHECK(edge >= std::pow(100.0, -8.0));
    CHECK(binomial_point_at_mean(10, 5) == doctest::Approx(252.0 / 1024.0).epsilon(1e-12));
}

TEST_CASE("characteristic function modulus")
{
    CHECK(cf_modulus(1.5, 0.0) == doctest::Approx(1.0));
    // Damping constant 0.05 frozen after calibration.
    CHECK(cf_modulus(1.5, 0.3) <= std::exp(-0.05 * 1.5 * 0.09));
    for (double tau : {0.05, 0.5, 1.5, 5.0, 12.0}) {
        for (int i = 1; i <= 400; ++i) {
            double const t = std::numbers::pi * i / 400.0;
            REQUIRE(cf_modulus(tau, t) < 1.0);
            REQUIRE(cf_modulus(tau, -t) < 1.0);
        }
    }
    CHECK_THROWS_AS(cf_modulus(1.0, 3.5), DomainError);
}
