// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

// Times the OpenMP kernels against their serial references and checks that
// both produce the same answer. Thread count follows OMP_NUM_THREADS.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

#include <omp.h>

#include "expiring/combinatorics.hpp"
#include "expiring/window_sim.hpp"
#include "expiring/ztp_local.hpp"

namespace {

template <class F>
double seconds(F&& f)
{
    auto const start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(char const* name, double serial_s, double parallel_s, bool same)
{
    std::printf("%-24s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, same ? "identical" : "MISMATCH");
}

}  // namespace

int main()
{
    using namespace expiring;
    std::printf("threads: %d\n", omp_get_max_threads());
    std::uint64_t const seed = 7;

    {
        ModelParams const p(8, 24);
        std::optional<TrialBatch> a, b;
        double const s = seconds([&] { a = serial::sample_T(p, 20000, seed); });
        double const q = seconds([&] { b = sample_T(p, 20000, seed); });
        report("sample_T(8,24)", s, q, a->samples == b->samples);
    }
    {
        ModelParams const p(10, 30);
        std::optional<ScanResult> a, b;
        double const s = seconds([&] { a = serial::stationary_entry_scan(p, 20'000'000, seed); });
        double const q = seconds([&] { b = stationary_entry_scan(p, 20'000'000, seed); });
        report("scan(10,30)", s, q, a->entries == b->entries);
    }
    {
        ModelParams const p(50, 150);
        std::optional<ThetaEstimate> a, b;
        double const s = seconds([&] { a = serial::theta_estimate(p, 20000, seed); });
        double const q = seconds([&] { b = theta_estimate(p, 20000, seed); });
        report("theta(50,150)", s, q, a->offset_rates == b->offset_rates && a->bound_mean == b->bound_mean);
    }
    {
        std::size_t const n = 4000;
        std::size_t const m = 30000;
        double x = 0.0;
        double y = 0.0;
        double const s = seconds([&] { x = serial::coverage_dp(n, m).log_prob(n); });
        double const q = seconds([&] { y = coverage_dp(n, m).log_prob(n); });
        report("coverage_dp(4000,30000)", s, q, x == y);
    }
    {
        ZtpModel const model(3000, 6000);
        std::optional<SumPointMass> a, b;
        double const s = seconds([&] { a = serial::ztp_sum_exact(model); });
        double const q = seconds([&] { b = ztp_sum_exact(model); });
        report("ztp_sum(3000,6000)", s, q, a->probability == b->probability);
    }
    return 0;
}
