// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "expiring/model_params.hpp"
#include "expiring/onto_sampler.hpp"
#include "expiring/rng.hpp"
#include "expiring/window_process.hpp"

namespace expiring {

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000'000;

/// Completion times of independent collectors started empty.
struct TrialBatch {
    ModelParams params;
    std::uint64_t master_seed = 0;
    std::size_t trials = 0;
    std::vector<std::uint64_t> samples;  ///< in trial order, truncated trials removed
    std::size_t truncated_count = 0;
};

/// Run `trials` collectors from empty, trial i on substream i of master_seed,
/// recording the first time the window holds every type. Trials that reach
/// step_cap draws are counted as truncated. OpenMP-parallel over trials.
TrialBatch sample_T(ModelParams const& params, std::size_t trials, std::uint64_t master_seed,
                    std::uint64_t step_cap = kDefaultStepCap);

/// One collector from empty; returns 0 when truncated at step_cap.
std::uint64_t completion_time(ModelParams const& params, Engine& engine, std::uint64_t step_cap);

struct ScanResult {
    std::uint64_t horizon = 0;
    std::uint64_t entries = 0;
    double flux_estimate = 0.0;
    std::optional<double> stderr_estimate;  ///< absent with fewer than two full blocks
    std::size_t blocks = 0;                 ///< full blocks of 4 * window steps used for stderr
};

/// Count entries into the onto set over `horizon` stationary steps.
///
/// The horizon is cut into chunks that each start from `window` fresh iid
/// draws (an exact stationary start) on their own substream. The standard
/// error is the closed-form non-overlapping block bootstrap with block
/// length 4 * window.
ScanResult stationary_entry_scan(ModelParams const& params, std::uint64_t horizon, std::uint64_t master_seed);

/// Record of the `window` draws after a conditioned entry at time 0.
struct EntryTrace {
    std::size_t horizon = 0;                    ///< = window
    std::vector<std::uint8_t> entries;          ///< E_1..E_window
    std::vector<std::size_t> last_occurrence;   ///< R_1..R_{window-1} of the middle block
};

/// Samples the entry characterisation directly: missing colour a, middle block
/// a uniform onto word over the other colours, departing symbol != a, then
/// appends a and evolves `window` fresh draws. Requires at least two types.
EntryTrace conditional_entry_trial(ModelParams const& params, std::uint64_t master_seed);

/// Same, reusing a prepared sampler over types-1 symbols of length window-1.
EntryTrace conditional_entry_trial(ModelParams const& params, OntoWordSampler const& middle, Engine& engine);

/// sum_u (R_u/n)(1-1/n)^{u-1} exp(-(R_u-1)_+ (1-1/(n-1))^{u-1}) over u = 1..window-1,
/// an upper bound for the conditional number of further entries before the endpoint.
double entry_pair_bound(ModelParams const& params, std::vector<std::size_t> const& last_occurrence);

struct ThetaEstimate {
    std::size_t trials = 0;
    double theta_hat = 0.0;
    std::optional<double> theta_stderr;      ///< absent for a single trial
    std::vector<double> offset_rates;        ///< empirical P(E_u = 1 | E_0 = 1), u = 1..window
    double bound_mean = 0.0;                 ///< mean of entry_pair_bound over traces
    std::optional<double> bound_stderr;

    double offset_stderr(std::size_t u) const;
};

/// Monte Carlo estimate of theta = sum_{u=1}^{M} P(E_u = 1 | E_0 = 1).
/// OpenMP-parallel over trials; trial i uses substream i.
ThetaEstimate theta_estimate(ModelParams const& params, std::size_t trials, std::uint64_t master_seed);

namespace serial {
// Single-threaded references; identical results to the parallel drivers.
TrialBatch sample_T(ModelParams const& params, std::size_t trials, std::uint64_t master_seed,
                    std::uint64_t step_cap = kDefaultStepCap);
ScanResult stationary_entry_scan(ModelParams const& params, std::uint64_t horizon, std::uint64_t master_seed);
ThetaEstimate theta_estimate(ModelParams const& params, std::size_t trials, std::uint64_t master_seed);
}  // namespace serial

}  // namespace expiring
