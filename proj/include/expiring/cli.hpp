// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "expiring/window_sim.hpp"

namespace expiring::cli {

enum class Command { flux, mass, simulate, scan, theta, oracle, ztp, rate, regimes };
enum class OutputFormat { json, csv };

inline constexpr std::uint64_t kDefaultSeed = 20'261'016;

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kBudget = 3,
    kDomain = 4,
};

struct RunConfig {
    Command command = Command::flux;
    std::vector<std::size_t> n;  ///< one value except for `rate`
    // Window selectors; exactly one applies where a window is needed.
    std::optional<std::size_t> window;
    std::optional<double> alpha;   ///< M = floor(alpha n log n)
    std::optional<double> linear;  ///< M = floor(a n)
    std::optional<double> offset;  ///< M = ceil(n log n + c n)
    std::size_t trials = 10'000;
    std::uint64_t horizon = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t step_cap = kDefaultStepCap;
    OutputFormat format = OutputFormat::json;
    bool emit_samples = false;
    std::vector<std::size_t> colors;  ///< ztp: N values
    std::vector<std::size_t> totals;  ///< ztp: m values
};

/// Window length selected by the config for `types` coupon types.
std::size_t resolve_window(RunConfig const& config, std::size_t types);

/// Runs one command, writing the complete result (or an error object) to `out`.
int run(RunConfig const& config, std::ostream& out);

/// Parses flags and runs. Usage errors produce exit code 2.
int run_cli(int argc, char const* const* argv, std::ostream& out);

}  // namespace expiring::cli
