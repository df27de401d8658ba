// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expiring/model_params.hpp"

namespace expiring {

/// Coupon symbol in 1..types.
using Symbol = std::uint32_t;

struct StepEvent {
    bool entered = false;  ///< window became onto at this draw
    bool exited = false;   ///< window stopped being onto at this draw
};

/// The last min(t, window) draws with per-type counts, updated in O(1) per draw.
class WindowProcessState {
public:
    explicit WindowProcessState(ModelParams const& params);

    /// State after the given full window of draws (time = window length).
    static WindowProcessState from_window(ModelParams const& params, std::span<Symbol const> draws);

    StepEvent step(Symbol symbol);

    bool complete() const noexcept { return distinct_ == params_.types(); }
    std::size_t distinct() const noexcept { return distinct_; }
    std::uint64_t time() const noexcept { return time_; }
    ModelParams const& params() const noexcept { return params_; }

    /// Occurrences of `symbol` in the current window.
    std::uint32_t count(Symbol symbol) const { return counts_.at(symbol - 1); }

    /// Current window contents, oldest first.
    std::vector<Symbol> window_contents() const;

private:
    ModelParams params_;
    std::vector<Symbol> ring_;
    std::vector<std::uint32_t> counts_;
    std::size_t head_ = 0;  // slot of the oldest draw once the ring is full
    std::size_t distinct_ = 0;
    std::uint64_t time_ = 0;
};

}  // namespace expiring
