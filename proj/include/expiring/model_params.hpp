// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>

#include "expiring/errors.hpp"

namespace expiring {

/// Coupon count and window length of an expiring collector.
///
/// A coupon drawn at time t is active for draws t..t+window-1, so the
/// collector is complete when the last `window` draws contain all `types`.
/// Completion is impossible when window < types, so such pairs are rejected.
class ModelParams {
public:
    ModelParams(std::size_t types, std::size_t window) : types_(types), window_(window)
    {
        if (types < 1) {
            throw DomainError("ModelParams: need at least one coupon type");
        }
        if (window < types) {
            throw DomainError("ModelParams: window " + std::to_string(window) +
                              " shorter than type count " + std::to_string(types));
        }
    }

    std::size_t types() const noexcept { return types_; }
    std::size_t window() const noexcept { return window_; }

    friend bool operator==(ModelParams const&, ModelParams const&) = default;

private:
    std::size_t types_;
    std::size_t window_;
};

}  // namespace expiring
