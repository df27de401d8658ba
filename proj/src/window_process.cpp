// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/window_process.hpp"

#include <string>

#include "expiring/errors.hpp"

namespace expiring {

WindowProcessState::WindowProcessState(ModelParams const& params)
    : params_(params), ring_(params.window(), 0), counts_(params.types(), 0)
{
}

WindowProcessState WindowProcessState::from_window(ModelParams const& params, std::span<Symbol const> draws)
{
    if (draws.size() != params.window()) {
        throw DomainError("from_window: expected " + std::to_string(params.window()) + " draws");
    }
    WindowProcessState state(params);
    for (Symbol s : draws) {
        state.step(s);
    }
    return state;
}

StepEvent WindowProcessState::step(Symbol symbol)
{
    if (symbol < 1 || symbol > params_.types()) {
        throw DomainError("step: symbol " + std::to_string(symbol) + " outside 1.." +
                          std::to_string(params_.types()));
    }
    bool const was_complete = complete();
    std::size_t const window = params_.window();
    if (time_ >= window) {
        Symbol const leaving = ring_[head_];
        if (--counts_[leaving - 1] == 0) {
            --distinct_;
        }
        ring_[head_] = symbol;
        head_ = head_ + 1 == window ? 0 : head_ + 1;
    } else {
        ring_[time_] = symbol;
    }
    if (counts_[symbol - 1]++ == 0) {
        ++distinct_;
    }
    ++time_;
    bool const now_complete = complete();
    return {now_complete && !was_complete, was_complete && !now_complete};
}

std::vector<Symbol> WindowProcessState::window_contents() const
{
    std::size_t const window = params_.window();
    if (time_ < window) {
        return {ring_.begin(), ring_.begin() + static_cast<std::ptrdiff_t>(time_)};
    }
    std::vector<Symbol> out;
    out.reserve(window);
    for (std::size_t i = 0; i < window; ++i) {
        out.push_back(ring_[(head_ + i) % window]);
    }
    return out;
}

}  // namespace expiring
