// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include <gmpxx.h>

#include "expiring/model_params.hpp"

namespace expiring {

/// Ground truth at tiny scale by brute-force enumeration and exact linear solves.
/// Every routine refuses to run past its budget rather than fall back to sampling.
namespace oracle {

inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;
inline constexpr std::uint64_t kChainBudget = 30'000;
inline constexpr std::uint64_t kFullWindowChainBudget = 300;

/// Fraction of the types^window words that are onto.
mpq_class enumerate_mass(ModelParams const& params);

/// Fraction of words of length window+1 whose first window is not onto and
/// whose last window is.
mpq_class enumerate_flux(ModelParams const& params);

/// P(E_0 = 1, E_u = 1) by enumerating all words of length window+u+1.
mpq_class exact_entry_pair(ModelParams const& params, std::size_t offset);

/// P(E_u = 1 | E_0 = 1) = exact_entry_pair / enumerate_flux.
mpq_class exact_conditional_entry(ModelParams const& params, std::size_t offset);

/// sum_{u=1}^{window} P(E_u = 1 | E_0 = 1).
mpq_class exact_theta(ModelParams const& params);

struct ChainSolveResult {
    mpq_class expected_T;
    double expected_T_value = 0.0;
    std::uint64_t states = 0;         ///< types^window full-window states covered
    std::uint64_t lumped_states = 0;  ///< transient states actually solved
};

/// E[T] for the collector started empty, including completion before the
/// first expiry. Solved exactly on the chain of last-occurrence ages: a
/// window's future depends only on the set of ages (draws since the last
/// copy) of the types it holds. Budget: types^window <= kChainBudget.
ChainSolveResult exact_expected_T(ModelParams const& params);

/// Same quantity on the unreduced chain over whole windows, with the first
/// `window` draws enumerated. Budget: types^window <= kFullWindowChainBudget.
ChainSolveResult exact_expected_T_full_window(ModelParams const& params);

}  // namespace oracle

}  // namespace expiring
