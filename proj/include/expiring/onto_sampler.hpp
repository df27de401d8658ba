// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "expiring/rng.hpp"
#include "expiring/window_process.hpp"

namespace expiring {

enum class OntoMethod {
    automatic,   ///< rejection when the onto probability is at least 0.01
    rejection,   ///< redraw iid words until one is onto
    sequential,  ///< exact conditional draw, one position at a time
};

/// Exact uniform sampler over onto words of a fixed length.
///
/// The sequential path keeps log h(k, r), the probability that r iid draws
/// cover a fixed set of k symbols. With k symbols still missing and r draws
/// left, the next draw is a missing symbol with probability
/// (k/N) h(k-1, r-1) / h(k, r).
class OntoWordSampler {
public:
    OntoWordSampler(std::size_t alphabet, std::size_t length, OntoMethod method = OntoMethod::automatic);

    /// Word over 1..alphabet containing every symbol.
    std::vector<Symbol> sample(Engine& engine) const;

    OntoMethod method() const noexcept { return method_; }
    std::size_t alphabet() const noexcept { return alphabet_; }
    std::size_t length() const noexcept { return length_; }

private:
    double cover_log(std::size_t k, std::size_t r) const { return cover_log_[k * (length_ + 1) + r]; }

    std::size_t alphabet_;
    std::size_t length_;
    OntoMethod method_;
    std::vector<double> cover_log_;
};

std::vector<Symbol> sample_onto_word(std::size_t alphabet, std::size_t length, std::uint64_t master_seed,
                                     OntoMethod method = OntoMethod::automatic);

/// Number of letters whose last occurrence in `word` is at position <= u (1-based).
std::size_t last_occurrence_counts(std::span<Symbol const> word, std::size_t u);

/// R_1..R_len in one O(len) pass; element u-1 holds R_u.
std::vector<std::size_t> last_occurrence_profile(std::span<Symbol const> word);

}  // namespace expiring
