// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/onto_sampler.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>

#include "expiring/combinatorics.hpp"
#include "expiring/errors.hpp"

namespace expiring {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRejectionThreshold = 0.01;

double log_add(double a, double b)
{
    if (a < b) {
        std::swap(a, b);
    }
    return b == kNegInf ? a : a + std::log1p(std::exp(b - a));
}

}  // namespace

OntoWordSampler::OntoWordSampler(std::size_t alphabet, std::size_t length, OntoMethod method)
    : alphabet_(alphabet), length_(length), method_(method)
{
    if (alphabet < 1 || length < alphabet) {
        throw DomainError("sample_onto_word: need length >= alphabet >= 1, got alphabet " +
                          std::to_string(alphabet) + ", length " + std::to_string(length));
    }
    if (method_ == OntoMethod::automatic) {
        double const log_rho = coverage_dp(alphabet, length).log_prob(alphabet);
        method_ = log_rho >= std::log(kRejectionThreshold) ? OntoMethod::rejection : OntoMethod::sequential;
    }
    if (method_ != OntoMethod::sequential) {
        return;
    }
    auto const n = static_cast<double>(alphabet);
    std::size_t const stride = length + 1;
    cover_log_.assign((alphabet + 1) * stride, kNegInf);
    for (std::size_t r = 0; r <= length; ++r) {
        cover_log_[r] = 0.0;
    }
    for (std::size_t k = 1; k <= alphabet; ++k) {
        double const hit = std::log(static_cast<double>(k) / n);
        double const miss = k == alphabet ? kNegInf : std::log(static_cast<double>(alphabet - k) / n);
        for (std::size_t r = k; r <= length; ++r) {
            cover_log_[k * stride + r] =
                log_add(hit + cover_log_[(k - 1) * stride + r - 1], miss + cover_log_[k * stride + r - 1]);
        }
    }
}

std::vector<Symbol> OntoWordSampler::sample(Engine& engine) const
{
    std::vector<Symbol> word(length_);
    if (method_ == OntoMethod::rejection) {
        std::uniform_int_distribution<Symbol> draw(1, static_cast<Symbol>(alphabet_));
        std::vector<std::uint32_t> seen(alphabet_ + 1);
        std::uint32_t stamp = 0;
        while (true) {
            ++stamp;
            std::size_t distinct = 0;
            for (auto& s : word) {
                s = draw(engine);
                if (seen[s] != stamp) {
                    seen[s] = stamp;
                    ++distinct;
                }
            }
            if (distinct == alphabet_) {
                return word;
            }
        }
    }

    // pool[0..missing) are the symbols not yet drawn.
    std::vector<Symbol> pool(alphabet_);
    for (std::size_t i = 0; i < alphabet_; ++i) {
        pool[i] = static_cast<Symbol>(i + 1);
    }
    std::size_t missing = alphabet_;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto const n = static_cast<double>(alphabet_);
    for (std::size_t pos = 0; pos < length_; ++pos) {
        std::size_t const remaining = length_ - pos;
        double p_missing = 0.0;
        if (missing > 0) {
            p_missing = std::exp(std::log(static_cast<double>(missing) / n) +
                                 cover_log(missing - 1, remaining - 1) - cover_log(missing, remaining));
        }
        if (missing > 0 && (missing == remaining || unit(engine) < p_missing)) {
            std::uniform_int_distribution<std::size_t> pick(0, missing - 1);
            std::size_t const i = pick(engine);
            word[pos] = pool[i];
            std::swap(pool[i], pool[missing - 1]);
            --missing;
        } else {
            std::uniform_int_distribution<std::size_t> pick(missing, alphabet_ - 1);
            word[pos] = pool[pick(engine)];
        }
    }
    return word;
}

std::vector<Symbol> sample_onto_word(std::size_t alphabet, std::size_t length, std::uint64_t master_seed,
                                     OntoMethod method)
{
    OntoWordSampler sampler(alphabet, length, method);
    Engine engine = substream(master_seed, 0);
    return sampler.sample(engine);
}

std::vector<std::size_t> last_occurrence_profile(std::span<Symbol const> word)
{
    std::unordered_map<Symbol, std::size_t> last;
    for (std::size_t i = 0; i < word.size(); ++i) {
        last[word[i]] = i + 1;
    }
    std::vector<std::size_t> ending_at(word.size() + 1, 0);
    for (auto const& [symbol, pos] : last) {
        ++ending_at[pos];
    }
    std::vector<std::size_t> profile(word.size());
    std::size_t running = 0;
    for (std::size_t u = 1; u <= word.size(); ++u) {
        running += ending_at[u];
        profile[u - 1] = running;
    }
    return profile;
}

std::size_t last_occurrence_counts(std::span<Symbol const> word, std::size_t u)
{
    if (u < 1 || u > word.size()) {
        throw DomainError("last_occurrence_counts: u must lie in 1..length");
    }
    return last_occurrence_profile(word)[u - 1];
}

}  // namespace expiring
