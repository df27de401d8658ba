// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/window_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "expiring/errors.hpp"

namespace expiring {

namespace {

// Scan chunks hold about this many steps, rounded to whole blocks.
constexpr std::uint64_t kScanChunkTarget = std::uint64_t{1} << 20;

void check_batch_args(ModelParams const& params, std::size_t trials, std::uint64_t step_cap)
{
    if (trials < 1) {
        throw DomainError("sample_T: need at least one trial");
    }
    if (step_cap < params.window()) {
        throw DomainError("sample_T: step_cap must be at least the window length");
    }
}

TrialBatch finish_batch(ModelParams const& params, std::size_t trials, std::uint64_t master_seed,
                        std::vector<std::uint64_t> const& raw)
{
    TrialBatch batch{params, master_seed, trials, {}, 0};
    batch.samples.reserve(raw.size());
    for (std::uint64_t t : raw) {
        if (t == 0) {
            ++batch.truncated_count;
        } else {
            batch.samples.push_back(t);
        }
    }
    if (batch.samples.empty()) {
        throw BudgetError("sample_T: all " + std::to_string(trials) +
                          " trials hit the step cap; raise --step-cap or choose a less extreme regime");
    }
    return batch;
}

struct ScanLayout {
    std::uint64_t block_len = 0;
    std::uint64_t chunk_len = 0;
    std::uint64_t chunks = 0;
};

ScanLayout scan_layout(ModelParams const& params, std::uint64_t horizon)
{
    ScanLayout layout;
    layout.block_len = 4 * static_cast<std::uint64_t>(params.window());
    layout.chunk_len = std::max<std::uint64_t>(1, kScanChunkTarget / layout.block_len) * layout.block_len;
    layout.chunks = (horizon + layout.chunk_len - 1) / layout.chunk_len;
    return layout;
}

struct ChunkScan {
    std::uint64_t entries = 0;
    std::vector<std::uint32_t> block_counts;
};

ChunkScan scan_chunk(ModelParams const& params, std::uint64_t master_seed, std::uint64_t chunk,
                     std::uint64_t steps, std::uint64_t block_len)
{
    Engine engine = substream(master_seed, chunk);
    std::uniform_int_distribution<Symbol> draw(1, static_cast<Symbol>(params.types()));
    WindowProcessState state(params);
    for (std::size_t i = 0; i < params.window(); ++i) {
        state.step(draw(engine));
    }
    ChunkScan out;
    out.block_counts.reserve(steps / block_len);
    std::uint32_t in_block = 0;
    std::uint64_t block_pos = 0;
    for (std::uint64_t s = 0; s < steps; ++s) {
        if (state.step(draw(engine)).entered) {
            ++out.entries;
            ++in_block;
        }
        if (++block_pos == block_len) {
            out.block_counts.push_back(in_block);
            in_block = 0;
            block_pos = 0;
        }
    }
    return out;
}

ScanResult finish_scan(std::uint64_t horizon, std::uint64_t block_len, std::vector<ChunkScan> const& chunks)
{
    ScanResult out;
    out.horizon = horizon;
    std::vector<double> rates;
    for (auto const& c : chunks) {
        out.entries += c.entries;
        for (std::uint32_t b : c.block_counts) {
            rates.push_back(static_cast<double>(b) / static_cast<double>(block_len));
        }
    }
    out.flux_estimate = horizon == 0 ? 0.0 : static_cast<double>(out.entries) / static_cast<double>(horizon);
    out.blocks = rates.size();
    if (rates.size() >= 2) {
        auto const count = static_cast<double>(rates.size());
        double const mean = std::accumulate(rates.begin(), rates.end(), 0.0) / count;
        double ss = 0.0;
        for (double r : rates) {
            ss += (r - mean) * (r - mean);
        }
        out.stderr_estimate = std::sqrt(ss / count / count);
    }
    return out;
}

Symbol skip_symbol(Symbol s, Symbol excluded)
{
    return s < excluded ? s : s + 1;
}

struct ThetaAccumulator {
    std::vector<std::uint64_t> offset_hits;
    std::uint64_t hit_sum = 0;
    std::uint64_t hit_sq_sum = 0;

    explicit ThetaAccumulator(std::size_t window) : offset_hits(window, 0) {}

    void add(EntryTrace const& trace)
    {
        std::uint64_t hits = 0;
        for (std::size_t u = 0; u < trace.entries.size(); ++u) {
            if (trace.entries[u]) {
                ++offset_hits[u];
                ++hits;
            }
        }
        hit_sum += hits;
        hit_sq_sum += hits * hits;
    }

    void merge(ThetaAccumulator const& other)
    {
        for (std::size_t u = 0; u < offset_hits.size(); ++u) {
            offset_hits[u] += other.offset_hits[u];
        }
        hit_sum += other.hit_sum;
        hit_sq_sum += other.hit_sq_sum;
    }
};

std::optional<double> mean_stderr(double sum, double sq_sum, std::size_t count)
{
    if (count < 2) {
        return std::nullopt;
    }
    auto const n = static_cast<double>(count);
    double const mean = sum / n;
    double const var = std::max(0.0, (sq_sum - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
}

ThetaEstimate finish_theta(std::size_t trials, ThetaAccumulator const& acc, std::vector<double> const& bounds)
{
    ThetaEstimate out;
    out.trials = trials;
    auto const n = static_cast<double>(trials);
    out.theta_hat = static_cast<double>(acc.hit_sum) / n;
    out.theta_stderr =
        mean_stderr(static_cast<double>(acc.hit_sum), static_cast<double>(acc.hit_sq_sum), trials);
    out.offset_rates.reserve(acc.offset_hits.size());
    for (std::uint64_t h : acc.offset_hits) {
        out.offset_rates.push_back(static_cast<double>(h) / n);
    }
    double sum = 0.0;
    double sq = 0.0;
    for (double b : bounds) {
        sum += b;
        sq += b * b;
    }
    out.bound_mean = sum / n;
    out.bound_stderr = mean_stderr(sum, sq, trials);
    return out;
}

void check_theta_args(ModelParams const& params, std::size_t trials)
{
    if (params.types() < 2) {
        throw DomainError("theta_estimate: needs at least two types");
    }
    if (trials < 1) {
        throw DomainError("theta_estimate: need at least one trial");
    }
}

}  // namespace

std::uint64_t completion_time(ModelParams const& params, Engine& engine, std::uint64_t step_cap)
{
    std::uniform_int_distribution<Symbol> draw(1, static_cast<Symbol>(params.types()));
    WindowProcessState state(params);
    for (std::uint64_t t = 1; t <= step_cap; ++t) {
        state.step(draw(engine));
        if (state.complete()) {
            return t;
        }
    }
    return 0;
}

TrialBatch sample_T(ModelParams const& params, std::size_t trials, std::uint64_t master_seed,
                    std::uint64_t step_cap)
{
    check_batch_args(params, trials, step_cap);
    std::vector<std::uint64_t> raw(trials, 0);
    auto const count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        Engine engine = substream(master_seed, static_cast<std::uint64_t>(i));
        raw[static_cast<std::size_t>(i)] = completion_time(params, engine, step_cap);
    }
    return finish_batch(params, trials, master_seed, raw);
}

ScanResult stationary_entry_scan(ModelParams const& params, std::uint64_t horizon, std::uint64_t master_seed)
{
    auto const layout = scan_layout(params, horizon);
    std::vector<ChunkScan> chunks(layout.chunks);
    auto const count = static_cast<std::ptrdiff_t>(layout.chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < count; ++c) {
        auto const start = static_cast<std::uint64_t>(c) * layout.chunk_len;
        std::uint64_t const steps = std::min(layout.chunk_len, horizon - start);
        chunks[static_cast<std::size_t>(c)] =
            scan_chunk(params, master_seed, static_cast<std::uint64_t>(c), steps, layout.block_len);
    }
    return finish_scan(horizon, layout.block_len, chunks);
}

EntryTrace conditional_entry_trial(ModelParams const& params, OntoWordSampler const& middle, Engine& engine)
{
    std::size_t const n = params.types();
    std::size_t const window = params.window();
    auto const types = static_cast<Symbol>(n);
    std::uniform_int_distribution<Symbol> any(1, types);
    std::uniform_int_distribution<Symbol> other(1, types - 1);

    Symbol const missing = any(engine);
    std::vector<Symbol> block = middle.sample(engine);
    for (auto& s : block) {
        s = skip_symbol(s, missing);
    }
    Symbol const departing = skip_symbol(other(engine), missing);

    std::vector<Symbol> before;
    before.reserve(window);
    before.push_back(departing);
    before.insert(before.end(), block.begin(), block.end());
    auto state = WindowProcessState::from_window(params, before);
    if (!state.step(missing).entered) {
        throw std::logic_error("conditional_entry_trial: constructed configuration is not an entry");
    }

    EntryTrace trace;
    trace.horizon = window;
    trace.entries.resize(window);
    for (std::size_t u = 0; u < window; ++u) {
        trace.entries[u] = state.step(any(engine)).entered ? 1 : 0;
    }
    trace.last_occurrence = last_occurrence_profile(block);
    return trace;
}

EntryTrace conditional_entry_trial(ModelParams const& params, std::uint64_t master_seed)
{
    check_theta_args(params, 1);
    OntoWordSampler middle(params.types() - 1, params.window() - 1);
    Engine engine = substream(master_seed, 0);
    return conditional_entry_trial(params, middle, engine);
}

double entry_pair_bound(ModelParams const& params, std::vector<std::size_t> const& last_occurrence)
{
    auto const n = static_cast<double>(params.types());
    double const stay = std::log1p(-1.0 / n);
    double const stay_other = params.types() > 2 ? std::log1p(-1.0 / (n - 1.0)) : 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < last_occurrence.size(); ++i) {
        auto const shift = static_cast<double>(i);  // u - 1
        auto const r = static_cast<double>(last_occurrence[i]);
        double repair;
        if (params.types() > 2) {
            repair = std::exp(shift * stay_other);
        } else {
            repair = i == 0 ? 1.0 : 0.0;  // (1 - 1/(n-1))^{u-1} with n = 2
        }
        total += r / n * std::exp(shift * stay) * std::exp(-std::max(r - 1.0, 0.0) * repair);
    }
    return total;
}

double ThetaEstimate::offset_stderr(std::size_t u) const
{
    double const p = offset_rates.at(u - 1);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ThetaEstimate theta_estimate(ModelParams const& params, std::size_t trials, std::uint64_t master_seed)
{
    check_theta_args(params, trials);
    OntoWordSampler const middle(params.types() - 1, params.window() - 1);
    ThetaAccumulator total(params.window());
    std::vector<double> bounds(trials);
    auto const count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel
    {
        ThetaAccumulator local(params.window());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            Engine engine = substream(master_seed, static_cast<std::uint64_t>(i));
            auto const trace = conditional_entry_trial(params, middle, engine);
            local.add(trace);
            bounds[static_cast<std::size_t>(i)] = entry_pair_bound(params, trace.last_occurrence);
        }
#pragma omp critical
        total.merge(local);
    }
    return finish_theta(trials, total, bounds);
}

namespace serial {

TrialBatch sample_T(ModelParams const& params, std::size_t trials, std::uint64_t master_seed,
                    std::uint64_t step_cap)
{
    check_batch_args(params, trials, step_cap);
    std::vector<std::uint64_t> raw(trials, 0);
    for (std::size_t i = 0; i < trials; ++i) {
        Engine engine = substream(master_seed, i);
        raw[i] = completion_time(params, engine, step_cap);
    }
    return finish_batch(params, trials, master_seed, raw);
}

ScanResult stationary_entry_scan(ModelParams const& params, std::uint64_t horizon, std::uint64_t master_seed)
{
    auto const layout = scan_layout(params, horizon);
    std::vector<ChunkScan> chunks;
    for (std::uint64_t c = 0; c < layout.chunks; ++c) {
        std::uint64_t const steps = std::min(layout.chunk_len, horizon - c * layout.chunk_len);
        chunks.push_back(scan_chunk(params, master_seed, c, steps, layout.block_len));
    }
    return finish_scan(horizon, layout.block_len, chunks);
}

ThetaEstimate theta_estimate(ModelParams const& params, std::size_t trials, std::uint64_t master_seed)
{
    check_theta_args(params, trials);
    OntoWordSampler const middle(params.types() - 1, params.window() - 1);
    ThetaAccumulator total(params.window());
    std::vector<double> bounds(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        Engine engine = substream(master_seed, i);
        auto const trace = conditional_entry_trial(params, middle, engine);
        total.add(trace);
        bounds[i] = entry_pair_bound(params, trace.last_occurrence);
    }
    return finish_theta(trials, total, bounds);
}

}  // namespace serial

}  // namespace expiring
