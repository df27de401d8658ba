// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include <numeric>
#include <vector>

#include <doctest.h>

#include "expiring/errors.hpp"
#include "expiring/rng.hpp"
#include "expiring/window_process.hpp"

using namespace expiring;

TEST_CASE("two types, window two: draws 1,1,2")
{
    WindowProcessState s(ModelParams(2, 2));
    CHECK_FALSE(s.step(1).entered);
    CHECK_FALSE(s.step(1).entered);
    auto const e = s.step(2);
    CHECK(e.entered);
    CHECK(s.complete());
    CHECK(s.time() == 3);
}

TEST_CASE("single type completes at the first draw")
{
    WindowProcessState s(ModelParams(1, 1));
    CHECK(s.step(1).entered);
    CHECK(s.complete());
    CHECK(s.time() == 1);
}

TEST_CASE("three types: entry then exit")
{
    WindowProcessState s(ModelParams(3, 3));
    s.step(1);
    s.step(2);
    auto const in = s.step(3);
    CHECK(in.entered);
    CHECK(s.time() == 3);
    auto const out = s.step(3);
    CHECK(out.exited);
    CHECK_FALSE(out.entered);
    CHECK_FALSE(s.complete());
    CHECK(s.window_contents() == std::vector<Symbol>{2, 3, 3});
}

TEST_CASE("out of range symbols are rejected")
{
    WindowProcessState s(ModelParams(3, 4));
    CHECK_THROWS_AS(s.step(0), DomainError);
    CHECK_THROWS_AS(s.step(4), DomainError);
}

TEST_CASE("from_window loads a full window")
{
    std::vector<Symbol> const w{3, 1, 1, 2};
    auto s = WindowProcessState::from_window(ModelParams(3, 4), w);
    CHECK(s.complete());
    CHECK(s.window_contents() == w);
    CHECK(s.count(1) == 2);
    // Dropping the only 3 leaves (1, 1, 2, 1).
    CHECK(s.step(1).exited);
    CHECK(s.step(3).entered);
    CHECK_THROWS_AS(WindowProcessState::from_window(ModelParams(3, 4), std::vector<Symbol>{1, 2}), DomainError);
}

TEST_CASE("counts, distinct and entry/exit alternation on a random run")
{
    ModelParams const params(5, 7);
    WindowProcessState s(params);
    auto engine = substream(99, 0);
    std::uniform_int_distribution<Symbol> draw(1, 5);
    std::vector<Symbol> history;
    bool inside = false;
    for (int t = 1; t <= 20000; ++t) {
        Symbol const x = draw(engine);
        history.push_back(x);
        auto const e = s.step(x);
        REQUIRE_FALSE((e.entered && e.exited));
        if (e.entered) {
            REQUIRE_FALSE(inside);
            inside = true;
        }
        if (e.exited) {
            REQUIRE(inside);
            inside = false;
        }
        REQUIRE(inside == s.complete());

        std::size_t const held = std::min<std::size_t>(t, 7);
        std::vector<Symbol> const expect(history.end() - static_cast<std::ptrdiff_t>(held), history.end());
        REQUIRE(s.window_contents() == expect);
        std::size_t total = 0;
        std::size_t distinct = 0;
        for (Symbol c = 1; c <= 5; ++c) {
            total += s.count(c);
            distinct += s.count(c) > 0 ? 1 : 0;
        }
        REQUIRE(total == held);
        REQUIRE(distinct == s.distinct());
    }
}

TEST_CASE("substream seeds are distinct and stable")
{
    CHECK(substream_seed(1, 0) != substream_seed(1, 1));
    CHECK(substream_seed(1, 0) != substream_seed(2, 0));
    CHECK(substream_seed(7, 3) == substream_seed(7, 3));
    auto a = substream(5, 11);
    auto b = substream(5, 11);
    CHECK(a() == b());
}
