// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/exact_oracle.hpp"

#include <bit>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "expiring/errors.hpp"

namespace expiring::oracle {

namespace {

using Word = std::vector<std::uint8_t>;

std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t budget, char const* what)
{
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        out *= base;
        if (out > budget) {
            throw BudgetError(std::string(what) + ": " + std::to_string(base) + "^" + std::to_string(exponent) +
                              " exceeds the enumeration budget of " + std::to_string(budget));
        }
    }
    return out;
}

void check_small_alphabet(ModelParams const& params)
{
    if (params.types() > 32) {
        throw BudgetError("oracle: more than 32 types cannot be enumerated");
    }
}

template <class Visit>
void for_each_word(std::size_t types, std::size_t length, Visit&& visit)
{
    Word word(length, 0);
    while (true) {
        visit(word);
        std::size_t i = length;
        while (i > 0) {
            --i;
            if (++word[i] < types) {
                break;
            }
            word[i] = 0;
            if (i == 0) {
                return;
            }
        }
        if (length == 0) {
            return;
        }
    }
}

std::uint32_t symbol_mask(Word const& word, std::size_t first, std::size_t count)
{
    std::uint32_t mask = 0;
    for (std::size_t i = first; i < first + count; ++i) {
        mask |= std::uint32_t{1} << word[i];
    }
    return mask;
}

std::uint32_t full_mask(std::size_t types)
{
    return types == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << types) - 1;
}

// Entry at the window ending at `end`: window [end-M, end) not onto, [end-M+1, end] onto.
bool entry_at(Word const& word, std::size_t end, std::size_t window, std::uint32_t full)
{
    return symbol_mask(word, end - window, window) != full && symbol_mask(word, end - window + 1, window) == full;
}

mpq_class ratio(std::uint64_t count, std::uint64_t total)
{
    mpq_class q(mpz_class(std::to_string(count)), mpz_class(std::to_string(total)));
    q.canonicalize();
    return q;
}

// Solves a x = b over the rationals by Gauss-Jordan elimination.
std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b)
{
    std::size_t const n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw std::logic_error("oracle: singular hitting-time system");
        }
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        mpq_class const inv = 1 / a[col][col];
        for (std::size_t j = col; j < n; ++j) {
            a[col][j] *= inv;
        }
        b[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) {
                continue;
            }
            mpq_class const factor = a[row][col];
            for (std::size_t j = col; j < n; ++j) {
                if (a[col][j] != 0) {
                    a[row][j] -= factor * a[col][j];
                }
            }
            b[row] -= factor * b[col];
        }
    }
    return b;
}

ChainSolveResult make_result(mpq_class expected, std::uint64_t states, std::uint64_t solved)
{
    ChainSolveResult out;
    out.expected_T = std::move(expected);
    out.expected_T_value = out.expected_T.get_d();
    out.states = states;
    out.lumped_states = solved;
    return out;
}

}  // namespace

mpq_class enumerate_mass(ModelParams const& params)
{
    check_small_alphabet(params);
    std::size_t const window = params.window();
    std::uint64_t const total = checked_power(params.types(), window, kEnumerationBudget, "enumerate_mass");
    std::uint32_t const full = full_mask(params.types());
    std::uint64_t onto = 0;
    for_each_word(params.types(), window, [&](Word const& w) {
        if (symbol_mask(w, 0, window) == full) {
            ++onto;
        }
    });
    return ratio(onto, total);
}

mpq_class enumerate_flux(ModelParams const& params)
{
    check_small_alphabet(params);
    std::size_t const window = params.window();
    std::uint64_t const total = checked_power(params.types(), window + 1, kEnumerationBudget, "enumerate_flux");
    std::uint32_t const full = full_mask(params.types());
    std::uint64_t entries = 0;
    for_each_word(params.types(), window + 1, [&](Word const& w) {
        if (entry_at(w, window, window, full)) {
            ++entries;
        }
    });
    return ratio(entries, total);
}

mpq_class exact_entry_pair(ModelParams const& params, std::size_t offset)
{
    check_small_alphabet(params);
    std::size_t const window = params.window();
    if (offset < 1 || offset > window) {
        throw DomainError("exact_entry_pair: offset must lie in 1..window");
    }
    std::size_t const length = window + offset + 1;
    std::uint64_t const total = checked_power(params.types(), length, kEnumerationBudget, "exact_entry_pair");
    std::uint32_t const full = full_mask(params.types());
    std::uint64_t both = 0;
    for_each_word(params.types(), length, [&](Word const& w) {
        if (entry_at(w, window, window, full) && entry_at(w, window + offset, window, full)) {
            ++both;
        }
    });
    return ratio(both, total);
}

mpq_class exact_conditional_entry(ModelParams const& params, std::size_t offset)
{
    return exact_entry_pair(params, offset) / enumerate_flux(params);
}

mpq_class exact_theta(ModelParams const& params)
{
    mpq_class const base = enumerate_flux(params);
    mpq_class sum = 0;
    for (std::size_t u = 1; u <= params.window(); ++u) {
        sum += exact_entry_pair(params, u) / base;
    }
    return sum;
}

ChainSolveResult exact_expected_T(ModelParams const& params)
{
    std::size_t const n = params.types();
    std::size_t const window = params.window();
    std::uint64_t const states = checked_power(n, window, kChainBudget, "exact_expected_T");
    if (window > 63) {
        throw BudgetError("exact_expected_T: window too long for the age encoding");
    }
    // Bit a of a state is set when some type's most recent copy is a draws old.
    using Ages = std::uint64_t;
    Ages const keep = (Ages{1} << window) - 1;
    auto const advance = [&](Ages ages) { return ((ages << 1) & keep) | Ages{1}; };

    std::map<Ages, std::size_t> index;
    std::vector<Ages> order;
    auto const visit = [&](Ages s) {
        auto [it, inserted] = index.emplace(s, order.size());
        if (inserted) {
            order.push_back(s);
        }
        return it->second;
    };
    visit(0);
    // Transitions: (target state, multiplicity out of n); absorbed targets dropped.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves;
    for (std::size_t i = 0; i < order.size(); ++i) {
        Ages const s = order[i];
        std::size_t const present = static_cast<std::size_t>(std::popcount(s));
        std::vector<std::pair<std::size_t, std::size_t>> out;
        auto const add = [&](Ages next, std::size_t weight) {
            if (static_cast<std::size_t>(std::popcount(next)) < n) {
                out.emplace_back(visit(next), weight);
            }
        };
        for (std::size_t a = 0; a < window; ++a) {
            if (s & (Ages{1} << a)) {
                add(advance(s & ~(Ages{1} << a)), 1);
            }
        }
        if (present < n) {
            add(advance(s), n - present);
        }
        moves.push_back(std::move(out));
    }

    std::size_t const size = order.size();
    std::vector<std::vector<mpq_class>> system(size, std::vector<mpq_class>(size, 0));
    std::vector<mpq_class> rhs(size, 1);
    mpq_class const step(1, static_cast<unsigned long>(n));
    for (std::size_t i = 0; i < size; ++i) {
        system[i][i] += 1;
        for (auto const& [j, weight] : moves[i]) {
            system[i][j] -= step * static_cast<unsigned long>(weight);
        }
    }
    auto const hitting = solve_rational(std::move(system), std::move(rhs));
    return make_result(hitting[index.at(0)], states, size);
}

ChainSolveResult exact_expected_T_full_window(ModelParams const& params)
{
    check_small_alphabet(params);
    std::size_t const n = params.types();
    std::size_t const window = params.window();
    std::uint64_t const states = checked_power(n, window, kFullWindowChainBudget, "exact_expected_T_full_window");
    std::uint32_t const full = full_mask(n);

    auto const encode = [&](Word const& w) {
        std::uint64_t code = 0;
        for (auto s : w) {
            code = code * n + s;
        }
        return code;
    };
    std::map<std::uint64_t, std::size_t> transient;
    for_each_word(n, window, [&](Word const& w) {
        if (symbol_mask(w, 0, window) != full) {
            transient.emplace(encode(w), transient.size());
        }
    });

    std::size_t const size = transient.size();
    std::vector<std::vector<mpq_class>> system(size, std::vector<mpq_class>(size, 0));
    std::vector<mpq_class> rhs(size, 1);
    mpq_class const step(1, static_cast<unsigned long>(n));
    std::uint64_t const top = states / n;  // n^(window-1)
    for (auto const& [code, i] : transient) {
        system[i][i] += 1;
        for (std::size_t x = 0; x < n; ++x) {
            std::uint64_t const next = (code % top) * n + x;
            if (auto it = transient.find(next); it != transient.end()) {
                system[i][it->second] -= step;
            }
        }
    }
    auto const hitting = solve_rational(std::move(system), std::move(rhs));

    // First `window` draws: completion inside the prefix, else continue from W_M.
    mpq_class expected = 0;
    mpq_class const weight(1, mpz_class(std::to_string(states)));
    for_each_word(n, window, [&](Word const& w) {
        std::uint32_t mask = 0;
        for (std::size_t t = 0; t < window; ++t) {
            mask |= std::uint32_t{1} << w[t];
            if (mask == full) {
                expected += weight * static_cast<unsigned long>(t + 1);
                return;
            }
        }
        expected += weight * (static_cast<unsigned long>(window) + hitting[transient.at(encode(w))]);
    });
    return make_result(expected, states, size);
}

}  // namespace expiring::oracle
