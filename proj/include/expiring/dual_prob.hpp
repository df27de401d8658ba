// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace expiring {

/// Natural log of a nonnegative big rational; -inf for zero.
double log_rational(mpq_class const& q);

/// Natural log of a positive big integer.
double log_integer(mpz_class const& z);

/// A probability carried both as an optional exact rational and as a
/// natural log. A log of -inf encodes an exact zero.
struct DualProb {
    std::optional<mpq_class> exact;
    double log_value = -std::numeric_limits<double>::infinity();

    double value() const { return std::exp(log_value); }

    /// Exact part as "p/q" (or "p" for integers); empty when absent.
    std::string exact_string() const { return exact ? exact->get_str() : std::string{}; }

    /// True when the exact and log parts agree to the stated tolerance and
    /// the value lies in [0, 1].
    bool consistent(double rel_tol = 1e-9) const;
};

}  // namespace expiring
