// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace expiring {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An exact or enumerative computation would exceed its configured budget.
class BudgetError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace expiring
