// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "expiring/cli.hpp"

int main(int argc, char** argv)
{
    return expiring::cli::run_cli(argc, argv, std::cout);
}
