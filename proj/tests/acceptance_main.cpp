// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
//
// Reproduction suite: one pass/fail line per criterion, nonzero exit on
// any failure. Also reachable as `hermitana reproduce-paper`.
#include "hermitana/acceptance.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    std::uint64_t seed = 12345;
    if (argc > 1)
        seed = std::strtoull(argv[1], nullptr, 10);

    const auto results = hermitana::run_acceptance(seed, &std::cout);
    int failures = 0;
    for (const auto& r : results)
        failures += r.pass ? 0 : 1;
    std::cout << results.size() - failures << "/" << results.size() << " criteria passed"
              << (failures ? " -- FAILURES PRESENT" : "") << "\n";
    return failures == 0 ? 0 : 1;
}
