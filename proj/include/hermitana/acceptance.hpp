// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_ACCEPTANCE_HPP
#define HERMITANA_ACCEPTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hermitana {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
};

/// Runs the full reproduction suite (the checks behind the CLI's
/// reproduce-paper command). Every library operation is exercised at
/// least once. When `progress` is given, one "PASS/FAIL" line per
/// criterion is printed as it completes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 12345,
                                            std::ostream* progress = nullptr);

} // namespace hermitana

#endif
