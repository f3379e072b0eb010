// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/config.hpp"
#include "nandsim/csv.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nandsim {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_s = 0.0;
};

inline constexpr int kNumCriteria = 13;

// Runs the selected criteria (all when empty), printing one PASS/FAIL line each.
std::vector<CriterionResult> run_acceptance(const ExperimentConfig &cfg, std::ostream &out,
                                            const std::vector<int> &only = {});

// Timing is left out so repeated runs render identical bytes.
CsvTable acceptance_csv(const std::vector<CriterionResult> &results);

// The Wordline | Layer | Page table expected for four chips and four wordlines.
const std::string &liraid_golden_4x4();

} // namespace nandsim
