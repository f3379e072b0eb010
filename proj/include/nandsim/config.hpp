// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/flash_sim.hpp"
#include "nandsim/li_raid.hpp"
#include "nandsim/mitigation.hpp"
#include "nandsim/models.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nandsim {

struct PecGrid {
    double start = 0.0;
    double stop = 10000.0;
    double step = 1000.0;
    std::vector<double> points() const;
};

struct ProfileKnots {
    int layers = 32;
    std::vector<double> x{0.0, 100.0};
    std::vector<double> mu_er{0.0, 0.0};
    std::vector<double> sigma_er{0.0, 0.0};
    std::vector<double> mu_p1{0.0, 0.0};
    std::vector<double> sigma_p1{0.0, 0.0};
    LayerVariationProfile build() const;
};

struct ExperimentConfig {
    std::string source = "<built-in>";
    std::uint64_t seed = 1;
    SimConfig sim;
    std::string model_file;
    ProfileKnots profile;
    ProgramInterferenceModel program;
    ReadDisturbModel disturb;
    ReadErrorModel read_error;
    RetentionInterferenceModel retention_interference = RetentionInterferenceModel::default_table();
    PolicyConfig policy;
    double lavar_learn_pec = 0.0;
    double lavar_learn_retention_s = 3000.0;
    std::vector<double> remar_train_pec;
    std::vector<double> remar_train_retention_s;
    double sweep_retention_s = 3000.0;
    PecGrid sweep_pec;
    std::vector<std::string> sweep_policies{"agnostic", "lavar"};
    double lifetime_retention_s = 24.0 * 86400.0;
    PecGrid lifetime_pec{0.0, 20000.0, 1000.0};
    GroupStatistic group_statistic = GroupStatistic::Mean;
    double fcr_period_s = 3.0 * 86400.0;
    EccConfig ecc;
    int replicate_cells = 65536;
    std::string output_dir = "out";

    ErrorModels build_models() const;
    // Stable text form of every resolved setting; hashed into CSV headers.
    std::string canonical() const;
    std::string hash() const;
};

// Parses a YAML experiment config; errors carry file:line:column.
ExperimentConfig load_config(const std::string &path);
ExperimentConfig default_config();

} // namespace nandsim
