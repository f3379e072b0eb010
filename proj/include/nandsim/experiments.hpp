// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/config.hpp"
#include "nandsim/csv.hpp"

#include <array>
#include <string>
#include <vector>

namespace nandsim {

// Artifacts a controller learns once, before deployment.
struct LearnedState {
    LayerOffsetTable lavar;
    RemarModel remar;
};

LayerOffsetTable learn_lavar_table(const ExperimentConfig &cfg, const ErrorModels &models);
RemarModel train_remar(const ExperimentConfig &cfg, const ErrorModels &models);
LearnedState learn(const ExperimentConfig &cfg, const ErrorModels &models);

// Policy names: fixed, sota, agnostic, lavar (agnostic + table), sota_lavar,
// remar, full (remar + table), optimal (per-wordline characterization).
VrefPolicy make_policy(const std::string &name, const ExperimentConfig &cfg, const ErrorModels &models,
                       const LearnedState &learned, const FlashSim *sim = nullptr);

struct SweepRow {
    double pec;
    std::string policy;
    double avg_rber;
    double worst_rber;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    const SweepRow &at(double pec, const std::string &policy) const;
    // Per-grid-point 1 - avg(policy)/avg(reference).
    std::vector<double> reductions(const std::string &policy, const std::string &reference) const;
    CsvTable csv(std::uint64_t seed) const;
};

SweepResult run_rber_sweep(const ExperimentConfig &cfg);

struct StackResult {
    std::string name;
    double endurance = 0.0;
    bool fails_at_first_point = false;
    double ratio = 0.0;
    double rber_at_baseline_eol = 0.0;
    double ecc_overhead = 0.0;
    double ecc_reduction = 0.0;
};

struct LifetimeResult {
    std::vector<double> grid;
    std::vector<StackResult> stacks;
    // worst[i][k]: worst-case RBER of stack i at grid point k.
    std::vector<std::vector<double>> worst;
    double limit_overhead = 0.0;
    const StackResult &stack(const std::string &name) const;
    CsvTable csv() const;
    CsvTable curve_csv() const;
};

inline const std::array<const char *, 5> kStackNames{"baseline", "sota", "lavar", "lavar_li", "full"};

// Throws ConfigError("extend PEC grid") if the baseline never crosses the limit.
LifetimeResult run_lifetime(const ExperimentConfig &cfg);

struct FcrResult {
    double lifetime_no_refresh = 0.0;
    double lifetime_refresh = 0.0;
    double factor = 0.0;
    double write_amplification = 0.0;
};

// Same stack with retention capped at the refresh period.
FcrResult run_fcr(const ExperimentConfig &cfg, const std::string &stack = "sota");

struct LiRaidResult {
    double conventional_worst = 0.0;
    double li_worst = 0.0;
    double reduction = 0.0;
};

LiRaidResult run_li_raid(const ExperimentConfig &cfg, double pec, const std::string &policy = "agnostic");

// Highest per-layer MSB RBER over the reference layer's, at per-layer optimal vrefs.
double layer_rber_spread(const ExperimentConfig &cfg, double pec, double retention_s);

struct RenacExperiment {
    double rber_before = 0.0;
    double rber_after = 0.0;
    double errors_before = 0.0;
    double errors_after = 0.0;
    double noise_sigma = 0.0;
};

// interference_scale multiplies the configured retention-interference table.
RenacExperiment run_renac(const ExperimentConfig &cfg, double interference_scale, int cells, double pec,
                          double retention_s);

struct RowRecovery {
    Var var;
    ModelRow source;
    std::array<double, 4> fitted{};
    std::array<double, 4> std_error{};
    double adj_r2 = 0.0;
};

struct ReplicationResult {
    std::vector<RowRecovery> rows;
    double gamma_shape = 0.0;
    double gamma_scale = 0.0;
    double gamma_kl = 0.0;
    bool gamma_kl_infinite = false;
    std::size_t gamma_pages = 0;
    CsvTable csv() const;
    CsvTable gamma_csv() const;
};

// Monte Carlo characterization over 11 PEC blocks and the ReMAR retention grid.
ReplicationResult run_characterization_replication(const ExperimentConfig &cfg);
// Refit from exact model values on the same grid.
std::vector<RowRecovery> replicate_noiseless(const RetentionWearModel &m, const std::vector<double> &pecs,
                                             const std::vector<double> &times);

} // namespace nandsim
