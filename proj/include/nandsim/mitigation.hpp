// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/fit.hpp"
#include "nandsim/flash_sim.hpp"
#include "nandsim/models.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace nandsim {

struct PolicyConfig {
    // Factory default vrefs are the model optimum at this context.
    double fixed_default_pec = 0.0;
    double fixed_default_retention_s = 3000.0;
    // Retention assumed by the PEC-only policy.
    double sota_reference_s = 3000.0;
};

struct BlockMetadata {
    std::uint32_t pec = 0;
    std::uint32_t program_epoch_s = 0;
};

BlockMetadata block_metadata(const FlashSim &sim, int chip, int block);

VrefTriple policy_fixed_default(const RetentionWearModel &m, const PolicyConfig &cfg);
VrefTriple policy_state_of_the_art(const RetentionWearModel &m, const BlockMetadata &meta,
                                   const PolicyConfig &cfg);
// Model Vopt at the true (PEC, retention), blind to layers.
VrefTriple policy_variation_agnostic(const RetentionWearModel &m, double pec, double retention_s);

struct LayerOffsetTable {
    std::vector<std::int8_t> va;
    std::vector<std::int8_t> vb;
    static LayerOffsetTable zero(int n_layers);
    int n_layers() const { return static_cast<int>(va.size()); }
    std::size_t bytes() const { return va.size() + vb.size(); }
};

// Learns per-layer offsets from one programmed sample block.
LayerOffsetTable lavar_learn(const FlashSim &sim, int chip, int block);
VrefTriple lavar_read_vrefs(const VrefTriple &base, const LayerOffsetTable &table, int layer);

class RemarModel {
public:
    struct Fits {
        LinearFit va;
        OlsFit vb;
        OlsFit vc;
    };
    struct Observation {
        double pec;
        double t_s;
        VrefTriple v;
    };

    explicit RemarModel(double t_min_s = 60.0, std::size_t min_samples = 8);
    // Fits taken straight from a model's Vopt rows.
    static RemarModel from_model(const RetentionWearModel &m);

    void observe(double pec, double t_s, const VrefTriple &v);
    bool trained() const { return static_cast<bool>(std::atomic_load(&fits_)); }
    std::shared_ptr<const Fits> fits() const { return std::atomic_load(&fits_); }
    std::size_t samples() const { return obs_.size(); }
    VrefTriple predict(const BlockMetadata &meta, double now_s) const;
    VrefTriple predict_at(double pec, double retention_s) const;

private:
    void refit();
    double t_min_;
    std::size_t min_samples_;
    std::vector<Observation> obs_;
    std::shared_ptr<const Fits> fits_;
};

// Observes the empirical Vopt of a sampled block's reference wordline.
void remar_observe(RemarModel &model, const FlashSim &sim, int chip, int block, int wordline = 0);

struct RenacResult {
    std::vector<std::uint8_t> bits;
    double errors_before = 0.0;
    double errors_after = 0.0;
};

// Re-reads a failed page once per next-wordline state with interference-compensated vrefs.
RenacResult renac_reread(FlashSim &sim, const PageAddress &addr, const VrefTriple &vrefs,
                         const RetentionInterferenceModel &interference, double retention_s);

class FcrScheduler {
public:
    explicit FcrScheduler(double period_s);
    double period() const { return period_s_; }
    // Advances the clock to now + dt, rewriting every live block once per elapsed period.
    void advance(FlashSim &sim, double dt_s);
    std::uint64_t refreshes() const { return refreshes_; }

private:
    void refresh_due(FlashSim &sim);
    double period_s_;
    std::uint64_t refreshes_ = 0;
};

FcrScheduler fcr_refresh(double period_s);
void rewrite_block(FlashSim &sim, int chip, int block);

struct EccConfig {
    int k = 8192;
    int m = 14;
    double target_uncorrectable = 5e-14;
    double rber_limit = 3e-3;
    void validate() const;
};

// P(X > t) for X ~ Binomial(n, p), summed exactly in log space.
double binomial_tail(int t, int n, double p);
int ecc_required_t(double rber, const EccConfig &cfg);
double ecc_required_overhead(double rber, const EccConfig &cfg);
int ecc_correctable_t(const EccConfig &cfg);
bool ecc_page_fails(std::uint64_t raw_errors, const EccConfig &cfg);

} // namespace nandsim
