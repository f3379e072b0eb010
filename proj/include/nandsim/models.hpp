// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/voltage.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nandsim {

enum class Var : int {
    RberMsb, RberLsb,
    MuEr, MuP1, MuP2, MuP3,
    SigmaEr, SigmaP1, SigmaP2, SigmaP3,
    Va, Vb, Vc,
};
inline constexpr int kNumVars = 13;
std::string_view var_key(Var v);
std::optional<Var> var_from_key(std::string_view key);
constexpr Var mean_var(State s) { return static_cast<Var>(static_cast<int>(Var::MuEr) + rank(s)); }
constexpr Var sigma_var(State s) { return static_cast<Var>(static_cast<int>(Var::SigmaEr) + rank(s)); }

// value = (alpha*pec + beta) * ln(t) + gamma*pec + delta
struct ModelRow {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double adj_r2 = 0.0; // percent, reported with the fit
    double eval(double pec, double t_s) const;
};

struct ModelDomain {
    double t_min = 60.0;
    double t_max = 1e7;
    double pec_max = 20000.0;
    bool permissive = false;
};

struct CellContext {
    double pec = 0.0;
    double retention_s = 60.0;
    int layer = 0;
    double read_disturbs = 0.0;
    std::optional<State> neighbor;
};

class RetentionWearModel {
public:
    RetentionWearModel() = default;
    RetentionWearModel(std::array<ModelRow, kNumVars> rows, ModelDomain domain);

    // Reads the shipped parameter file.
    static RetentionWearModel load_default();
    static RetentionWearModel load(const std::string &path);

    const ModelRow &row(Var v) const { return rows_[static_cast<int>(v)]; }
    void set_row(Var v, const ModelRow &r) { rows_[static_cast<int>(v)] = r; }
    const ModelDomain &domain() const { return domain_; }
    ModelDomain &domain() { return domain_; }

    // Throws DomainError outside the fitted range unless permissive.
    void check(double pec, double t_s) const;
    double eval(Var v, double pec, double t_s) const;

private:
    std::array<ModelRow, kNumVars> rows_{};
    ModelDomain domain_{};
};

// Piecewise-linear curve over normalized layer position 0..100.
struct Knots {
    std::vector<std::pair<double, double>> points;
    double at(double x) const;
};

class LayerVariationProfile {
public:
    LayerVariationProfile() : mu_er_(1, 0.0), sigma_er_(1, 0.0), mu_p1_(1, 0.0), sigma_p1_(1, 0.0) {}
    static LayerVariationProfile flat(int n_layers);
    static LayerVariationProfile from_knots(int n_layers, const Knots &mu_er, const Knots &sigma_er,
                                            const Knots &mu_p1, const Knots &sigma_p1);
    // Explicit per-layer offsets; each vector has n_layers entries (empty means zero).
    static LayerVariationProfile from_offsets(int n_layers, std::vector<double> mu_er,
                                              std::vector<double> sigma_er, std::vector<double> mu_p1,
                                              std::vector<double> sigma_p1);

    int n_layers() const { return n_; }
    double mean_offset(int layer, State s) const;
    double sigma_offset(int layer, State s) const;
    bool is_flat() const;

private:
    void validate() const;
    int n_ = 1;
    std::vector<double> mu_er_, sigma_er_, mu_p1_, sigma_p1_;
};

struct ProgramInterferenceModel {
    double coupling_next_wl = 0.027;
    double coupling_prev_wl = 0.0008;
    bool enabled = true;
};

enum class WlRelation { NextWL, PrevWL };

struct ReadDisturbModel {
    // Steps per read, indexed by state.
    std::array<double, 4> mean_slope{8.0 / 900e3, 2.0 / 900e3, 1.0 / 900e3, 0.5 / 900e3};
    std::array<double, 4> sigma_slope{-0.15 / 900e3, -0.05 / 900e3, 0.0, 0.0};
    bool enabled = false;
};

struct ReadErrorModel {
    double amplitude = 0.05;
    double decay = 1.0;
    bool enabled = false;
};

struct RetentionInterferenceModel {
    // [victim][neighbor] mean adjustment at the reference retention.
    std::array<std::array<double, 4>, 4> shift_adjust{};
    double reference_s = 24.0 * 86400.0;
    bool enabled = true;
    static RetentionInterferenceModel default_table();
    static RetentionInterferenceModel zero();
    double adjust(State victim, State neighbor, double t_s) const;
};

// Everything needed to draw a cell's threshold voltage.
struct ErrorModels {
    RetentionWearModel wear;
    LayerVariationProfile profile;
    ProgramInterferenceModel program;
    ReadDisturbModel disturb;
    ReadErrorModel read_error;
    RetentionInterferenceModel retention_interference = RetentionInterferenceModel::default_table();
};

StateDistribution eval_distribution(const RetentionWearModel &m, const LayerVariationProfile &p,
                                    const CellContext &ctx, State s,
                                    const ReadDisturbModel *disturb = nullptr,
                                    const RetentionInterferenceModel *ri = nullptr);
StateDistributions eval_distributions(const RetentionWearModel &m, const LayerVariationProfile &p,
                                      const CellContext &ctx, const ReadDisturbModel *disturb = nullptr);

struct RberPair {
    double msb = 0.0;
    double lsb = 0.0;
};
RberPair eval_rber(const RetentionWearModel &m, const CellContext &ctx);

// Model Vopt; the layer offset is the shift of the layer's optimum relative to layer 0.
VrefTriple eval_vopt(const RetentionWearModel &m, const LayerVariationProfile &p, const CellContext &ctx);

double program_interference_shift(const ProgramInterferenceModel &pi, State victim,
                                  double aggressor_delta, WlRelation rel);

double read_error_probability(const ReadErrorModel &re, double offset);

double gamma_rber_pdf(double a, double s, double x);

} // namespace nandsim
