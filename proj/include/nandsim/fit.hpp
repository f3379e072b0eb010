// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/voltage.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nandsim {

struct OlsSample {
    double pec;
    double t_s;
    double value;
};

// Coefficients over regressors [PEC*ln t, ln t, PEC, 1], i.e. (alpha, beta, gamma, delta).
struct OlsFit {
    std::array<double, 4> coef{};
    std::array<double, 4> std_error{};
    double residual_variance = 0.0;
    double adj_r2 = 0.0;
    std::size_t n = 0;
    double predict(double pec, double t_s) const;
};

OlsFit ols_fit(std::span<const OlsSample> samples);

// value = gamma * PEC + delta
struct LinearFit {
    double gamma = 0.0;
    double delta = 0.0;
    std::array<double, 2> std_error{};
    double adj_r2 = 0.0;
    std::size_t n = 0;
    double predict(double pec) const { return gamma * pec + delta; }
};

LinearFit ols_fit_va(std::span<const std::pair<double, double>> pec_value);

StateDistribution gaussian_fit(std::span<const double> vth);
// Maximum likelihood under censoring: samples <= lo only say the value is below lo,
// samples >= hi that it is above hi.
StateDistribution gaussian_fit_censored(std::span<const double> vth, double lo, double hi);

struct GammaFit {
    double shape = 1.0;
    double scale = 1.0;
    std::string method = "moments";
};

GammaFit gamma_fit(std::span<const double> rber);

struct KlResult {
    double nats = 0.0;
    bool infinite = false;
};

// counts[i] falls in [edges[i], edges[i+1]); q_i integrates pdf over the bin.
KlResult kl_divergence(std::span<const double> counts, std::span<const double> edges,
                       const std::function<double(double)> &pdf);

// counts[s][k]: cells programmed to s whose swept Vth lies in [v_min + k, v_min + k + 1).
struct SweepHistogram {
    double v_min = -50.0;
    std::array<std::vector<std::uint64_t>, 4> counts;
    int bins() const { return static_cast<int>(counts[0].size()); }
};

struct EmpiricalVopt {
    VrefTriple v;
    bool degenerate = false;
};

EmpiricalVopt empirical_vopt(const SweepHistogram &h);

} // namespace nandsim
