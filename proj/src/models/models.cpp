// SPDX-License-Identifier: Apache-2.0
#include "nandsim/models.hpp"
#include "nandsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nandsim {

namespace {
constexpr std::array<std::string_view, kNumVars> kVarKeys{
    "rber_msb", "rber_lsb", "mu_er",    "mu_p1",    "mu_p2", "mu_p3", "sigma_er",
    "sigma_p1", "sigma_p2", "sigma_p3", "vopt_a",   "vopt_b", "vopt_c"};
}

std::string_view var_key(Var v) { return kVarKeys[static_cast<int>(v)]; }

std::optional<Var> var_from_key(std::string_view key)
{
    for (int i = 0; i < kNumVars; ++i)
        if (kVarKeys[i] == key)
            return static_cast<Var>(i);
    return std::nullopt;
}

double ModelRow::eval(double pec, double t_s) const
{
    return (alpha * pec + beta) * std::log(t_s) + gamma * pec + delta;
}

RetentionWearModel::RetentionWearModel(std::array<ModelRow, kNumVars> rows, ModelDomain domain)
    : rows_(rows), domain_(domain)
{
}

void RetentionWearModel::check(double pec, double t_s) const
{
    if (domain_.permissive)
        return;
    if (!(pec >= 0.0 && pec <= domain_.pec_max && t_s >= domain_.t_min && t_s <= domain_.t_max)) {
        std::ostringstream os;
        os << "extrapolation outside fitted range (pec=" << pec << ", t=" << t_s << " s)";
        throw DomainError(os.str());
    }
}

double RetentionWearModel::eval(Var v, double pec, double t_s) const
{
    check(pec, t_s);
    return row(v).eval(pec, t_s);
}

double Knots::at(double x) const
{
    if (points.empty())
        return 0.0;
    if (x <= points.front().first)
        return points.front().second;
    if (x >= points.back().first)
        return points.back().second;
    auto hi = std::lower_bound(points.begin(), points.end(), x,
                               [](const auto &p, double v) { return p.first < v; });
    auto lo = hi - 1;
    const double f = (x - lo->first) / (hi->first - lo->first);
    return lo->second + f * (hi->second - lo->second);
}

LayerVariationProfile LayerVariationProfile::flat(int n_layers)
{
    return from_offsets(n_layers, {}, {}, {}, {});
}

LayerVariationProfile LayerVariationProfile::from_knots(int n_layers, const Knots &mu_er,
                                                        const Knots &sigma_er, const Knots &mu_p1,
                                                        const Knots &sigma_p1)
{
    auto sample = [n_layers](const Knots &k) {
        std::vector<double> out(n_layers);
        for (int w = 0; w < n_layers; ++w)
            out[w] = k.at(n_layers > 1 ? 100.0 * w / (n_layers - 1) : 0.0);
        return out;
    };
    return from_offsets(n_layers, sample(mu_er), sample(sigma_er), sample(mu_p1), sample(sigma_p1));
}

LayerVariationProfile LayerVariationProfile::from_offsets(int n_layers, std::vector<double> mu_er,
                                                          std::vector<double> sigma_er,
                                                          std::vector<double> mu_p1,
                                                          std::vector<double> sigma_p1)
{
    if (n_layers < 1)
        throw ConfigError("layer profile needs at least one layer");
    LayerVariationProfile p;
    p.n_ = n_layers;
    for (auto *v : {&mu_er, &sigma_er, &mu_p1, &sigma_p1}) {
        if (v->empty())
            v->assign(n_layers, 0.0);
        if (static_cast<int>(v->size()) != n_layers)
            throw ConfigError("layer offset vector length does not match layer count");
    }
    p.mu_er_ = std::move(mu_er);
    p.sigma_er_ = std::move(sigma_er);
    p.mu_p1_ = std::move(mu_p1);
    p.sigma_p1_ = std::move(sigma_p1);
    p.validate();
    return p;
}

void LayerVariationProfile::validate() const
{
    if (mu_er_[0] != 0.0 || sigma_er_[0] != 0.0 || mu_p1_[0] != 0.0 || sigma_p1_[0] != 0.0)
        throw ConfigError("layer 0 is the reference layer and must have zero offsets");
}

double LayerVariationProfile::mean_offset(int layer, State s) const
{
    if (layer < 0 || layer >= n_)
        throw std::out_of_range("layer out of range");
    if (s == State::ER)
        return mu_er_[layer];
    if (s == State::P1)
        return mu_p1_[layer];
    return 0.0;
}

double LayerVariationProfile::sigma_offset(int layer, State s) const
{
    if (layer < 0 || layer >= n_)
        throw std::out_of_range("layer out of range");
    if (s == State::ER)
        return sigma_er_[layer];
    if (s == State::P1)
        return sigma_p1_[layer];
    return 0.0;
}

bool LayerVariationProfile::is_flat() const
{
    auto zero = [](const std::vector<double> &v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    };
    return zero(mu_er_) && zero(sigma_er_) && zero(mu_p1_) && zero(sigma_p1_);
}

RetentionInterferenceModel RetentionInterferenceModel::default_table()
{
    RetentionInterferenceModel m;
    // Programmed victims lose less charge next to a higher neighbor; +-1 step around the middle.
    for (int v = 1; v < 4; ++v)
        for (int n = 0; n < 4; ++n)
            m.shift_adjust[v][n] = (n - 1.5) / 1.5;
    return m;
}

RetentionInterferenceModel RetentionInterferenceModel::zero()
{
    RetentionInterferenceModel m;
    m.enabled = false;
    return m;
}

double RetentionInterferenceModel::adjust(State victim, State neighbor, double t_s) const
{
    if (!enabled)
        return 0.0;
    return shift_adjust[rank(victim)][rank(neighbor)] * std::log(t_s) / std::log(reference_s);
}

StateDistribution eval_distribution(const RetentionWearModel &m, const LayerVariationProfile &p,
                                    const CellContext &ctx, State s, const ReadDisturbModel *disturb,
                                    const RetentionInterferenceModel *ri)
{
    m.check(ctx.pec, ctx.retention_s);
    StateDistribution d;
    d.mean = m.row(mean_var(s)).eval(ctx.pec, ctx.retention_s) + p.mean_offset(ctx.layer, s);
    d.stdev = m.row(sigma_var(s)).eval(ctx.pec, ctx.retention_s) + p.sigma_offset(ctx.layer, s);
    if (disturb && disturb->enabled) {
        d.mean += disturb->mean_slope[rank(s)] * ctx.read_disturbs;
        d.stdev += disturb->sigma_slope[rank(s)] * ctx.read_disturbs;
    }
    if (ri && ctx.neighbor)
        d.mean += ri->adjust(s, *ctx.neighbor, ctx.retention_s);
    if (!(d.stdev > 0.0))
        throw DomainError("model stdev is not positive at this context");
    return d;
}

StateDistributions eval_distributions(const RetentionWearModel &m, const LayerVariationProfile &p,
                                      const CellContext &ctx, const ReadDisturbModel *disturb)
{
    StateDistributions d;
    for (State s : kAllStates)
        d[rank(s)] = eval_distribution(m, p, ctx, s, disturb);
    return d;
}

RberPair eval_rber(const RetentionWearModel &m, const CellContext &ctx)
{
    return {std::exp(m.eval(Var::RberMsb, ctx.pec, ctx.retention_s)),
            std::exp(m.eval(Var::RberLsb, ctx.pec, ctx.retention_s))};
}

VrefTriple eval_vopt(const RetentionWearModel &m, const LayerVariationProfile &p, const CellContext &ctx)
{
    m.check(ctx.pec, ctx.retention_s);
    VrefTriple v;
    v.va = m.row(Var::Va).gamma * ctx.pec + m.row(Var::Va).delta;
    v.vb = m.row(Var::Vb).eval(ctx.pec, ctx.retention_s);
    v.vc = m.row(Var::Vc).eval(ctx.pec, ctx.retention_s);
    if (ctx.layer != 0 && !p.is_flat()) {
        CellContext ref = ctx;
        ref.layer = 0;
        const auto dl = eval_distributions(m, p, ctx);
        const auto d0 = eval_distributions(m, p, ref);
        v.va += optimal_boundary(dl[0], dl[1]) - optimal_boundary(d0[0], d0[1]);
        v.vb += optimal_boundary(dl[1], dl[2]) - optimal_boundary(d0[1], d0[2]);
    }
    return v;
}

double program_interference_shift(const ProgramInterferenceModel &pi, State victim,
                                  double aggressor_delta, WlRelation rel)
{
    if (aggressor_delta < 0.0)
        throw std::invalid_argument("aggressor delta must be non-negative");
    if (rel == WlRelation::NextWL)
        return pi.coupling_next_wl * aggressor_delta;
    return victim == State::ER ? pi.coupling_prev_wl * aggressor_delta : 0.0;
}

double read_error_probability(const ReadErrorModel &re, double offset)
{
    return std::clamp(re.amplitude * std::exp(-re.decay * std::abs(offset)), 0.0, 0.5);
}

double gamma_rber_pdf(double a, double s, double x)
{
    if (!(a > 0.0) || !(s > 0.0))
        throw std::invalid_argument("gamma shape and scale must be positive");
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return a < 1.0 ? std::numeric_limits<double>::infinity() : (a == 1.0 ? 1.0 / s : 0.0);
    return std::exp((a - 1.0) * std::log(x) - x / s - std::lgamma(a) - a * std::log(s));
}

} // namespace nandsim
