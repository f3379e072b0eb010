// SPDX-License-Identifier: Apache-2.0
#include "nandsim/mitigation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nandsim {

RemarModel::RemarModel(double t_min_s, std::size_t min_samples) : t_min_(t_min_s), min_samples_(min_samples) {}

RemarModel RemarModel::from_model(const RetentionWearModel &m)
{
    RemarModel r(m.domain().t_min);
    auto fits = std::make_shared<Fits>();
    fits->va.gamma = m.row(Var::Va).gamma;
    fits->va.delta = m.row(Var::Va).delta;
    auto copy = [](const ModelRow &row, OlsFit &f) { f.coef = {row.alpha, row.beta, row.gamma, row.delta}; };
    copy(m.row(Var::Vb), fits->vb);
    copy(m.row(Var::Vc), fits->vc);
    std::atomic_store(&r.fits_, std::shared_ptr<const Fits>(fits));
    return r;
}

void RemarModel::observe(double pec, double t_s, const VrefTriple &v)
{
    obs_.push_back({pec, t_s, v});
    refit();
}

void RemarModel::refit()
{
    if (obs_.size() < min_samples_)
        return;
    std::set<double> pecs, ts;
    for (const auto &o : obs_) {
        pecs.insert(o.pec);
        ts.insert(o.t_s);
    }
    if (pecs.size() < 2 || ts.size() < 2)
        return;
    std::vector<std::pair<double, double>> va;
    std::vector<OlsSample> vb, vc;
    for (const auto &o : obs_) {
        va.emplace_back(o.pec, o.v.va);
        vb.push_back({o.pec, o.t_s, o.v.vb});
        vc.push_back({o.pec, o.t_s, o.v.vc});
    }
    auto fits = std::make_shared<Fits>();
    try {
        fits->va = ols_fit_va(va);
        fits->vb = ols_fit(vb);
        fits->vc = ols_fit(vc);
    } catch (const std::invalid_argument &) {
        // Collinear so far; keep serving the previous snapshot.
        return;
    }
    // Readers holding the old snapshot keep a consistent set.
    std::atomic_store(&fits_, std::shared_ptr<const Fits>(fits));
}

VrefTriple RemarModel::predict_at(double pec, double retention_s) const
{
    const auto f = fits();
    if (!f)
        throw std::logic_error("model not yet trained");
    const double t = std::max(retention_s, t_min_);
    return {f->va.predict(pec), f->vb.predict(pec, t), f->vc.predict(pec, t)};
}

VrefTriple RemarModel::predict(const BlockMetadata &meta, double now_s) const
{
    if (now_s < meta.program_epoch_s)
        throw std::invalid_argument("read time precedes program time");
    return predict_at(meta.pec, now_s - meta.program_epoch_s);
}

void remar_observe(RemarModel &model, const FlashSim &sim, int chip, int block, int wordline)
{
    const CellContext ctx = sim.cell_context(chip, block, wordline);
    model.observe(ctx.pec, ctx.retention_s, sim.characterize_vopt(chip, block, wordline));
}

} // namespace nandsim
