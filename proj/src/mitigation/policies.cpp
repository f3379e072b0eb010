// SPDX-License-Identifier: Apache-2.0
#include "nandsim/mitigation.hpp"

#include <cmath>
#include <stdexcept>

namespace nandsim {

BlockMetadata block_metadata(const FlashSim &sim, int chip, int block)
{
    return {static_cast<std::uint32_t>(sim.pec(chip, block)),
            static_cast<std::uint32_t>(sim.program_epoch(chip, block))};
}

VrefTriple policy_fixed_default(const RetentionWearModel &m, const PolicyConfig &cfg)
{
    return policy_variation_agnostic(m, cfg.fixed_default_pec, cfg.fixed_default_retention_s);
}

VrefTriple policy_state_of_the_art(const RetentionWearModel &m, const BlockMetadata &meta,
                                   const PolicyConfig &cfg)
{
    return policy_variation_agnostic(m, meta.pec, cfg.sota_reference_s);
}

VrefTriple policy_variation_agnostic(const RetentionWearModel &m, double pec, double retention_s)
{
    CellContext ctx;
    ctx.pec = pec;
    ctx.retention_s = retention_s;
    return eval_vopt(m, LayerVariationProfile::flat(1), ctx);
}

LayerOffsetTable LayerOffsetTable::zero(int n_layers)
{
    LayerOffsetTable t;
    t.va.assign(n_layers, 0);
    t.vb.assign(n_layers, 0);
    return t;
}

LayerOffsetTable lavar_learn(const FlashSim &sim, int chip, int block)
{
    const auto &g = sim.config().geometry;
    const int n_layers = sim.models().profile.n_layers();
    std::vector<double> sum_a(n_layers, 0.0), sum_b(n_layers, 0.0);
    std::vector<int> count(n_layers, 0);
    const CellContext ctx = sim.cell_context(chip, block, 0);
    const VrefTriple agnostic = policy_variation_agnostic(sim.models().wear, ctx.pec, ctx.retention_s);
    for (int w = 0; w < g.wordlines_per_block; ++w) {
        if (!sim.is_programmed(chip, block, w))
            continue;
        const VrefTriple v = sim.characterize_vopt(chip, block, w);
        const int l = g.layer(w);
        sum_a[l] += v.va - agnostic.va;
        sum_b[l] += v.vb - agnostic.vb;
        ++count[l];
    }
    LayerOffsetTable t = LayerOffsetTable::zero(n_layers);
    auto to_byte = [](double x) { return static_cast<std::int8_t>(std::clamp(std::lround(x), -127L, 127L)); };
    for (int l = 0; l < n_layers; ++l) {
        if (count[l] == 0)
            continue;
        t.va[l] = to_byte(sum_a[l] / count[l]);
        t.vb[l] = to_byte(sum_b[l] / count[l]);
    }
    return t;
}

VrefTriple lavar_read_vrefs(const VrefTriple &base, const LayerOffsetTable &table, int layer)
{
    if (layer < 0 || layer >= table.n_layers())
        throw std::out_of_range("layer out of range");
    VrefTriple v = base;
    v.va += table.va[layer];
    v.vb += table.vb[layer];
    if (!v.ordered())
        throw std::invalid_argument("layer offsets break vref ordering");
    return v;
}

} // namespace nandsim
