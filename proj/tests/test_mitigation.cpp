// SPDX-License-Identifier: Apache-2.0
#include "nandsim/errors.hpp"
#include "nandsim/mitigation.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace nandsim;

namespace {

ErrorModels models_with(LayerVariationProfile p)
{
    ErrorModels m;
    m.wear = RetentionWearModel::load_default();
    m.profile = std::move(p);
    m.program.enabled = false;
    m.retention_interference = RetentionInterferenceModel::zero();
    return m;
}

SimConfig geometry(SimMode mode, int wordlines, int cells = 4096)
{
    SimConfig c;
    c.mode = mode;
    c.seed = 9;
    c.geometry = {1, 4, wordlines, cells, {}};
    return c;
}

} // namespace

TEST_SUITE("mitigation") {

TEST_CASE("binomial tail against reference values")
{
    CHECK(binomial_tail(75, 8192 + 75 * 14, 3e-3) == doctest::Approx(3.0230222245861715e-14).epsilon(1e-8));
    CHECK(binomial_tail(74, 8192 + 74 * 14, 3e-3) == doctest::Approx(7.799369685420645e-14).epsilon(1e-8));
    CHECK(binomial_tail(-1, 10, 0.5) == 1.0);
    CHECK(binomial_tail(10, 10, 0.5) == 0.0);
    CHECK(binomial_tail(0, 1, 0.25) == doctest::Approx(0.25));
}

TEST_CASE("ECC sizing")
{
    const EccConfig e;
    CHECK(ecc_required_t(3e-3, e) == 75);
    CHECK(ecc_required_t(1e-3, e) == 38);
    CHECK(ecc_required_t(1e-4, e) == 14);
    CHECK(ecc_required_t(5e-3, e) == 109);
    EccConfig strict = e;
    strict.target_uncorrectable = 1e-15;
    CHECK(ecc_required_t(3e-3, strict) == 79);
    CHECK(100 * ecc_required_overhead(3e-3, e) == doctest::Approx(12.8).epsilon(2.0 / 12.8));
    CHECK(ecc_correctable_t(e) == 75);
    CHECK_FALSE(ecc_page_fails(0, e));
    CHECK_FALSE(ecc_page_fails(75, e));
    CHECK(ecc_page_fails(76, e));
    CHECK(ecc_required_overhead(1e-9, e) <= ecc_required_overhead(1e-6, e));
    CHECK_THROWS_AS(ecc_required_t(0.09, e), DomainError);
    CHECK_THROWS_AS(ecc_required_t(0.0, e), std::invalid_argument);
    EccConfig bad = e;
    bad.rber_limit = 0.7;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("ECC overhead is monotone in RBER")
{
    const EccConfig e;
    double prev = 0;
    for (double lr = -7; lr <= -2; lr += 0.05) {
        const double o = ecc_required_overhead(std::pow(10.0, lr), e);
        CHECK(o >= prev);
        prev = o;
    }
}

TEST_CASE("fixed and PEC-only policies")
{
    const auto m = RetentionWearModel::load_default();
    const PolicyConfig p;
    const VrefTriple fixed = policy_fixed_default(m, p);
    CHECK(fixed == eval_vopt(m, LayerVariationProfile::flat(1), {0, p.fixed_default_retention_s}));
    PolicyConfig q = p;
    q.fixed_default_retention_s = 86400;
    CHECK(policy_fixed_default(m, q) == eval_vopt(m, LayerVariationProfile::flat(1), {0, 86400}));
    CHECK_FALSE(policy_fixed_default(m, q) == fixed);

    const BlockMetadata meta{7000, 123};
    CHECK(policy_state_of_the_art(m, meta, p) == eval_vopt(m, LayerVariationProfile::flat(1), {7000, 3000}));
}

TEST_CASE("ReMAR from the model reproduces model Vopt")
{
    const auto m = RetentionWearModel::load_default();
    const RemarModel r = RemarModel::from_model(m);
    REQUIRE(r.trained());
    for (double pec : {0.0, 4000.0, 10000.0})
        for (double t : {600.0, 86400.0, 2073600.0}) {
            const VrefTriple want = eval_vopt(m, LayerVariationProfile::flat(1), {pec, t});
            const VrefTriple got = r.predict_at(pec, t);
            CHECK(got.va == doctest::Approx(want.va).epsilon(1e-12));
            CHECK(got.vb == doctest::Approx(want.vb).epsilon(1e-12));
            CHECK(got.vc == doctest::Approx(want.vc).epsilon(1e-12));
        }
    // Va ignores the clock; short retention clamps to t_min.
    const BlockMetadata meta{5000, 1000};
    CHECK(r.predict(meta, 2000).va == r.predict(meta, 1e6).va);
    CHECK(r.predict(meta, 1001) == r.predict_at(5000, 60));
    CHECK_THROWS_AS(r.predict(meta, 10), std::invalid_argument);
}

TEST_CASE("ReMAR learns from observations")
{
    const auto m = RetentionWearModel::load_default();
    RemarModel r;
    CHECK_FALSE(r.trained());
    CHECK_THROWS_WITH_AS(r.predict_at(0, 3600), "model not yet trained", std::logic_error);
    for (double pec : {0.0, 3000.0, 6000.0, 9000.0})
        for (double t : {600.0, 6000.0, 60000.0, 600000.0})
            r.observe(pec, t, eval_vopt(m, LayerVariationProfile::flat(1), {pec, t}));
    REQUIRE(r.trained());
    for (double pec : {1500.0, 7500.0})
        for (double t : {3600.0, 1e6}) {
            const VrefTriple want = eval_vopt(m, LayerVariationProfile::flat(1), {pec, t});
            const VrefTriple got = r.predict_at(pec, t);
            for (int b = 0; b < 3; ++b)
                CHECK(std::abs(got[b] - want[b]) <= 1.0);
        }
}

TEST_CASE("ReMAR observes a simulated block")
{
    FlashSim sim(geometry(SimMode::Analytic, 4), models_with(LayerVariationProfile::flat(4)));
    RemarModel r;
    int k = 0;
    for (double pec : {0.0, 5000.0, 10000.0}) {
        const int blk = k++;
        sim.add_wear(0, blk, pec);
        sim.program_block_random(0, blk);
    }
    for (double dt : {600.0, 6000.0, 60000.0})
        for (int blk = 0; blk < 3; ++blk) {
            sim.advance_clock(dt);
            remar_observe(r, sim, 0, blk);
        }
    CHECK(r.samples() == 9);
    CHECK(r.trained());
}

TEST_CASE("LaVAR table")
{
    const auto flat = models_with(LayerVariationProfile::flat(8));
    FlashSim a(geometry(SimMode::Analytic, 8), flat);
    a.program_block_random(0, 0);
    a.advance_clock(3000);
    const LayerOffsetTable t = lavar_learn(a, 0, 0);
    CHECK(t.n_layers() == 8);
    CHECK(t.bytes() == 16);
    for (int l = 1; l < 8; ++l) {
        CHECK(t.va[l] == t.va[0]);
        CHECK(t.vb[l] == t.vb[0]);
    }

    // Raise the ER mean on layer 5 only.
    std::vector<double> mu(8, 0.0);
    mu[5] = 20.0;
    const auto planted = models_with(LayerVariationProfile::from_offsets(8, mu, {}, {}, {}));
    FlashSim b(geometry(SimMode::Analytic, 8), planted);
    b.program_block_random(0, 0);
    b.advance_clock(3000);
    const LayerOffsetTable u = lavar_learn(b, 0, 0);
    const double shift = eval_vopt(planted.wear, planted.profile, {0, 3000, 5}).va -
                         eval_vopt(planted.wear, planted.profile, {0, 3000, 0}).va;
    CHECK(shift > 5.0);
    CHECK(std::abs((u.va[5] - u.va[0]) - shift) <= 1.0);
    CHECK(u.vb[5] == u.vb[0]);
}

TEST_CASE("LaVAR read vrefs")
{
    const VrefTriple base{60, 150, 220};
    CHECK(lavar_read_vrefs(base, LayerOffsetTable::zero(4), 2) == base);
    LayerOffsetTable t = LayerOffsetTable::zero(4);
    t.va[1] = 7;
    t.vb[1] = -3;
    CHECK(lavar_read_vrefs(base, t, 1) == VrefTriple{67, 147, 220});
    t.va[2] = 100;
    CHECK_THROWS_AS(lavar_read_vrefs(base, t, 2), std::invalid_argument);
    CHECK_THROWS_AS(lavar_read_vrefs(base, t, 4), std::out_of_range);
}

TEST_CASE("LaVAR never loses to the layer-blind optimum on its own profile")
{
    std::vector<double> mu{0, 4, 9, 15, 22, 25, 20, 12};
    std::vector<double> se{0, 1, 2, 2, 3, 1, -1, -2};
    const auto mod = models_with(LayerVariationProfile::from_offsets(8, mu, se, {}, {}));
    for (double pec : {2000.0, 8000.0}) {
        double base = 0, tuned = 0;
        for (int l = 0; l < 8; ++l) {
            const CellContext ctx{pec, 3000, l};
            const auto d = eval_distributions(mod.wear, mod.profile, ctx);
            const VrefTriple blind = eval_vopt(mod.wear, LayerVariationProfile::flat(8), ctx);
            const VrefTriple aware = eval_vopt(mod.wear, mod.profile, ctx);
            base += expected_rber(d, kUniformPriors, blind).msb;
            tuned += expected_rber(d, kUniformPriors, aware).msb;
        }
        CHECK(tuned <= base);
    }
}

TEST_CASE("refresh caps retention and costs one cycle per period")
{
    FlashSim sim(geometry(SimMode::Analytic, 4), models_with(LayerVariationProfile::flat(4)));
    sim.program_block_random(0, 0);
    sim.program_block_random(0, 1);
    FcrScheduler f = fcr_refresh(3 * 86400.0);
    for (int day = 0; day < 24; ++day) {
        f.advance(sim, 86400.0);
        CHECK(sim.now() - sim.program_epoch(0, 0) <= f.period());
    }
    CHECK(f.refreshes() == 16);
    CHECK(sim.pec(0, 0) == 8.0);
    CHECK(sim.pec(0, 2) == 0.0);
    CHECK_THROWS_AS(fcr_refresh(0.0), std::invalid_argument);
}

TEST_CASE("ReNAC")
{
    SimConfig c = geometry(SimMode::MonteCarlo, 4, 1 << 14);
    FlashSim sim(c, models_with(LayerVariationProfile::flat(4)));
    sim.add_wear(0, 0, 8000);
    sim.program_block_random(0, 0, {false, false, true, false});
    sim.advance_clock(1e6);
    const VrefTriple v = sim.characterize_vopt(0, 0, 0);
    const RenacResult r = renac_reread(sim, {0, 0, 0, PageType::MSB}, v, RetentionInterferenceModel::zero(), 1e6);
    const PageRead plain = sim.read_page({0, 0, 0, PageType::MSB}, v);
    CHECK(r.bits == plain.bits);
    CHECK(r.errors_after == r.errors_before);
    CHECK_THROWS_WITH_AS(renac_reread(sim, {0, 0, 1, PageType::MSB}, v, RetentionInterferenceModel::zero(), 1e6),
                         "no neighbor available", std::logic_error);
    CHECK_THROWS_AS(renac_reread(sim, {0, 0, 3, PageType::MSB}, v, RetentionInterferenceModel::zero(), 1e6),
                    std::logic_error);
}

}
