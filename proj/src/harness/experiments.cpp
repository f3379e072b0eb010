// SPDX-License-Identifier: Apache-2.0
#include "nandsim/experiments.hpp"
#include "nandsim/errors.hpp"
#include "nandsim/seed.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

namespace nandsim {

namespace {

constexpr std::uint64_t kSweepStream = 11;
constexpr std::uint64_t kLifetimeStream = 12;
constexpr std::uint64_t kLavarStream = 13;
constexpr std::uint64_t kRemarStream = 14;
constexpr std::uint64_t kRenacStream = 15;
constexpr std::uint64_t kReplicateStream = 16;
constexpr std::uint64_t kGammaStream = 17;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(0..n-1) concurrently; results come back in index order.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out;
    out.reserve(n);
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t lo = 0; lo < n; lo += width) {
        std::vector<std::future<R>> batch;
        for (std::size_t i = lo; i < std::min(n, lo + width); ++i)
            batch.push_back(std::async(std::launch::async, fn, i));
        for (auto &f : batch)
            out.push_back(f.get());
    }
    return out;
}

SimConfig cell_config(const ExperimentConfig &cfg, std::uint64_t stream, std::uint64_t index)
{
    SimConfig sc = cfg.sim;
    sc.seed = derive_seed(cfg.seed, {stream, index});
    return sc;
}

RaidGeometry raid_geometry(const ExperimentConfig &cfg)
{
    return {cfg.sim.geometry.n_chips, cfg.sim.geometry.wordlines_per_block};
}

// Block 0 of each chip holds a fully programmed block, block 1 the LI-RAID variant.
FlashSim make_cell(const ExperimentConfig &cfg, const ErrorModels &models, std::uint64_t stream,
                   std::uint64_t index, double pec, double retention_s, const RaidLayout *li)
{
    FlashSim sim(cell_config(cfg, stream, index), models);
    for (int c = 0; c < cfg.sim.geometry.n_chips; ++c) {
        sim.add_wear(c, 0, pec);
        sim.program_block_random(c, 0);
        if (li) {
            sim.add_wear(c, 1, pec);
            sim.program_block_random(c, 1, li->blank_mask(c));
        }
    }
    sim.advance_clock(retention_s);
    return sim;
}

// Per-page RBER indexed (chip, wordline, page); NaN where nothing is stored.
struct RberMap {
    int n_wl = 0;
    std::vector<double> v;
    double &at(int c, int w, PageType p) { return v[(static_cast<std::size_t>(c) * n_wl + w) * 2 + static_cast<int>(p)]; }
    double at(int c, int w, PageType p) const
    {
        return v[(static_cast<std::size_t>(c) * n_wl + w) * 2 + static_cast<int>(p)];
    }
    double max() const
    {
        double m = 0.0;
        for (double x : v)
            if (!std::isnan(x))
                m = std::max(m, x);
        return m;
    }
    double mean() const
    {
        double s = 0.0;
        int n = 0;
        for (double x : v)
            if (!std::isnan(x)) {
                s += x;
                ++n;
            }
        return n ? s / n : 0.0;
    }
};

RberMap measure(FlashSim &sim, int block, const VrefPolicy &policy)
{
    const auto &g = sim.config().geometry;
    RberMap m;
    m.n_wl = g.wordlines_per_block;
    m.v.assign(static_cast<std::size_t>(g.n_chips) * g.wordlines_per_block * 2, kNaN);
    for (int c = 0; c < g.n_chips; ++c)
        for (const PageRber &p : sim.measure_block_rber(c, block, policy))
            m.at(c, p.wordline, p.page) = p.rber;
    return m;
}

double group_worst(const RaidLayout &layout, const RberMap &m, GroupStatistic stat)
{
    return group_rber(layout, [&m](int c, int w, PageType p) { return m.at(c, w, p); }, stat).overall;
}

struct StackDef {
    const char *name;
    const char *policy;
    bool li;
};

constexpr StackDef kStacks[] = {
    {"baseline", "fixed", false},
    {"sota", "sota", false},
    {"lavar", "sota_lavar", false},
    {"lavar_li", "sota_lavar", true},
    {"full", "full", true},
};

const StackDef &stack_def(const std::string &name)
{
    for (const auto &s : kStacks)
        if (name == s.name)
            return s;
    throw std::invalid_argument("unknown stack '" + name + "'");
}

// worst[stack][grid point] at one retention assumption.
std::vector<std::vector<double>> stack_curves(const ExperimentConfig &cfg, const ErrorModels &models,
                                              const LearnedState &learned, const std::vector<StackDef> &stacks,
                                              const std::vector<double> &grid, double retention_s)
{
    const RaidLayout li = layout_li_raid(raid_geometry(cfg));
    const bool any_li = std::any_of(stacks.begin(), stacks.end(), [](const StackDef &s) { return s.li; });
    const auto per_point = parallel_map(grid.size(), [&](std::size_t k) {
        FlashSim sim = make_cell(cfg, models, kLifetimeStream, k, grid[k], retention_s, any_li ? &li : nullptr);
        std::vector<double> w;
        for (const auto &s : stacks) {
            const RberMap m = measure(sim, s.li ? 1 : 0, make_policy(s.policy, cfg, models, learned, &sim));
            w.push_back(s.li ? group_worst(li, m, cfg.group_statistic) : m.max());
        }
        return w;
    });
    std::vector<std::vector<double>> out(stacks.size(), std::vector<double>(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k)
        for (std::size_t i = 0; i < stacks.size(); ++i)
            out[i][k] = per_point[k][i];
    return out;
}

// Index of the last grid point before the first failure; -1 if the first point fails.
int last_passing(const std::vector<double> &worst, double limit)
{
    int last = -1;
    for (std::size_t k = 0; k < worst.size(); ++k) {
        if (!(worst[k] <= limit))
            break;
        last = static_cast<int>(k);
    }
    return last;
}

std::array<double, 4> coef_of(const ModelRow &r) { return {r.alpha, r.beta, r.gamma, r.delta}; }

RowRecovery fit_row(Var v, const ModelRow &source, const std::vector<OlsSample> &s)
{
    RowRecovery r;
    r.var = v;
    r.source = source;
    if (v == Var::Va) {
        std::vector<std::pair<double, double>> pv;
        for (const auto &x : s)
            pv.emplace_back(x.pec, x.value);
        const LinearFit f = ols_fit_va(pv);
        r.fitted = {0.0, 0.0, f.gamma, f.delta};
        r.std_error = {0.0, 0.0, f.std_error[0], f.std_error[1]};
        r.adj_r2 = f.adj_r2;
    } else {
        const OlsFit f = ols_fit(s);
        r.fitted = f.coef;
        r.std_error = f.std_error;
        r.adj_r2 = f.adj_r2;
    }
    return r;
}

} // namespace

LayerOffsetTable learn_lavar_table(const ExperimentConfig &cfg, const ErrorModels &models)
{
    FlashSim sim(cell_config(cfg, kLavarStream, 0), models);
    sim.add_wear(0, 0, cfg.lavar_learn_pec);
    sim.program_block_random(0, 0);
    sim.advance_clock(cfg.lavar_learn_retention_s);
    return lavar_learn(sim, 0, 0);
}

RemarModel train_remar(const ExperimentConfig &cfg, const ErrorModels &models)
{
    RemarModel model(models.wear.domain().t_min);
    auto times = cfg.remar_train_retention_s;
    std::sort(times.begin(), times.end());
    for (std::size_t i = 0; i < cfg.remar_train_pec.size(); ++i) {
        FlashSim sim(cell_config(cfg, kRemarStream, i), models);
        sim.add_wear(0, 0, cfg.remar_train_pec[i]);
        sim.program_block_random(0, 0);
        for (double t : times) {
            sim.advance_clock(t - sim.now());
            remar_observe(model, sim, 0, 0, 0);
        }
    }
    if (!model.trained())
        throw ConfigError("ReMAR training grid is too small to fit");
    return model;
}

LearnedState learn(const ExperimentConfig &cfg, const ErrorModels &models)
{
    return {learn_lavar_table(cfg, models), train_remar(cfg, models)};
}

VrefPolicy make_policy(const std::string &name, const ExperimentConfig &cfg, const ErrorModels &models,
                       const LearnedState &learned, const FlashSim *sim)
{
    const RetentionWearModel wear = models.wear;
    const PolicyConfig pc = cfg.policy;
    const double t_min = wear.domain().t_min;
    auto meta = [](const PageContext &c) {
        return BlockMetadata{static_cast<std::uint32_t>(c.pec), static_cast<std::uint32_t>(c.program_epoch_s)};
    };
    auto agnostic = [wear, t_min](const PageContext &c) {
        return policy_variation_agnostic(wear, c.pec, std::max(c.now_s - c.program_epoch_s, t_min));
    };
    auto sota = [wear, pc, meta](const PageContext &c) { return policy_state_of_the_art(wear, meta(c), pc); };
    auto remar = [m = learned.remar, meta](const PageContext &c) { return m.predict(meta(c), c.now_s); };
    auto with_table = [t = learned.lavar](auto base) {
        return [t, base](const PageContext &c) { return lavar_read_vrefs(base(c), t, c.layer); };
    };

    if (name == "fixed") {
        const VrefTriple v = policy_fixed_default(wear, pc);
        return [v](const PageContext &) { return v; };
    }
    if (name == "sota")
        return sota;
    if (name == "agnostic")
        return agnostic;
    if (name == "lavar")
        return with_table(agnostic);
    if (name == "sota_lavar")
        return with_table(sota);
    if (name == "remar")
        return remar;
    if (name == "full")
        return with_table(remar);
    if (name == "optimal") {
        if (!sim)
            throw std::invalid_argument("the optimal policy needs the simulator");
        return [sim](const PageContext &c) { return sim->characterize_vopt(c.chip, c.block, c.wordline); };
    }
    throw std::invalid_argument("unknown policy '" + name + "'");
}

const SweepRow &SweepResult::at(double pec, const std::string &policy) const
{
    for (const auto &r : rows)
        if (r.pec == pec && r.policy == policy)
            return r;
    throw std::out_of_range("no sweep row for " + policy);
}

std::vector<double> SweepResult::reductions(const std::string &policy, const std::string &reference) const
{
    std::vector<double> out;
    for (const auto &r : rows)
        if (r.policy == policy)
            out.push_back(1.0 - r.avg_rber / at(r.pec, reference).avg_rber);
    return out;
}

CsvTable SweepResult::csv(std::uint64_t seed) const
{
    CsvTable t({"pec", "policy", "avg_rber", "worst_rber", "seed"});
    for (const auto &r : rows)
        t.add({CsvTable::num(r.pec), r.policy, CsvTable::num(r.avg_rber), CsvTable::num(r.worst_rber),
               std::to_string(seed)});
    return t;
}

SweepResult run_rber_sweep(const ExperimentConfig &cfg)
{
    const ErrorModels models = cfg.build_models();
    const LearnedState learned = learn(cfg, models);
    const auto grid = cfg.sweep_pec.points();
    const auto cells = parallel_map(grid.size(), [&](std::size_t k) {
        FlashSim sim = make_cell(cfg, models, kSweepStream, k, grid[k], cfg.sweep_retention_s, nullptr);
        std::vector<SweepRow> rows;
        for (const auto &p : cfg.sweep_policies) {
            const RberMap m = measure(sim, 0, make_policy(p, cfg, models, learned, &sim));
            rows.push_back({grid[k], p, m.mean(), m.max()});
        }
        return rows;
    });
    SweepResult out;
    for (const auto &c : cells)
        out.rows.insert(out.rows.end(), c.begin(), c.end());
    return out;
}

const StackResult &LifetimeResult::stack(const std::string &name) const
{
    for (const auto &s : stacks)
        if (s.name == name)
            return s;
    throw std::out_of_range("no stack " + name);
}

CsvTable LifetimeResult::csv() const
{
    CsvTable t({"stack", "endurance_pec", "ratio", "rber_at_baseline_eol", "ecc_overhead", "ecc_reduction"});
    for (const auto &s : stacks)
        t.add({s.name, CsvTable::num(s.endurance), CsvTable::num(s.ratio), CsvTable::num(s.rber_at_baseline_eol),
               CsvTable::num(s.ecc_overhead), CsvTable::num(s.ecc_reduction)});
    return t;
}

CsvTable LifetimeResult::curve_csv() const
{
    CsvTable t({"pec", "stack", "worst_rber"});
    for (std::size_t k = 0; k < grid.size(); ++k)
        for (std::size_t i = 0; i < stacks.size(); ++i)
            t.add({CsvTable::num(grid[k]), stacks[i].name, CsvTable::num(worst[i][k])});
    return t;
}

LifetimeResult run_lifetime(const ExperimentConfig &cfg)
{
    cfg.ecc.validate();
    const ErrorModels models = cfg.build_models();
    const LearnedState learned = learn(cfg, models);
    LifetimeResult out;
    out.grid = cfg.lifetime_pec.points();
    const std::vector<StackDef> defs(std::begin(kStacks), std::end(kStacks));
    out.worst = stack_curves(cfg, models, learned, defs, out.grid, cfg.lifetime_retention_s);

    const double limit = cfg.ecc.rber_limit;
    const int kb = last_passing(out.worst[0], limit);
    if (kb == static_cast<int>(out.grid.size()) - 1)
        throw ConfigError("baseline never exceeds the RBER limit within the PEC grid; extend PEC grid");
    const double base_end = kb >= 0 ? out.grid[kb] : out.grid.front();
    out.limit_overhead = ecc_required_overhead(limit, cfg.ecc);
    for (std::size_t i = 0; i < defs.size(); ++i) {
        StackResult s;
        s.name = defs[i].name;
        const int k = last_passing(out.worst[i], limit);
        s.fails_at_first_point = k < 0;
        s.endurance = k >= 0 ? out.grid[k] : out.grid.front();
        s.ratio = base_end > 0.0 ? s.endurance / base_end : std::numeric_limits<double>::infinity();
        s.rber_at_baseline_eol = out.worst[i][std::max(kb, 0)];
        s.ecc_overhead = ecc_required_overhead(s.rber_at_baseline_eol, cfg.ecc);
        s.ecc_reduction = 1.0 - s.ecc_overhead / out.limit_overhead;
        out.stacks.push_back(s);
    }
    return out;
}

FcrResult run_fcr(const ExperimentConfig &cfg, const std::string &stack)
{
    const ErrorModels models = cfg.build_models();
    const LearnedState learned = learn(cfg, models);
    const auto grid = cfg.lifetime_pec.points();
    const std::vector<StackDef> defs{stack_def(stack)};
    const double limit = cfg.ecc.rber_limit;
    auto endurance = [&](double retention_s) {
        const int k = last_passing(stack_curves(cfg, models, learned, defs, grid, retention_s)[0], limit);
        return k >= 0 ? grid[k] : grid.front();
    };
    FcrResult r;
    r.lifetime_no_refresh = endurance(cfg.lifetime_retention_s);
    // With refresh no page ages past one period before it is rewritten.
    r.lifetime_refresh = endurance(std::min(cfg.fcr_period_s, cfg.lifetime_retention_s));
    r.factor = r.lifetime_no_refresh > 0.0 ? r.lifetime_refresh / r.lifetime_no_refresh
                                           : std::numeric_limits<double>::infinity();
    r.write_amplification = std::max(1.0, cfg.lifetime_retention_s / cfg.fcr_period_s);
    return r;
}

LiRaidResult run_li_raid(const ExperimentConfig &cfg, double pec, const std::string &policy)
{
    const ErrorModels models = cfg.build_models();
    const LearnedState learned = learn(cfg, models);
    const RaidLayout li = layout_li_raid(raid_geometry(cfg));
    FlashSim sim = make_cell(cfg, models, kLifetimeStream, 0, pec, cfg.lifetime_retention_s, &li);
    const VrefPolicy p = make_policy(policy, cfg, models, learned, &sim);
    LiRaidResult r;
    r.conventional_worst = measure(sim, 0, p).max();
    r.li_worst = group_worst(li, measure(sim, 1, p), cfg.group_statistic);
    r.reduction = 1.0 - r.li_worst / r.conventional_worst;
    return r;
}

double layer_rber_spread(const ExperimentConfig &cfg, double pec, double retention_s)
{
    const ErrorModels models = cfg.build_models();
    FlashSim sim = make_cell(cfg, models, kSweepStream, 0, pec, retention_s, nullptr);
    const VrefPolicy p = make_policy("optimal", cfg, models, LearnedState{LayerOffsetTable::zero(1), RemarModel()}, &sim);
    double ref = kNaN, top = 0.0;
    for (const PageRber &r : sim.measure_block_rber(0, 0, p)) {
        if (r.page != PageType::MSB)
            continue;
        if (r.layer == 0)
            ref = r.rber;
        top = std::max(top, r.rber);
    }
    if (std::isnan(ref) || !(ref > 0.0))
        throw std::logic_error("reference layer has no measurable errors");
    return top / ref;
}

RenacExperiment run_renac(const ExperimentConfig &cfg, double interference_scale, int cells, double pec,
                          double retention_s)
{
    ExperimentConfig c = cfg;
    c.sim.mode = SimMode::MonteCarlo;
    c.sim.geometry.n_chips = 1;
    c.sim.geometry.blocks_per_chip = 1;
    c.sim.geometry.wordlines_per_block = 2;
    c.sim.geometry.cells_per_wordline = cells;
    c.sim.geometry.layer_of_wordline.clear();
    ErrorModels models = c.build_models();
    models.retention_interference.enabled = true;
    for (auto &row : models.retention_interference.shift_adjust)
        for (double &x : row)
            x *= interference_scale;
    FlashSim sim(cell_config(c, kRenacStream, 0), models);
    sim.add_wear(0, 0, pec);
    sim.program_block_random(0, 0);
    sim.advance_clock(retention_s);
    const VrefTriple v = sim.characterize_vopt(0, 0, 0);
    RenacExperiment r;
    for (PageType p : {PageType::MSB, PageType::LSB}) {
        const RenacResult x = renac_reread(sim, {0, 0, 0, p}, v, models.retention_interference, retention_s);
        r.errors_before += x.errors_before;
        r.errors_after += x.errors_after;
    }
    const double bits = 2.0 * cells;
    r.rber_before = r.errors_before / bits;
    r.rber_after = r.errors_after / bits;
    r.noise_sigma = std::sqrt(std::max(r.errors_before, 1.0));
    return r;
}

std::vector<RowRecovery> replicate_noiseless(const RetentionWearModel &m, const std::vector<double> &pecs,
                                             const std::vector<double> &times)
{
    std::vector<RowRecovery> out;
    for (int i = 0; i < kNumVars; ++i) {
        const Var v = static_cast<Var>(i);
        std::vector<OlsSample> s;
        for (double p : pecs)
            for (double t : times)
                s.push_back({p, t, m.eval(v, p, t)});
        out.push_back(fit_row(v, m.row(v), s));
    }
    return out;
}

ReplicationResult run_characterization_replication(const ExperimentConfig &cfg)
{
    ExperimentConfig c = cfg;
    c.sim.mode = SimMode::MonteCarlo;
    c.sim.geometry.n_chips = 1;
    c.sim.geometry.blocks_per_chip = 11;
    c.sim.geometry.wordlines_per_block = 1;
    c.sim.geometry.cells_per_wordline = cfg.replicate_cells;
    c.sim.geometry.layer_of_wordline.clear();
    const ErrorModels models = c.build_models();
    FlashSim sim(cell_config(c, kReplicateStream, 0), models);
    std::vector<double> pecs;
    for (int b = 0; b < 11; ++b) {
        pecs.push_back(1000.0 * b);
        sim.add_wear(0, b, pecs.back());
        sim.program_block_random(0, b);
    }
    auto times = cfg.remar_train_retention_s;
    std::sort(times.begin(), times.end());

    std::array<std::vector<OlsSample>, kNumVars> samples;
    for (double t : times) {
        sim.advance_clock(t - sim.now());
        for (int b = 0; b < 11; ++b) {
            const auto est = sim.sweep_read({0, b, 0, PageType::MSB});
            const auto states = sim.programmed_states(0, b, 0);
            std::array<std::vector<double>, 4> per_state;
            for (std::size_t i = 0; i < est.size(); ++i)
                per_state[rank(states[i])].push_back(est[i]);
            for (State s : kAllStates) {
                // The lowest and highest sweep bins also hold everything beyond the window.
                const StateDistribution d =
                    gaussian_fit_censored(per_state[rank(s)], c.sim.v_min + 1.0, c.sim.v_max - 1.0);
                samples[static_cast<int>(mean_var(s))].push_back({pecs[b], t, d.mean});
                samples[static_cast<int>(sigma_var(s))].push_back({pecs[b], t, d.stdev});
            }
            const VrefTriple v = sim.characterize_vopt(0, b, 0);
            samples[static_cast<int>(Var::Va)].push_back({pecs[b], t, v.va});
            samples[static_cast<int>(Var::Vb)].push_back({pecs[b], t, v.vb});
            samples[static_cast<int>(Var::Vc)].push_back({pecs[b], t, v.vc});
            // RBER rows live in log space; half an error keeps empty pages finite.
            for (PageType p : {PageType::MSB, PageType::LSB}) {
                const PageRead r = sim.read_page({0, b, 0, p}, v);
                const Var row = p == PageType::MSB ? Var::RberMsb : Var::RberLsb;
                samples[static_cast<int>(row)].push_back({pecs[b], t, std::log((r.errors + 0.5) / r.bits_read)});
            }
        }
    }
    ReplicationResult out;
    for (int i = 0; i < kNumVars; ++i)
        out.rows.push_back(fit_row(static_cast<Var>(i), models.wear.row(static_cast<Var>(i)), samples[i]));

    // Per-page RBER across a full array at 10K PEC.
    ExperimentConfig g = cfg;
    g.sim.mode = SimMode::MonteCarlo;
    const ErrorModels gm = g.build_models();
    FlashSim arr(cell_config(g, kGammaStream, 0), gm);
    const auto &geo = g.sim.geometry;
    for (int ch = 0; ch < geo.n_chips; ++ch)
        for (int b = 0; b < geo.blocks_per_chip; ++b) {
            arr.add_wear(ch, b, 10000.0);
            arr.program_block_random(ch, b);
        }
    arr.advance_clock(cfg.lifetime_retention_s);
    const VrefPolicy p = make_policy("agnostic", g, gm, LearnedState{LayerOffsetTable::zero(1), RemarModel()});
    std::vector<double> rber;
    for (int ch = 0; ch < geo.n_chips; ++ch)
        for (int b = 0; b < geo.blocks_per_chip; ++b)
            for (const PageRber &r : arr.measure_block_rber(ch, b, p))
                if (r.rber > 0.0)
                    rber.push_back(r.rber);
    out.gamma_pages = rber.size();
    if (rber.size() >= 2) {
        const GammaFit gf = gamma_fit(rber);
        out.gamma_shape = gf.shape;
        out.gamma_scale = gf.scale;
        const double hi = *std::max_element(rber.begin(), rber.end());
        const int bins = std::max(4, static_cast<int>(std::sqrt(static_cast<double>(rber.size()))));
        std::vector<double> edges(bins + 1), counts(bins, 0.0);
        for (int i = 0; i <= bins; ++i)
            edges[i] = hi * (1.0 + 1e-9) * i / bins;
        for (double x : rber)
            counts[std::min(bins - 1, static_cast<int>(x / edges[bins] * bins))] += 1.0;
        const KlResult kl = kl_divergence(counts, edges, [&gf](double x) { return gamma_rber_pdf(gf.shape, gf.scale, x); });
        out.gamma_kl = kl.nats;
        out.gamma_kl_infinite = kl.infinite;
    }
    return out;
}

CsvTable ReplicationResult::csv() const
{
    CsvTable t({"row", "source_alpha", "source_beta", "source_gamma", "source_delta", "fit_alpha", "fit_beta",
                "fit_gamma", "fit_delta", "se_alpha", "se_beta", "se_gamma", "se_delta", "adj_r2"});
    for (const auto &r : rows) {
        std::vector<std::string> cells{std::string(var_key(r.var))};
        for (double x : coef_of(r.source))
            cells.push_back(CsvTable::num(x));
        for (double x : r.fitted)
            cells.push_back(CsvTable::num(x));
        for (double x : r.std_error)
            cells.push_back(CsvTable::num(x));
        cells.push_back(CsvTable::num(r.adj_r2));
        t.add(cells);
    }
    return t;
}

CsvTable ReplicationResult::gamma_csv() const
{
    CsvTable t({"pages", "shape", "scale", "kl_nats"});
    t.add({std::to_string(gamma_pages), CsvTable::num(gamma_shape), CsvTable::num(gamma_scale),
           gamma_kl_infinite ? "inf" : CsvTable::num(gamma_kl)});
    return t;
}

} // namespace nandsim
