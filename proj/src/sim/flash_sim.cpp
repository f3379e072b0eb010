// SPDX-License-Identifier: Apache-2.0
#include "nandsim/flash_sim.hpp"
#include "nandsim/errors.hpp"
#include "nandsim/kernels.hpp"
#include "nandsim/seed.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace nandsim {

namespace {
constexpr std::uint64_t kReadStream = 1;
constexpr std::uint64_t kProgramStream = 2;
constexpr std::uint64_t kDataStream = 3;
} // namespace

void ChipGeometry::validate(int n_layers) const
{
    if (n_chips < 1 || blocks_per_chip < 1 || wordlines_per_block < 1 || cells_per_wordline < 1)
        throw ConfigError("geometry counts must be >= 1");
    if (!layer_of_wordline.empty() && static_cast<int>(layer_of_wordline.size()) != wordlines_per_block)
        throw ConfigError("layer map length must equal wordlines per block");
    for (int w = 0; w < wordlines_per_block; ++w) {
        const int l = layer(w);
        if (l < 0 || l >= n_layers)
            throw ConfigError("wordline maps to a layer outside the layer profile");
    }
}

int ChipGeometry::layer(int wordline) const
{
    return layer_of_wordline.empty() ? wordline : layer_of_wordline[wordline];
}

FlashSim::FlashSim(SimConfig cfg, ErrorModels models)
    : cfg_(std::move(cfg)), models_(std::move(models)), read_rng_(derive_seed(cfg_.seed, {kReadStream}))
{
    const auto &g = cfg_.geometry;
    g.validate(models_.profile.n_layers());
    if (!(cfg_.v_min < cfg_.v_max))
        throw ConfigError("voltage grid needs v_min < v_max");
    blocks_.resize(static_cast<std::size_t>(g.n_chips) * g.blocks_per_chip);
    for (auto &b : blocks_) {
        b.programmed.assign(g.wordlines_per_block, false);
        b.blank.assign(g.wordlines_per_block, false);
        b.disturbs.assign(g.wordlines_per_block, 0.0);
    }
}

FlashSim::Block &FlashSim::block(int chip, int blk)
{
    const auto &g = cfg_.geometry;
    if (chip < 0 || chip >= g.n_chips || blk < 0 || blk >= g.blocks_per_chip)
        throw std::out_of_range("block address out of range");
    return blocks_[static_cast<std::size_t>(chip) * g.blocks_per_chip + blk];
}

const FlashSim::Block &FlashSim::block(int chip, int blk) const
{
    return const_cast<FlashSim *>(this)->block(chip, blk);
}

double FlashSim::retention(const Block &b) const
{
    // Reads sooner than the first evaluable time see the birth distribution.
    return std::max(clock_s_ - b.program_epoch_s, models_.wear.domain().t_min);
}

void FlashSim::erase_block(int chip, int blk)
{
    Block &b = block(chip, blk);
    std::fill(b.programmed.begin(), b.programmed.end(), false);
    std::fill(b.blank.begin(), b.blank.end(), false);
    std::fill(b.disturbs.begin(), b.disturbs.end(), 0.0);
    b.state.clear();
    b.z.clear();
    b.shift.clear();
    b.pending_cycle = true;
}

void FlashSim::add_wear(int chip, int blk, double n_cycles)
{
    if (n_cycles < 0.0)
        throw std::invalid_argument("wear must be non-negative");
    block(chip, blk).pec += n_cycles;
}

void FlashSim::advance_clock(double dt_s)
{
    if (dt_s < 0.0)
        throw std::invalid_argument("clock cannot move backwards");
    clock_s_ += dt_s;
}

void FlashSim::program_block(int chip, int blk, const std::vector<WordlineData> &data,
                             const std::vector<bool> &blank)
{
    const auto &g = cfg_.geometry;
    Block &b = block(chip, blk);
    if (std::any_of(b.programmed.begin(), b.programmed.end(), [](bool p) { return p; }))
        throw std::logic_error("block must be erased before programming");
    if (static_cast<int>(data.size()) != g.wordlines_per_block)
        throw std::invalid_argument("program data must cover every wordline");
    if (!blank.empty() && static_cast<int>(blank.size()) != g.wordlines_per_block)
        throw std::invalid_argument("blank mask must cover every wordline");

    if (b.pending_cycle) {
        b.pec += 1.0;
        b.pending_cycle = false;
    }
    ++b.program_count;
    b.program_epoch_s = clock_s_;
    std::mt19937_64 rng(derive_seed(cfg_.seed, {kProgramStream, static_cast<std::uint64_t>(chip),
                                                static_cast<std::uint64_t>(blk), b.program_count}));
    if (cfg_.mode == SimMode::MonteCarlo) {
        const std::size_t n = static_cast<std::size_t>(g.wordlines_per_block) * g.cells_per_wordline;
        b.state.assign(n, 0);
        b.z.assign(n, 0.0);
        b.shift.assign(n, 0.0);
    }
    for (int w = 0; w < g.wordlines_per_block; ++w) {
        if (!blank.empty() && blank[w]) {
            b.blank[w] = true;
            continue;
        }
        if (cfg_.mode == SimMode::MonteCarlo)
            program_wordline_cells(b, w, data[w], rng);
        b.programmed[w] = true;
    }
}

void FlashSim::program_block_random(int chip, int blk, const std::vector<bool> &blank)
{
    const auto &g = cfg_.geometry;
    Block &b = block(chip, blk);
    std::mt19937_64 rng(derive_seed(cfg_.seed, {kDataStream, static_cast<std::uint64_t>(chip),
                                                static_cast<std::uint64_t>(blk), b.program_count + 1}));
    std::vector<WordlineData> data(g.wordlines_per_block);
    if (cfg_.mode == SimMode::MonteCarlo) {
        for (auto &d : data) {
            d.msb.resize(g.cells_per_wordline);
            d.lsb.resize(g.cells_per_wordline);
            for (int i = 0; i < g.cells_per_wordline; ++i) {
                const std::uint64_t r = rng();
                d.msb[i] = r & 1u;
                d.lsb[i] = (r >> 1) & 1u;
            }
        }
    }
    program_block(chip, blk, data, blank);
}

void FlashSim::program_wordline_cells(Block &b, int wl, const WordlineData &d, std::mt19937_64 &rng)
{
    const auto &g = cfg_.geometry;
    const int cells = g.cells_per_wordline;
    if (static_cast<int>(d.msb.size()) != cells || static_cast<int>(d.lsb.size()) != cells)
        throw std::invalid_argument("page data length must equal cells per wordline");
    const std::size_t base = static_cast<std::size_t>(wl) * cells;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < cells; ++i) {
        b.state[base + i] = static_cast<std::uint8_t>(rank(gray_decode({d.msb[i], d.lsb[i]})));
        b.z[base + i] = normal(rng);
    }

    const auto &pi = models_.program;
    if (!pi.enabled || wl == 0 || !b.programmed[wl - 1])
        return;
    // Program-time shift of each state above ER, for the aggressor on this wordline and the one below.
    auto deltas = [&](int w) {
        CellContext ctx;
        ctx.pec = b.pec;
        ctx.retention_s = models_.wear.domain().t_min;
        ctx.layer = g.layer(w);
        std::array<double, 4> out{};
        const double er = eval_distribution(models_.wear, models_.profile, ctx, State::ER).mean;
        for (State s : kAllStates)
            out[rank(s)] = std::max(eval_distribution(models_.wear, models_.profile, ctx, s).mean - er, 0.0);
        return out;
    };
    const auto here = deltas(wl);
    const auto below = deltas(wl - 1);
    const std::size_t prev = static_cast<std::size_t>(wl - 1) * cells;
    for (int i = 0; i < cells; ++i) {
        const State victim_prev = static_cast<State>(b.state[prev + i]);
        b.shift[prev + i] += program_interference_shift(pi, victim_prev, here[b.state[base + i]], WlRelation::NextWL);
        const State victim_here = static_cast<State>(b.state[base + i]);
        b.shift[base + i] += program_interference_shift(pi, victim_here, below[b.state[prev + i]], WlRelation::PrevWL);
    }
}

CellContext FlashSim::cell_context(int chip, int blk, int wl) const
{
    const Block &b = block(chip, blk);
    CellContext ctx;
    ctx.pec = b.pec;
    ctx.retention_s = retention(b);
    ctx.layer = cfg_.geometry.layer(wl);
    ctx.read_disturbs = b.disturbs[wl];
    return ctx;
}

std::vector<double> FlashSim::cell_vth(const Block &b, int wl) const
{
    const auto &g = cfg_.geometry;
    const int cells = g.cells_per_wordline;
    const std::size_t base = static_cast<std::size_t>(wl) * cells;
    CellContext ctx;
    ctx.pec = b.pec;
    ctx.retention_s = retention(b);
    ctx.layer = g.layer(wl);
    ctx.read_disturbs = b.disturbs[wl];

    kernels::StateTable t;
    for (State s : kAllStates) {
        const auto d = eval_distribution(models_.wear, models_.profile, ctx, s, &models_.disturb);
        t.mean[rank(s)] = d.mean;
        t.stdev[rank(s)] = d.stdev;
    }
    std::vector<double> offset(b.shift.begin() + base, b.shift.begin() + base + cells);
    const auto &ri = models_.retention_interference;
    const bool has_neighbor = wl + 1 < g.wordlines_per_block && b.programmed[wl + 1];
    if (ri.enabled && has_neighbor) {
        const std::size_t nb = base + cells;
        for (int i = 0; i < cells; ++i)
            offset[i] += ri.adjust(static_cast<State>(b.state[base + i]), static_cast<State>(b.state[nb + i]),
                                   ctx.retention_s);
    }
    std::vector<double> vth(cells);
    kernels::active().vth(t, b.z.data() + base, b.state.data() + base, offset.data(), vth.data(), cells);
    return vth;
}

void FlashSim::check_page(const PageAddress &a) const
{
    const Block &b = block(a.chip, a.block);
    if (a.wordline < 0 || a.wordline >= cfg_.geometry.wordlines_per_block)
        throw std::out_of_range("wordline out of range");
    if (!b.programmed[a.wordline])
        throw std::logic_error("page is erased or blank");
}

PageRead FlashSim::read_page(const PageAddress &a, const VrefTriple &v)
{
    check_page(a);
    if (!v.ordered())
        throw std::invalid_argument("vrefs must satisfy va < vb < vc");
    Block &b = block(a.chip, a.block);
    const int cells = cfg_.geometry.cells_per_wordline;
    PageRead out;
    out.bits_read = static_cast<std::uint64_t>(cells);

    if (cfg_.mode == SimMode::Analytic) {
        const CellContext ctx = cell_context(a.chip, a.block, a.wordline);
        StateDistributions d;
        for (State s : kAllStates)
            d[rank(s)] = eval_distribution(models_.wear, models_.profile, ctx, s, &models_.disturb);
        const RberBreakdown r = expected_rber(d, cfg_.priors, v);
        out.errors = (a.page == PageType::MSB ? r.msb : r.lsb) * cells;
    } else {
        const std::vector<double> vth = cell_vth(b, a.wordline);
        const std::size_t base = static_cast<std::size_t>(a.wordline) * cells;
        const auto &re = models_.read_error;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        // Each comparison against a vref may independently resolve the wrong way.
        auto below = [&](double x, double vref) {
            bool r = x < vref;
            if (re.enabled && u(read_rng_) < read_error_probability(re, vref - x))
                r = !r;
            return r;
        };
        out.bits.resize(cells);
        std::uint64_t errors = 0;
        for (int i = 0; i < cells; ++i) {
            const GrayBits prog = gray_encode(static_cast<State>(b.state[base + i]));
            std::uint8_t bit;
            if (a.page == PageType::MSB) {
                const bool ba = below(vth[i], v.va);
                const bool bc = below(vth[i], v.vc);
                bit = (ba || !bc) ? 1 : 0;
                errors += bit != prog.msb;
            } else {
                bit = below(vth[i], v.vb) ? 1 : 0;
                errors += bit != prog.lsb;
            }
            out.bits[i] = bit;
        }
        out.errors = static_cast<double>(errors);
    }
    for (int w = 0; w < cfg_.geometry.wordlines_per_block; ++w)
        if (w != a.wordline)
            b.disturbs[w] += 1.0;
    return out;
}

std::vector<double> FlashSim::sweep_read(const PageAddress &a) const
{
    check_page(a);
    if (cfg_.mode != SimMode::MonteCarlo)
        throw std::logic_error("sweep_read needs Monte Carlo mode");
    std::vector<double> vth = cell_vth(block(a.chip, a.block), a.wordline);
    for (double &x : vth)
        x = std::clamp(std::floor(x), cfg_.v_min, cfg_.v_max - 1.0) + 0.5;
    return vth;
}

SweepHistogram FlashSim::sweep_histogram(int chip, int blk, int wl) const
{
    const auto est = sweep_read({chip, blk, wl, PageType::MSB});
    const Block &b = block(chip, blk);
    const std::size_t base = static_cast<std::size_t>(wl) * cfg_.geometry.cells_per_wordline;
    SweepHistogram h;
    h.v_min = cfg_.v_min;
    const int bins = static_cast<int>(cfg_.v_max - cfg_.v_min);
    for (auto &c : h.counts)
        c.assign(bins, 0);
    for (std::size_t i = 0; i < est.size(); ++i)
        ++h.counts[b.state[base + i]][static_cast<int>(est[i] - 0.5 - cfg_.v_min)];
    return h;
}

VrefTriple FlashSim::characterize_vopt(int chip, int blk, int wl) const
{
    check_page({chip, blk, wl, PageType::MSB});
    if (cfg_.mode == SimMode::MonteCarlo)
        return empirical_vopt(sweep_histogram(chip, blk, wl)).v;
    const CellContext ctx = cell_context(chip, blk, wl);
    StateDistributions d;
    for (State s : kAllStates)
        d[rank(s)] = eval_distribution(models_.wear, models_.profile, ctx, s, &models_.disturb);
    return integer_optimal_vrefs(d);
}

std::vector<PageRber> FlashSim::measure_block_rber(int chip, int blk, const VrefPolicy &policy)
{
    std::vector<PageRber> out;
    const auto &g = cfg_.geometry;
    for (int w = 0; w < g.wordlines_per_block; ++w) {
        if (!block(chip, blk).programmed[w])
            continue;
        for (PageType p : {PageType::MSB, PageType::LSB}) {
            const PageAddress a{chip, blk, w, p};
            const PageRead r = read_page(a, policy(page_context(a)));
            out.push_back({w, g.layer(w), p, r.rber()});
        }
    }
    return out;
}

PageContext FlashSim::page_context(const PageAddress &a) const
{
    const Block &b = block(a.chip, a.block);
    return {a.chip, a.block, a.wordline, cfg_.geometry.layer(a.wordline), a.page, b.pec, b.program_epoch_s, clock_s_};
}

double FlashSim::pec(int chip, int blk) const { return block(chip, blk).pec; }
double FlashSim::program_epoch(int chip, int blk) const { return block(chip, blk).program_epoch_s; }
bool FlashSim::is_programmed(int chip, int blk, int wl) const { return block(chip, blk).programmed.at(wl); }
bool FlashSim::is_blank(int chip, int blk, int wl) const { return block(chip, blk).blank.at(wl); }
double FlashSim::disturb_count(int chip, int blk, int wl) const { return block(chip, blk).disturbs.at(wl); }

std::vector<State> FlashSim::programmed_states(int chip, int blk, int wl) const
{
    check_page({chip, blk, wl, PageType::MSB});
    const Block &b = block(chip, blk);
    if (b.state.empty())
        throw std::logic_error("cell states are only tracked in Monte Carlo mode");
    const int cells = cfg_.geometry.cells_per_wordline;
    const std::size_t base = static_cast<std::size_t>(wl) * cells;
    std::vector<State> out(cells);
    for (int i = 0; i < cells; ++i)
        out[i] = static_cast<State>(b.state[base + i]);
    return out;
}

std::uint64_t FlashSim::count_bit_errors(const PageAddress &a, const std::vector<std::uint8_t> &bits) const
{
    const auto states = programmed_states(a.chip, a.block, a.wordline);
    if (bits.size() != states.size())
        throw std::invalid_argument("bit vector length must equal cells per wordline");
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const GrayBits g = gray_encode(states[i]);
        errors += bits[i] != (a.page == PageType::MSB ? g.msb : g.lsb);
    }
    return errors;
}

void FlashSim::dump(std::ostream &os) const
{
    const auto &g = cfg_.geometry;
    os << "clock_s " << clock_s_ << "\n";
    os << "mode " << (cfg_.mode == SimMode::MonteCarlo ? "mc" : "analytic") << " seed " << cfg_.seed
       << " dwell_s " << cfg_.dwell_s << "\n";
    for (int c = 0; c < g.n_chips; ++c) {
        for (int k = 0; k < g.blocks_per_chip; ++k) {
            const Block &b = block(c, k);
            os << "block " << c << " " << k << " pec " << b.pec << " epoch_s " << b.program_epoch_s << "\n";
            for (int w = 0; w < g.wordlines_per_block; ++w) {
                os << "  wl " << w << " layer " << g.layer(w) << " "
                   << (b.blank[w] ? "blank" : (b.programmed[w] ? "programmed" : "erased")) << " disturbs "
                   << b.disturbs[w] << "\n";
            }
        }
    }
}

} // namespace nandsim
