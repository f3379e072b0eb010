// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/fit.hpp"
#include "nandsim/models.hpp"
#include "nandsim/voltage.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

namespace nandsim {

struct ChipGeometry {
    int n_chips = 4;
    int blocks_per_chip = 8;
    int wordlines_per_block = 32;
    int cells_per_wordline = 4096;
    // Layer of each wordline; empty means wordline w sits on layer w.
    std::vector<int> layer_of_wordline;
    void validate(int n_layers) const;
    int layer(int wordline) const;
};

enum class SimMode { MonteCarlo, Analytic };

struct SimConfig {
    ChipGeometry geometry;
    SimMode mode = SimMode::Analytic;
    std::uint64_t seed = 1;
    double v_min = -50.0;
    double v_max = 350.0;
    double dwell_s = 0.5; // recorded only
    StatePriors priors = kUniformPriors;
};

struct PageAddress {
    int chip = 0;
    int block = 0;
    int wordline = 0;
    PageType page = PageType::MSB;
};

struct WordlineData {
    std::vector<std::uint8_t> msb;
    std::vector<std::uint8_t> lsb;
};

struct PageRead {
    std::vector<std::uint8_t> bits; // empty in analytic mode
    double errors = 0.0;            // expected count in analytic mode
    std::uint64_t bits_read = 0;
    double rber() const { return bits_read ? errors / static_cast<double>(bits_read) : 0.0; }
};

// What a read-voltage policy may know about a page.
struct PageContext {
    int chip;
    int block;
    int wordline;
    int layer;
    PageType page;
    double pec;
    double program_epoch_s;
    double now_s;
};

using VrefPolicy = std::function<VrefTriple(const PageContext &)>;

struct PageRber {
    int wordline;
    int layer;
    PageType page;
    double rber;
};

class FlashSim {
public:
    FlashSim(SimConfig cfg, ErrorModels models);

    const SimConfig &config() const { return cfg_; }
    const ErrorModels &models() const { return models_; }
    double now() const { return clock_s_; }

    void erase_block(int chip, int block);
    // data has one entry per wordline; blank wordlines are skipped and stay erased.
    void program_block(int chip, int block, const std::vector<WordlineData> &data,
                       const std::vector<bool> &blank = {});
    // Pseudo-random data drawn from the block's own stream.
    void program_block_random(int chip, int block, const std::vector<bool> &blank = {});
    // Fast-forward wear by n erase/program pairs without data.
    void add_wear(int chip, int block, double n_cycles);
    void advance_clock(double dt_s);

    PageRead read_page(const PageAddress &addr, const VrefTriple &v);
    // Integer-step sweep; estimates are bin centres. Does not disturb.
    std::vector<double> sweep_read(const PageAddress &addr) const;
    // Per-boundary best integer vrefs for one wordline, from a sweep (MC) or the distributions (analytic).
    VrefTriple characterize_vopt(int chip, int block, int wordline) const;
    SweepHistogram sweep_histogram(int chip, int block, int wordline) const;
    std::vector<PageRber> measure_block_rber(int chip, int block, const VrefPolicy &policy);

    double pec(int chip, int block) const;
    double program_epoch(int chip, int block) const;
    bool is_programmed(int chip, int block, int wordline) const;
    bool is_blank(int chip, int block, int wordline) const;
    double disturb_count(int chip, int block, int wordline) const;
    std::vector<State> programmed_states(int chip, int block, int wordline) const;
    // Bits of a page that differ from what was programmed (Monte Carlo mode).
    std::uint64_t count_bit_errors(const PageAddress &addr, const std::vector<std::uint8_t> &bits) const;
    PageContext page_context(const PageAddress &addr) const;
    CellContext cell_context(int chip, int block, int wordline) const;

    void dump(std::ostream &os) const;

private:
    struct Block {
        double pec = 0.0;
        double program_epoch_s = 0.0;
        bool pending_cycle = false;
        std::uint64_t program_count = 0;
        std::vector<bool> programmed;
        std::vector<bool> blank;
        std::vector<double> disturbs;
        // Monte Carlo state, wordline-major.
        std::vector<std::uint8_t> state;
        std::vector<double> z;
        std::vector<double> shift;
    };

    Block &block(int chip, int block);
    const Block &block(int chip, int block) const;
    void check_page(const PageAddress &a) const;
    double retention(const Block &b) const;
    void program_wordline_cells(Block &b, int wl, const WordlineData &d, std::mt19937_64 &rng);
    std::vector<double> cell_vth(const Block &b, int wl) const;

    SimConfig cfg_;
    ErrorModels models_;
    double clock_s_ = 0.0;
    std::vector<Block> blocks_;
    std::mt19937_64 read_rng_;
};

} // namespace nandsim
