// SPDX-License-Identifier: Apache-2.0
#include "nandsim/mitigation.hpp"

#include <algorithm>
#include <stdexcept>

namespace nandsim {

void rewrite_block(FlashSim &sim, int chip, int block)
{
    const auto &g = sim.config().geometry;
    std::vector<WordlineData> data(g.wordlines_per_block);
    std::vector<bool> blank(g.wordlines_per_block, false);
    for (int w = 0; w < g.wordlines_per_block; ++w) {
        blank[w] = sim.is_blank(chip, block, w);
        if (sim.config().mode != SimMode::MonteCarlo || !sim.is_programmed(chip, block, w))
            continue;
        // Refresh writes back the ECC-corrected data, i.e. what was programmed.
        for (State s : sim.programmed_states(chip, block, w)) {
            const GrayBits b = gray_encode(s);
            data[w].msb.push_back(b.msb);
            data[w].lsb.push_back(b.lsb);
        }
    }
    sim.erase_block(chip, block);
    sim.program_block(chip, block, data, blank);
}

namespace {
bool live(const FlashSim &sim, int chip, int block)
{
    for (int w = 0; w < sim.config().geometry.wordlines_per_block; ++w)
        if (sim.is_programmed(chip, block, w))
            return true;
    return false;
}
} // namespace

FcrScheduler::FcrScheduler(double period_s) : period_s_(period_s)
{
    if (!(period_s > 0.0))
        throw std::invalid_argument("refresh period must be positive");
}

FcrScheduler fcr_refresh(double period_s) { return FcrScheduler(period_s); }

void FcrScheduler::refresh_due(FlashSim &sim)
{
    const auto &g = sim.config().geometry;
    for (int c = 0; c < g.n_chips; ++c) {
        for (int k = 0; k < g.blocks_per_chip; ++k) {
            if (live(sim, c, k) && sim.now() - sim.program_epoch(c, k) >= period_s_) {
                rewrite_block(sim, c, k);
                ++refreshes_;
            }
        }
    }
}

void FcrScheduler::advance(FlashSim &sim, double dt_s)
{
    if (dt_s < 0.0)
        throw std::invalid_argument("clock cannot move backwards");
    double left = dt_s;
    while (left > 0.0) {
        // Step to the earliest due refresh so no block ages past the period.
        double step = left;
        const auto &g = sim.config().geometry;
        for (int c = 0; c < g.n_chips; ++c)
            for (int k = 0; k < g.blocks_per_chip; ++k)
                if (live(sim, c, k))
                    step = std::min(step, std::max(0.0, sim.program_epoch(c, k) + period_s_ - sim.now()));
        if (step <= 0.0) {
            refresh_due(sim);
            continue;
        }
        sim.advance_clock(step);
        left -= step;
        refresh_due(sim);
    }
}

} // namespace nandsim
