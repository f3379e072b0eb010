// SPDX-License-Identifier: Apache-2.0
#include "nandsim/mitigation.hpp"

#include <stdexcept>

namespace nandsim {

RenacResult renac_reread(FlashSim &sim, const PageAddress &addr, const VrefTriple &vrefs,
                         const RetentionInterferenceModel &interference, double retention_s)
{
    if (sim.config().mode != SimMode::MonteCarlo)
        throw std::logic_error("ReNAC needs Monte Carlo mode");
    const int next = addr.wordline + 1;
    if (next >= sim.config().geometry.wordlines_per_block || !sim.is_programmed(addr.chip, addr.block, next))
        throw std::logic_error("no neighbor available");

    RenacResult out;
    const PageRead plain = sim.read_page(addr, vrefs);
    out.errors_before = plain.errors;

    // Neighbor states as the controller sees them.
    const PageRead nb_msb = sim.read_page({addr.chip, addr.block, next, PageType::MSB}, vrefs);
    const PageRead nb_lsb = sim.read_page({addr.chip, addr.block, next, PageType::LSB}, vrefs);
    const std::size_t cells = plain.bits.size();
    std::vector<std::uint8_t> nb(cells);
    for (std::size_t i = 0; i < cells; ++i)
        nb[i] = static_cast<std::uint8_t>(rank(gray_decode({nb_msb.bits[i], nb_lsb.bits[i]})));

    out.bits.resize(cells);
    for (State n : kAllStates) {
        // Each boundary moves by the mean adjustment of the two states it separates.
        VrefTriple v = vrefs;
        for (int b = 0; b < 3; ++b)
            v[b] += 0.5 * (interference.adjust(static_cast<State>(b), n, retention_s) +
                           interference.adjust(static_cast<State>(b + 1), n, retention_s));
        bool any = false;
        for (std::size_t i = 0; i < cells && !any; ++i)
            any = nb[i] == rank(n);
        if (!any)
            continue;
        const PageRead r = sim.read_page(addr, v);
        for (std::size_t i = 0; i < cells; ++i)
            if (nb[i] == rank(n))
                out.bits[i] = r.bits[i];
    }
    out.errors_after = static_cast<double>(sim.count_bit_errors(addr, out.bits));
    return out;
}

} // namespace nandsim
