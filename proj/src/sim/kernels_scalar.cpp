// SPDX-License-Identifier: Apache-2.0
#include "nandsim/kernels.hpp"

namespace nandsim::kernels::scalar {

void vth(const StateTable &t, const double *z, const std::uint8_t *state, const double *offset,
         double *out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const int s = state[i];
        const double spread = t.stdev[s] * z[i];
        double v = t.mean[s] + spread;
        if (offset)
            v = v + offset[i];
        out[i] = v;
    }
}

ErrorCounts count_errors(const double *vth, const std::uint8_t *state, const VrefTriple &v,
                         std::size_t n)
{
    ErrorCounts c;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = state[i];
        const unsigned prog_msb = (s == 0 || s == 3) ? 1u : 0u;
        const unsigned prog_lsb = s <= 1 ? 1u : 0u;
        const unsigned read_lsb = vth[i] < v.vb ? 1u : 0u;
        const unsigned read_msb = (vth[i] < v.va || !(vth[i] < v.vc)) ? 1u : 0u;
        c.msb += prog_msb ^ read_msb;
        c.lsb += prog_lsb ^ read_lsb;
    }
    return c;
}

} // namespace nandsim::kernels::scalar
