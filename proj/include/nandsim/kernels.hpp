// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/voltage.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace nandsim::kernels {

// Per-state mean and stdev for one wordline context.
struct StateTable {
    alignas(32) double mean[4];
    alignas(32) double stdev[4];
};

struct ErrorCounts {
    std::uint64_t msb = 0;
    std::uint64_t lsb = 0;
    bool operator==(const ErrorCounts &) const = default;
};

// vth[i] = mean[s] + stdev[s] * z[i] + offset[i], s = state[i]; offset may be null.
using VthFn = void (*)(const StateTable &t, const double *z, const std::uint8_t *state,
                       const double *offset, double *vth, std::size_t n);

// Counts MSB and LSB bits that read differently from the programmed state.
using CountFn = ErrorCounts (*)(const double *vth, const std::uint8_t *state, const VrefTriple &v,
                                std::size_t n);

enum class Isa { Scalar, Avx2 };

struct KernelSet {
    Isa isa;
    VthFn vth;
    CountFn count_errors;
};

namespace scalar {
void vth(const StateTable &t, const double *z, const std::uint8_t *state, const double *offset,
         double *out, std::size_t n);
ErrorCounts count_errors(const double *vth, const std::uint8_t *state, const VrefTriple &v,
                         std::size_t n);
} // namespace scalar

namespace avx2 {
void vth(const StateTable &t, const double *z, const std::uint8_t *state, const double *offset,
         double *out, std::size_t n);
ErrorCounts count_errors(const double *vth, const std::uint8_t *state, const VrefTriple &v,
                         std::size_t n);
} // namespace avx2

bool cpu_has_avx2();
KernelSet get(Isa isa);
// Best supported set, unless NANDSIM_ISA=scalar forces the reference path.
const KernelSet &active();
std::string_view isa_name(Isa isa);

} // namespace nandsim::kernels
