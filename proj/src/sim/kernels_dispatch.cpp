// SPDX-License-Identifier: Apache-2.0
#include "nandsim/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace nandsim::kernels {

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

KernelSet get(Isa isa)
{
    if (isa == Isa::Avx2 && cpu_has_avx2())
        return {Isa::Avx2, &avx2::vth, &avx2::count_errors};
    return {Isa::Scalar, &scalar::vth, &scalar::count_errors};
}

const KernelSet &active()
{
    static const KernelSet set = [] {
        const char *env = std::getenv("NANDSIM_ISA");
        if (env && std::strcmp(env, "scalar") == 0)
            return get(Isa::Scalar);
        return get(Isa::Avx2);
    }();
    return set;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

} // namespace nandsim::kernels
