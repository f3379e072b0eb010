// SPDX-License-Identifier: Apache-2.0
#include "nandsim/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define NANDSIM_X86 1
#endif

namespace nandsim::kernels::avx2 {

#ifdef NANDSIM_X86

namespace {

__attribute__((target("avx2"))) inline __m128i load_states(const std::uint8_t *s)
{
    int packed;
    __builtin_memcpy(&packed, s, 4);
    return _mm_cvtepu8_epi32(_mm_cvtsi32_si128(packed));
}

} // namespace

// Same operation order as the scalar kernel (multiply, add mean, add offset), so results are bit-identical.
__attribute__((target("avx2"))) void vth(const StateTable &t, const double *z,
                                         const std::uint8_t *state, const double *offset,
                                         double *out, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m128i idx = load_states(state + i);
        const __m256d mu = _mm256_i32gather_pd(t.mean, idx, 8);
        const __m256d sd = _mm256_i32gather_pd(t.stdev, idx, 8);
        __m256d v = _mm256_add_pd(mu, _mm256_mul_pd(sd, _mm256_loadu_pd(z + i)));
        if (offset)
            v = _mm256_add_pd(v, _mm256_loadu_pd(offset + i));
        _mm256_storeu_pd(out + i, v);
    }
    scalar::vth(t, z + i, state + i, offset ? offset + i : nullptr, out + i, n - i);
}

__attribute__((target("avx2"))) ErrorCounts count_errors(const double *vth, const std::uint8_t *state,
                                                         const VrefTriple &v, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(v.va);
    const __m256d vb = _mm256_set1_pd(v.vb);
    const __m256d vc = _mm256_set1_pd(v.vc);
    const __m256i zero = _mm256_setzero_si256();
    const __m256i three = _mm256_set1_epi64x(3);
    const __m256i two = _mm256_set1_epi64x(2);
    ErrorCounts c;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        int packed;
        __builtin_memcpy(&packed, state + i, 4);
        const __m256i s = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256i prog_msb = _mm256_or_si256(_mm256_cmpeq_epi64(s, zero), _mm256_cmpeq_epi64(s, three));
        const __m256i prog_lsb = _mm256_cmpgt_epi64(two, s);
        const __m256d x = _mm256_loadu_pd(vth + i);
        const __m256d read_lsb = _mm256_cmp_pd(x, vb, _CMP_LT_OQ);
        const __m256d read_msb = _mm256_or_pd(_mm256_cmp_pd(x, va, _CMP_LT_OQ),
                                              _mm256_cmp_pd(x, vc, _CMP_NLT_UQ));
        const __m256d dm = _mm256_xor_pd(read_msb, _mm256_castsi256_pd(prog_msb));
        const __m256d dl = _mm256_xor_pd(read_lsb, _mm256_castsi256_pd(prog_lsb));
        c.msb += static_cast<unsigned>(__builtin_popcount(_mm256_movemask_pd(dm)));
        c.lsb += static_cast<unsigned>(__builtin_popcount(_mm256_movemask_pd(dl)));
    }
    const ErrorCounts tail = scalar::count_errors(vth + i, state + i, v, n - i);
    c.msb += tail.msb;
    c.lsb += tail.lsb;
    return c;
}

#else

void vth(const StateTable &t, const double *z, const std::uint8_t *state, const double *offset,
         double *out, std::size_t n)
{
    scalar::vth(t, z, state, offset, out, n);
}

ErrorCounts count_errors(const double *vth, const std::uint8_t *state, const VrefTriple &v,
                         std::size_t n)
{
    return scalar::count_errors(vth, state, v, n);
}

#endif

} // namespace nandsim::kernels::avx2
