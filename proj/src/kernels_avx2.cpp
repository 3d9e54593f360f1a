// AVX2 variant of the residue-difference histogram. Compiled with -mavx2 in
// its own translation unit; the dispatcher only hands out this symbol when
// the CPU reports AVX2.
#include <immintrin.h>

#include <bit>
#include <cassert>

#include "ksforge/kernels.hpp"

namespace ksforge::kernels {

void diff_mod_histogram_avx2(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                             std::uint32_t g, std::span<std::uint32_t> counts) {
    assert(a.size() == b.size());
    assert(counts.size() == g);

    const std::size_t n = a.size();
    const std::size_t vec_end = n - n % 32;
    const __m256i vg = _mm256_set1_epi8(static_cast<char>(g));

    for (std::size_t base = 0; base < vec_end; base += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + base));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + base));
        // a - b wraps mod 256; where a < b (unsigned) the true residue needs +g,
        // and the double wrap cancels because both inputs are < g <= 255.
        const __m256i raw = _mm256_sub_epi8(va, vb);
        const __m256i a_ge_b = _mm256_cmpeq_epi8(_mm256_max_epu8(va, vb), va);
        const __m256i fixup = _mm256_andnot_si256(a_ge_b, vg);
        const __m256i diff = _mm256_add_epi8(raw, fixup);

        for (std::uint32_t r = 0; r < g; ++r) {
            const __m256i hits = _mm256_cmpeq_epi8(diff, _mm256_set1_epi8(static_cast<char>(r)));
            counts[r] += static_cast<std::uint32_t>(
                std::popcount(static_cast<std::uint32_t>(_mm256_movemask_epi8(hits))));
        }
    }

    if (vec_end < n)
        diff_mod_histogram_scalar(a.subspan(vec_end), b.subspan(vec_end), g,
                                  counts);
}

}  // namespace ksforge::kernels
