#include "ksforge/kernels.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>

namespace ksforge::kernels {

void diff_mod_histogram_scalar(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                               std::uint32_t g, std::span<std::uint32_t> counts) {
    assert(a.size() == b.size());
    assert(counts.size() == g);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint32_t av = a[i];
        const std::uint32_t bv = b[i];
        counts[av >= bv ? av - bv : av + g - bv]++;
    }
}

bool cpu_has_avx2() {
#if KSFORGE_HAVE_AVX2_KERNELS
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

DiffHistFn resolve(Backend backend) {
#if KSFORGE_HAVE_AVX2_KERNELS
    if (backend == Backend::avx2 || (backend == Backend::automatic && cpu_has_avx2()))
        return diff_mod_histogram_avx2;
#else
    (void)backend;
#endif
    return diff_mod_histogram_scalar;
}

std::atomic<DiffHistFn> g_dispatch{nullptr};

DiffHistFn dispatch() {
    DiffHistFn fn = g_dispatch.load(std::memory_order_relaxed);
    if (!fn) {
        fn = resolve(Backend::automatic);
        g_dispatch.store(fn, std::memory_order_relaxed);
    }
    return fn;
}

}  // namespace

const char* active_backend() {
    return dispatch() == diff_mod_histogram_scalar ? "scalar" : "avx2";
}

void set_backend(Backend backend) {
    if (backend == Backend::avx2 && !cpu_has_avx2())
        throw std::runtime_error("kernels: avx2 backend requested but the CPU does not support it");
    g_dispatch.store(resolve(backend), std::memory_order_relaxed);
}

void diff_mod_histogram(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                        std::uint32_t g, std::span<std::uint32_t> counts) {
    dispatch()(a, b, g, counts);
}

}  // namespace ksforge::kernels
