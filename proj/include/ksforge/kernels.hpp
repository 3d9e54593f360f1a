#pragma once

#include <cstdint>
#include <span>

namespace ksforge::kernels {

// counts[(a[i] - b[i]) mod g] += 1 for every i. Inputs are residues in
// [0, g), g in [2, 255], counts has g entries and is not cleared here.
//
// This is the inner loop of every difference-based check in the project:
// GH row-pair verification, search pruning, and the exponent-land inner
// products behind the S-Hadamard conditions all reduce to it.
using DiffHistFn = void (*)(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                            std::uint32_t g, std::span<std::uint32_t> counts);

// Reference implementation; always available.
void diff_mod_histogram_scalar(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                               std::uint32_t g, std::span<std::uint32_t> counts);

#if KSFORGE_HAVE_AVX2_KERNELS
// AVX2 variant; call only when cpu_has_avx2() is true.
void diff_mod_histogram_avx2(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                             std::uint32_t g, std::span<std::uint32_t> counts);
#endif

bool cpu_has_avx2();

enum class Backend { automatic, scalar, avx2 };

// Which implementation the dispatcher currently resolves to: "scalar" or "avx2".
const char* active_backend();

// Override the dispatcher (used by the equivalence tests). Selecting avx2 on
// a CPU without it throws std::runtime_error.
void set_backend(Backend backend);

// Dispatched entry point.
void diff_mod_histogram(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                        std::uint32_t g, std::span<std::uint32_t> counts);

}  // namespace ksforge::kernels
