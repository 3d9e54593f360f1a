#include "ksforge/shadamard.hpp"

#include <algorithm>
#include <stdexcept>

#include "ksforge/kernels.hpp"

namespace ksforge {

SHadamard::SHadamard(std::uint32_t n, std::uint32_t root_order, std::vector<std::uint8_t> exponents)
    : n_(n), root_order_(root_order), exponents_(std::move(exponents)) {
    if (n < 1) throw std::invalid_argument("SHadamard: order must be positive");
    if (root_order < 1) throw std::invalid_argument("SHadamard: root order must be positive");
    if (root_order > 255) throw std::invalid_argument("SHadamard: root order above 255 is unsupported");
    if (exponents_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("SHadamard: exponent count does not match n*n");
    for (std::uint8_t e : exponents_)
        if (e >= root_order) throw std::invalid_argument("SHadamard: exponent out of range [0, L)");
}

std::vector<CycInt> SHadamard::row_values(std::uint32_t i) const {
    std::vector<CycInt> out;
    out.reserve(n_);
    for (std::uint32_t j = 0; j < n_; ++j) out.push_back(CycInt::root(root_order_, at(i, j)));
    return out;
}

namespace {

// Inner product of two unimodular exponent rows: sum_j zeta^(a_j - b_j), i.e.
// the CycInt whose coefficient vector is the difference histogram.
CycInt exponent_inner_product(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                              std::uint32_t order) {
    std::vector<std::uint32_t> hist(order, 0);
    kernels::diff_mod_histogram(a, b, order, hist);
    std::vector<std::int64_t> coeffs(order);
    for (std::uint32_t r = 0; r < order; ++r) coeffs[r] = hist[r];
    return CycInt(order, std::move(coeffs));
}

std::vector<std::uint8_t> doubled_row(std::span<const std::uint8_t> row, std::uint32_t order) {
    std::vector<std::uint8_t> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = static_cast<std::uint8_t>((2u * row[j]) % order);
    return out;
}

}  // namespace

ShadReport verify_shadamard(const SHadamard& h) {
    const std::uint32_t n = h.n();
    const std::uint32_t L = h.root_order();
    ShadReport report;
    report.condition2_structural = true;

    std::vector<std::vector<std::uint8_t>> squared;
    squared.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) squared.push_back(doubled_row(h.row(i), L));

    for (std::uint32_t k = 0; k < n; ++k) {
        for (std::uint32_t l = k + 1; l < n; ++l) {
            if (!exponent_inner_product(h.row(k), h.row(l), L).is_zero())
                report.failures.push_back(ShadViolation{1, k, l});
        }
    }
    // Diagonal of condition (1) is n by unimodularity; checked anyway since
    // it is cheap and the report claims exactness.
    for (std::uint32_t k = 0; k < n; ++k) {
        const CycInt d = exponent_inner_product(h.row(k), h.row(k), L);
        if (!(d - CycInt::integer(L, n)).is_zero())
            report.failures.push_back(ShadViolation{1, k, k});
    }
    for (std::uint32_t k = 0; k < n; ++k) {
        for (std::uint32_t l = k + 1; l < n; ++l) {
            if (!exponent_inner_product(squared[k], squared[l], L).is_zero())
                report.failures.push_back(ShadViolation{3, k, l});
        }
    }

    std::sort(report.failures.begin(), report.failures.end(),
              [](const ShadViolation& a, const ShadViolation& b) {
                  return std::tie(a.condition, a.row_k, a.row_l) <
                         std::tie(b.condition, b.row_k, b.row_l);
              });
    report.pass = report.failures.empty();
    return report;
}

SHadamard from_gh(const GHMatrix& m) {
    if (m.g() <= 2)
        throw std::invalid_argument(
            "from_gh: requires g > 2 (for g <= 2, zeta_g^2 = 1, so the squared rows "
            "cannot be orthogonal)");
    const GhReport check = verify_gh(m);
    if (!check.pass)
        throw std::invalid_argument("from_gh: input matrix fails the GH difference property");
    return SHadamard(m.side(), m.g(), m.entries());
}

SHadamard dephase(const SHadamard& h) {
    const std::uint32_t n = h.n();
    const std::uint32_t L = h.root_order();
    std::vector<std::uint8_t> exps(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t a = h.at(i, j), b = h.at(0, j);
            exps[static_cast<std::size_t>(i) * n + j] =
                static_cast<std::uint8_t>(a >= b ? a - b : a + L - b);
        }
    return SHadamard(n, L, std::move(exps));
}

}  // namespace ksforge
