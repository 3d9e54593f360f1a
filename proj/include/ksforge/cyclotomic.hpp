#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ksforge {

// Overflow-checked 64-bit integer arithmetic. Desk-scale workloads stay far
// below the bound; anything that would wrap throws instead of corrupting a
// verification verdict.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 multiplication overflow");
    return r;
}

/// Integer polynomial, coefficients ascending by degree, trailing zeros
/// stripped. Only the operations needed to build cyclotomic polynomials and
/// reduce by them are provided.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<std::int64_t> coeffs);

    /// x^k - 1
    static IntPoly x_pow_minus_one(std::uint32_t k);

    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    bool is_zero_poly() const { return coeffs_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    IntPoly multiply(const IntPoly& rhs) const;

    /// Exact division over the integers. Throws std::logic_error if the
    /// division leaves a remainder (that would indicate a bug, not bad input).
    IntPoly divide_exact(const IntPoly& divisor) const;

    bool operator==(const IntPoly&) const = default;

private:
    std::vector<std::int64_t> coeffs_;
};

/// Phi_L, the L-th cyclotomic polynomial, by exact integer division
/// Phi_L = (x^L - 1) / prod_{d | L, d < L} Phi_d. Memoized; thread-safe.
IntPoly cyclotomic_poly(std::uint32_t order);

/// Element of Z[zeta_L]: coeffs[i] is the integer coefficient of zeta_L^i,
/// where zeta_L = exp(2*pi*i/L). The representation is NOT canonical (e.g.
/// 1 + zeta_3 and -zeta_3^2 are the same value); value equality is decided
/// only through is_zero of a difference. Values are immutable and every
/// operation is pure, so CycInt is freely shareable across threads.
class CycInt {
public:
    /// Zero of the given order.
    explicit CycInt(std::uint32_t order);
    /// coeffs.size() must equal order.
    CycInt(std::uint32_t order, std::vector<std::int64_t> coeffs);

    /// zeta_L^k, exponent reduced mod L (negative k allowed).
    static CycInt root(std::uint32_t order, std::int64_t exponent);
    /// The rational integer v as an element of Z[zeta_L].
    static CycInt integer(std::uint32_t order, std::int64_t value);

    std::uint32_t order() const { return order_; }
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

    /// Complex conjugate: the coefficient at exponent i moves to (L-i) mod L.
    CycInt conj() const;

    /// Re-express in Z[zeta_M]; order() must divide M. Value unchanged.
    CycInt lifted(std::uint32_t new_order) const;

    /// Exact zero test: true iff sum coeffs[i] x^i is divisible by Phi_L,
    /// i.e. iff the represented complex number is exactly zero.
    bool is_zero() const;

    friend CycInt operator+(const CycInt& a, const CycInt& b);
    friend CycInt operator-(const CycInt& a, const CycInt& b);
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    CycInt operator-() const;

private:
    std::uint32_t order_;
    std::vector<std::int64_t> coeffs_;
};

/// is_zero(a - b). Orders must match.
bool value_equal(const CycInt& a, const CycInt& b);

/// <x, y> = sum_i x_i * conj(y_i). Lengths and orders must match.
CycInt inner_product(std::span<const CycInt> x, std::span<const CycInt> y);

}  // namespace ksforge
