#include "ksforge/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace ksforge {

// ----------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::x_pow_minus_one(std::uint32_t k) {
    std::vector<std::int64_t> c(k + 1, 0);
    c[0] = -1;
    c[k] = 1;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::multiply(const IntPoly& rhs) const {
    if (is_zero_poly() || rhs.is_zero_poly()) return IntPoly();
    std::vector<std::int64_t> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] = checked_add(out[i + j], checked_mul(coeffs_[i], rhs.coeffs_[j]));
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
    if (divisor.is_zero_poly()) throw std::logic_error("IntPoly: division by zero polynomial");
    if (is_zero_poly()) return IntPoly();
    if (degree() < divisor.degree()) throw std::logic_error("IntPoly: inexact division (degree)");

    std::vector<std::int64_t> rem = coeffs_;
    const auto& d = divisor.coeffs_;
    const std::size_t dd = d.size() - 1;  // divisor degree
    const std::int64_t lead = d.back();
    std::vector<std::int64_t> quot(coeffs_.size() - dd, 0);

    for (std::size_t i = rem.size() - 1; i + 1 > dd; --i) {
        const std::int64_t c = rem[i];
        if (c == 0) continue;
        if (c % lead != 0) throw std::logic_error("IntPoly: inexact division (leading coefficient)");
        const std::int64_t q = c / lead;
        quot[i - dd] = q;
        for (std::size_t j = 0; j < d.size(); ++j)
            rem[i - dd + j] = checked_sub(rem[i - dd + j], checked_mul(q, d[j]));
    }
    for (std::int64_t c : rem)
        if (c != 0) throw std::logic_error("IntPoly: inexact division (nonzero remainder)");
    return IntPoly(std::move(quot));
}

// ------------------------------------------------------- cyclotomic_poly

namespace {

const IntPoly& cyclotomic_poly_locked(std::uint32_t order, std::map<std::uint32_t, IntPoly>& cache) {
    if (auto it = cache.find(order); it != cache.end()) return it->second;
    IntPoly phi;
    if (order == 1) {
        phi = IntPoly({-1, 1});  // x - 1
    } else {
        IntPoly den({1});
        for (std::uint32_t d = 1; d < order; ++d)
            if (order % d == 0) den = den.multiply(cyclotomic_poly_locked(d, cache));
        phi = IntPoly::x_pow_minus_one(order).divide_exact(den);
    }
    return cache.emplace(order, std::move(phi)).first->second;
}

}  // namespace

IntPoly cyclotomic_poly(std::uint32_t order) {
    if (order == 0) throw std::invalid_argument("cyclotomic_poly: order must be positive");
    static std::mutex mutex;
    static std::map<std::uint32_t, IntPoly> cache;
    std::lock_guard<std::mutex> lock(mutex);
    return cyclotomic_poly_locked(order, cache);
}

// ------------------------------------------------------------------ CycInt

CycInt::CycInt(std::uint32_t order) : order_(order), coeffs_(order, 0) {
    if (order == 0) throw std::invalid_argument("CycInt: order must be positive");
}

CycInt::CycInt(std::uint32_t order, std::vector<std::int64_t> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
    if (order == 0) throw std::invalid_argument("CycInt: order must be positive");
    if (coeffs_.size() != order)
        throw std::invalid_argument("CycInt: coefficient vector must have exactly `order` entries");
}

CycInt CycInt::root(std::uint32_t order, std::int64_t exponent) {
    CycInt r(order);
    const std::int64_t L = static_cast<std::int64_t>(order);
    r.coeffs_[static_cast<std::size_t>(((exponent % L) + L) % L)] = 1;
    return r;
}

CycInt CycInt::integer(std::uint32_t order, std::int64_t value) {
    CycInt r(order);
    r.coeffs_[0] = value;
    return r;
}

CycInt CycInt::conj() const {
    CycInt r(order_);
    for (std::uint32_t i = 0; i < order_; ++i) r.coeffs_[(order_ - i) % order_] = coeffs_[i];
    return r;
}

CycInt CycInt::lifted(std::uint32_t new_order) const {
    if (new_order == 0 || new_order % order_ != 0)
        throw std::invalid_argument("CycInt::lifted: target order must be a multiple of order()");
    const std::uint32_t stride = new_order / order_;
    CycInt r(new_order);
    for (std::uint32_t i = 0; i < order_; ++i) r.coeffs_[i * stride] = coeffs_[i];
    return r;
}

bool CycInt::is_zero() const {
    const IntPoly phi = cyclotomic_poly(order_);
    const auto& d = phi.coeffs();
    const std::size_t deg = d.size() - 1;

    std::vector<std::int64_t> rem = coeffs_;
    // Reduce modulo the monic Phi_L; the value is zero iff Phi_L divides the
    // representing polynomial, iff the remainder vanishes.
    for (std::size_t i = rem.size(); i-- > deg;) {
        const std::int64_t c = rem[i];
        if (c == 0) continue;
        rem[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            rem[i - deg + j] = checked_sub(rem[i - deg + j], checked_mul(c, d[j]));
    }
    const std::size_t limit = std::min(deg, rem.size());
    return std::all_of(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(limit),
                       [](std::int64_t c) { return c == 0; });
}

namespace {

void require_same_order(const CycInt& a, const CycInt& b, const char* op) {
    if (a.order() != b.order())
        throw std::invalid_argument(std::string(op) +
                                    ": operands have different orders; lift explicitly first");
}

}  // namespace

CycInt operator+(const CycInt& a, const CycInt& b) {
    require_same_order(a, b, "CycInt::add");
    std::vector<std::int64_t> c(a.order());
    for (std::uint32_t i = 0; i < a.order(); ++i) c[i] = checked_add(a.coeffs()[i], b.coeffs()[i]);
    return CycInt(a.order(), std::move(c));
}

CycInt operator-(const CycInt& a, const CycInt& b) {
    require_same_order(a, b, "CycInt::sub");
    std::vector<std::int64_t> c(a.order());
    for (std::uint32_t i = 0; i < a.order(); ++i) c[i] = checked_sub(a.coeffs()[i], b.coeffs()[i]);
    return CycInt(a.order(), std::move(c));
}

CycInt operator*(const CycInt& a, const CycInt& b) {
    require_same_order(a, b, "CycInt::mul");
    const std::uint32_t L = a.order();
    std::vector<std::int64_t> c(L, 0);
    for (std::uint32_t i = 0; i < L; ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::uint32_t j = 0; j < L; ++j) {
            if (b.coeffs()[j] == 0) continue;
            const std::uint32_t k = (i + j) % L;
            c[k] = checked_add(c[k], checked_mul(a.coeffs()[i], b.coeffs()[j]));
        }
    }
    return CycInt(L, std::move(c));
}

CycInt CycInt::operator-() const {
    std::vector<std::int64_t> c(order_);
    for (std::uint32_t i = 0; i < order_; ++i) c[i] = checked_sub(0, coeffs_[i]);
    return CycInt(order_, std::move(c));
}

bool value_equal(const CycInt& a, const CycInt& b) { return (a - b).is_zero(); }

CycInt inner_product(std::span<const CycInt> x, std::span<const CycInt> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner_product: vectors have different lengths");
    if (x.empty()) throw std::invalid_argument("inner_product: empty vectors");
    CycInt acc(x[0].order());
    for (std::size_t i = 0; i < x.size(); ++i) acc = acc + x[i] * y[i].conj();
    return acc;
}

}  // namespace ksforge
