#pragma once

// Exact arithmetic in the order Z[alpha] of a number field K = Q(alpha),
// where alpha is a root of a monic irreducible integer polynomial. Elements
// are integer coefficient vectors in the power basis 1, alpha, ...,
// alpha^(degree-1); products are reduced through the minimal polynomial.
//
// The field also carries the two quantities every bound in this library
// rests on: the discriminant (to recognize admissible primes) and the
// Hadamard-style constant bounding |N(y)| for coefficient-boxed y.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "nflc/bigint.hpp"
#include "nflc/errors.hpp"
#include "nflc/modarith.hpp"
#include "nflc/polymod.hpp"

namespace nflc {

namespace detail {

// Fraction-free Gaussian elimination (Bareiss). Exact over the integers,
// O(n^3) big-integer operations; fine for the tiny matrices used here.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && a[pivot][k] == 0) ++pivot;
            if (pivot == n) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Resultant of f and g (ascending coefficients) via the Sylvester matrix.
inline BigInt resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
    const std::size_t n = f.size() - 1;
    const std::size_t m = g.size() - 1;
    const std::size_t size = n + m;
    std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) syl[i][i + k] = f[n - k];
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= m; ++k) syl[m + j][j + k] = g[m - k];
    return bareiss_determinant(std::move(syl));
}

}  // namespace detail

enum class IrreducibilityPolicy {
    require_certificate,  // reject unless some small prime certifies irreducibility
    allow_unproven,       // accept after the cheap checks; field is marked uncertified
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
   public:
    // coeffs are b_0 .. b_(d-1) of the monic minimal polynomial
    // b_0 + b_1 x + ... + x^d, d >= 2.
    //
    // Validation: the polynomial must be squarefree (nonzero discriminant),
    // must have no rational root, and (under require_certificate) must be
    // irreducible modulo one of the first 50 primes not dividing the
    // discriminant. Some irreducible polynomials (x^4 + 1 is the classic
    // one) are reducible modulo every prime and need allow_unproven.
    explicit NumberField(std::vector<BigInt> coeffs,
                         IrreducibilityPolicy policy = IrreducibilityPolicy::require_certificate)
        : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 2)
            throw InvalidArgument("minimal polynomial must have degree >= 2");
        coeff_bound_ = 0;
        for (const BigInt& b : coeffs_) coeff_bound_ = std::max(coeff_bound_, BigInt(boost::multiprecision::abs(b)));
        compute_discriminant();
        check_rational_roots();
        find_certificate(policy);
        compute_norm_bound_constant();
    }

    static FieldPtr create(std::vector<BigInt> coeffs,
                           IrreducibilityPolicy policy = IrreducibilityPolicy::require_certificate) {
        return std::make_shared<const NumberField>(std::move(coeffs), policy);
    }

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size()); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& coeff_bound() const { return coeff_bound_; }
    const BigInt& discriminant() const { return disc_; }

    // d^(d/2) (1+S)^((d-1)d/2), rounded up to an integer when d is odd, so it
    // stays an upper bound for Hadamard's estimate of |det| of the
    // multiplication matrix.
    const BigInt& norm_bound_constant() const { return c_alpha_; }

    // Bound on |N(y)| over all y whose coefficients lie strictly inside
    // (-box, box): norm_bound_constant * (box-1)^degree.
    BigInt norm_bound(const BigInt& box) const {
        if (box < 1) throw InvalidArgument("norm_bound: box must be >= 1");
        return c_alpha_ * ipow(box - 1, degree());
    }

    // Prime certifying irreducibility mod p, or 0 if accepted unproven.
    std::uint64_t certificate_prime() const { return certificate_prime_; }
    bool irreducibility_certified() const { return certificate_prime_ != 0; }

    // m(x) at an integer point.
    BigInt eval(const BigInt& x) const {
        BigInt acc = 1;  // leading coefficient
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    // Minimal polynomial reduced mod p (monic of the same degree).
    fp::Poly reduced_mod(std::uint64_t p) const {
        fp::Poly out(coeffs_.size() + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = mod_u64(coeffs_[i], p);
        out.back() = 1 % p;
        return out;
    }

    bool operator==(const NumberField& other) const { return coeffs_ == other.coeffs_; }
    bool operator!=(const NumberField& other) const { return !(*this == other); }

   private:
    void compute_discriminant() {
        const std::size_t d = coeffs_.size();
        std::vector<BigInt> f = coeffs_;
        f.push_back(1);
        std::vector<BigInt> df(d);
        for (std::size_t i = 1; i <= d; ++i) df[i - 1] = BigInt(i) * f[i];
        const BigInt res = detail::resultant(f, df);
        disc_ = (d * (d - 1) / 2) % 2 == 0 ? res : -res;
        if (disc_ == 0) throw ZeroDiscriminant("minimal polynomial is not squarefree");
    }

    // Any rational root of a monic integer polynomial is an integer dividing
    // b_0. Divisors are enumerated by trial division up to 10^6, which is
    // complete for |b_0| <= 10^12; the mod-p certificate closes the gap for
    // larger constant terms.
    void check_rational_roots() {
        if (coeffs_[0] == 0) throw NotIrreducible("x divides the minimal polynomial");
        const BigInt b0 = boost::multiprecision::abs(coeffs_[0]);
        std::vector<BigInt> divisors{1};
        for (BigInt d = 2; d * d <= b0 && d <= 1000000; ++d)
            if (b0 % d == 0) {
                divisors.push_back(d);
                divisors.push_back(b0 / d);
            }
        divisors.push_back(b0);
        for (const BigInt& d : divisors) {
            if (eval(d) == 0 || eval(-d) == 0)
                throw NotIrreducible("minimal polynomial has rational root");
        }
    }

    void find_certificate(IrreducibilityPolicy policy) {
        std::uint64_t p = 2;
        for (unsigned tried = 0; tried < 50; p = next_prime_at_least(p + 1)) {
            if (mod_u64(disc_, p) == 0) continue;
            ++tried;
            if (fp::irreducible(reduced_mod(p), p)) {
                certificate_prime_ = p;
                return;
            }
        }
        if (policy == IrreducibilityPolicy::require_certificate)
            throw NotIrreducible(
                "no irreducibility certificate among the first 50 admissible primes; "
                "construct with allow_unproven to accept anyway");
        certificate_prime_ = 0;
    }

    void compute_norm_bound_constant() {
        const unsigned d = degree();
        const std::uint64_t e = static_cast<std::uint64_t>(d - 1) * d / 2;
        const BigInt base = ipow(1 + coeff_bound_, e);
        if (d % 2 == 0) {
            c_alpha_ = ipow(BigInt(d), d / 2) * base;
        } else {
            c_alpha_ = isqrt_ceil(ipow(BigInt(d), d) * base * base);
        }
    }

    std::vector<BigInt> coeffs_;
    BigInt coeff_bound_;
    BigInt c_alpha_;
    BigInt disc_;
    std::uint64_t certificate_prime_ = 0;
};

// An element of Z[alpha], held as its power-basis coefficient vector.
// Immutable value; all operations are pure.
class AlgebraicInt {
   public:
    AlgebraicInt(FieldPtr field, std::vector<BigInt> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (!field_) throw InvalidArgument("AlgebraicInt requires a field");
        if (coeffs_.size() != field_->degree())
            throw InvalidArgument("coefficient vector length must equal the field degree");
    }

    static AlgebraicInt zero(FieldPtr field) {
        std::vector<BigInt> c(field->degree(), 0);
        return AlgebraicInt(std::move(field), std::move(c));
    }
    static AlgebraicInt one(FieldPtr field) {
        std::vector<BigInt> c(field->degree(), 0);
        c[0] = 1;
        return AlgebraicInt(std::move(field), std::move(c));
    }
    static AlgebraicInt generator(FieldPtr field) {
        std::vector<BigInt> c(field->degree(), 0);
        c[1] = 1;
        return AlgebraicInt(std::move(field), std::move(c));
    }

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const FieldPtr& field() const { return field_; }

    AlgebraicInt operator+(const AlgebraicInt& other) const {
        require_same_field(other);
        std::vector<BigInt> out(coeffs_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] + other.coeffs_[i];
        return AlgebraicInt(field_, std::move(out));
    }

    AlgebraicInt operator-(const AlgebraicInt& other) const {
        require_same_field(other);
        std::vector<BigInt> out(coeffs_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] - other.coeffs_[i];
        return AlgebraicInt(field_, std::move(out));
    }

    AlgebraicInt operator-() const {
        std::vector<BigInt> out(coeffs_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coeffs_[i];
        return AlgebraicInt(field_, std::move(out));
    }

    // Multiplication by alpha: shift the coefficient vector and fold the
    // overflowing top coefficient back through the minimal polynomial,
    //   w*alpha = -b_0 w_(d-1) + sum_i (w_(i-1) - b_i w_(d-1)) alpha^i.
    AlgebraicInt times_generator() const {
        const auto& b = field_->coeffs();
        const std::size_t d = coeffs_.size();
        const BigInt& top = coeffs_[d - 1];
        std::vector<BigInt> out(d);
        out[0] = -b[0] * top;
        for (std::size_t i = 1; i < d; ++i) out[i] = coeffs_[i - 1] - b[i] * top;
        return AlgebraicInt(field_, std::move(out));
    }

    AlgebraicInt operator*(const AlgebraicInt& other) const {
        require_same_field(other);
        const std::size_t d = coeffs_.size();
        std::vector<BigInt> acc(d, 0);
        AlgebraicInt power = *this;
        for (std::size_t j = 0; j < d; ++j) {
            if (j != 0) power = power.times_generator();
            const BigInt& c = other.coeffs_[j];
            if (c != 0)
                for (std::size_t i = 0; i < d; ++i) acc[i] += c * power.coeffs_[i];
        }
        return AlgebraicInt(field_, std::move(acc));
    }

    // Same product, by schoolbook polynomial multiplication followed by
    // explicit division by the (monic) minimal polynomial. Exists so the two
    // reduction routes can be checked against each other.
    AlgebraicInt mul_via_reduction(const AlgebraicInt& other) const {
        require_same_field(other);
        const std::size_t d = coeffs_.size();
        std::vector<BigInt> prod(2 * d - 1, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) prod[i + j] += coeffs_[i] * other.coeffs_[j];
        const auto& b = field_->coeffs();
        for (std::size_t k = 2 * d - 2; k >= d; --k) {
            const BigInt c = prod[k];
            if (c != 0)
                for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= c * b[i];
            prod[k] = 0;
        }
        prod.resize(d);
        return AlgebraicInt(field_, std::move(prod));
    }

    // Field norm: determinant of the multiplication-by-this matrix in the
    // power basis, evaluated exactly.
    BigInt norm() const {
        const std::size_t d = coeffs_.size();
        std::vector<std::vector<BigInt>> mat(d, std::vector<BigInt>(d));
        AlgebraicInt power = *this;
        for (std::size_t j = 0; j < d; ++j) {
            if (j != 0) power = power.times_generator();
            for (std::size_t i = 0; i < d; ++i) mat[i][j] = power.coeffs_[i];
        }
        return detail::bareiss_determinant(std::move(mat));
    }

    bool operator==(const AlgebraicInt& other) const {
        return *field_ == *other.field_ && coeffs_ == other.coeffs_;
    }
    bool operator!=(const AlgebraicInt& other) const { return !(*this == other); }

   private:
    void require_same_field(const AlgebraicInt& other) const {
        if (field_ != other.field_ && *field_ != *other.field_)
            throw FieldMismatch("operands belong to different number fields");
    }

    FieldPtr field_;
    std::vector<BigInt> coeffs_;
};

inline AlgebraicInt operator*(const BigInt& scalar, const AlgebraicInt& x) {
    std::vector<BigInt> out(x.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scalar * x.coeffs()[i];
    return AlgebraicInt(x.field(), std::move(out));
}

}  // namespace nflc
