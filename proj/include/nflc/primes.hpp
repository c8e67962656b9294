#pragma once

// Totally split primes: detection via the factorization of the minimal
// polynomial mod p (a prime not dividing the discriminant is totally split
// iff m(x) has degree-many distinct roots mod p), enumeration, and the
// constructive converse: building a field in which prescribed primes split.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nflc/bigint.hpp"
#include "nflc/errors.hpp"
#include "nflc/modarith.hpp"
#include "nflc/number_field.hpp"
#include "nflc/polymod.hpp"

namespace nflc {

// One totally split rational prime with the roots of the minimal polynomial
// mod p, sorted ascending. Root j names the prime ideal realized as the pair
// (p, roots[j]); reduction modulo that ideal is evaluation at roots[j].
struct SplitPrime {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> roots;

    bool operator==(const SplitPrime&) const = default;
};

inline constexpr std::uint64_t kDefaultPrimeCeiling = std::uint64_t(1) << 31;
inline constexpr std::uint64_t kRootScanThreshold = std::uint64_t(1) << 20;

// All roots of the minimal polynomial mod p, sorted ascending. Exhaustive
// scan below the threshold, gcd with x^p - x plus deterministic splitting
// above it.
inline std::vector<std::uint64_t> roots_mod_p(const NumberField& field, std::uint64_t p) {
    if (!is_prime_u64(p)) throw InvalidPrime("roots_mod_p: modulus is not prime");
    const fp::Poly reduced = field.reduced_mod(p);
    std::vector<std::uint64_t> out =
        p < kRootScanThreshold ? fp::roots_by_scan(reduced, p) : fp::roots(reduced, p);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_totally_split(const NumberField& field, std::uint64_t p) {
    if (!is_prime_u64(p)) throw InvalidPrime("is_totally_split: input is not prime");
    if (mod_u64(field.discriminant(), p) == 0) return false;
    return roots_mod_p(field, p).size() == field.degree();
}

// The first `count` totally split primes >= start, ascending, each packaged
// with its roots.
inline std::vector<SplitPrime> next_split_primes(const NumberField& field, std::size_t count,
                                                 std::uint64_t start = 2,
                                                 std::uint64_t ceiling = kDefaultPrimeCeiling) {
    if (count == 0) throw InvalidArgument("next_split_primes: count must be >= 1");
    std::vector<SplitPrime> out;
    out.reserve(count);
    std::uint64_t p = next_prime_at_least(std::max<std::uint64_t>(start, 2));
    while (out.size() < count) {
        if (p > ceiling)
            throw SearchLimitExceeded("no totally split prime found below the search ceiling");
        if (mod_u64(field.discriminant(), p) != 0) {
            std::vector<std::uint64_t> roots = roots_mod_p(field, p);
            if (roots.size() == field.degree()) out.push_back(SplitPrime{p, std::move(roots)});
        }
        p = next_prime_at_least(p + 1);
    }
    return out;
}

// Checks that a SplitPrime is coherent with a field: p prime, p coprime to
// the discriminant, exactly degree-many sorted distinct roots, all genuine.
inline void validate_split_prime(const NumberField& field, const SplitPrime& sp) {
    if (!is_prime_u64(sp.p)) throw NotSplit("listed modulus is not prime");
    if (mod_u64(field.discriminant(), sp.p) == 0)
        throw NotSplit("prime divides the field discriminant");
    if (sp.roots.size() != field.degree())
        throw NotSplit("prime does not have degree-many roots listed");
    const fp::Poly reduced = field.reduced_mod(sp.p);
    for (std::size_t j = 0; j < sp.roots.size(); ++j) {
        if (sp.roots[j] >= sp.p) throw NotSplit("root out of range");
        if (j > 0 && sp.roots[j] <= sp.roots[j - 1]) throw NotSplit("roots not strictly ascending");
        if (fp::eval(reduced, sp.roots[j], sp.p) != 0)
            throw NotSplit("listed root does not satisfy the minimal polynomial");
    }
}

// Certificate for the prescribed-split-primes construction: a monic integer
// polynomial f of the requested degree, irreducible modulo aux_prime (hence
// over Z), such that every input prime is totally split in Q[x]/(f). All the
// ingredients needed to re-verify the construction are retained.
struct FieldConstructionCertificate {
    unsigned degree = 0;
    std::vector<BigInt> poly;                    // b_0 .. b_(degree-1), monic implied
    std::uint64_t aux_prime = 0;                 // the extra prime carrying irreducibility
    std::vector<std::uint64_t> aux_irreducible;  // g mod aux_prime, c_0 .. c_(degree-1), monic implied
    BigInt bezout_u1, bezout_u2;                 // u1 (q_1+...+q_n) + u2 q_(n+1) = 1
    std::vector<SplitPrime> split_witnesses;     // roots of f mod each input prime
};

namespace detail {

// First monic irreducible polynomial of the given degree mod p, iterating
// the free coefficients as base-p digits of k = 0, 1, 2, ...
inline std::vector<std::uint64_t> first_irreducible_poly(unsigned degree, std::uint64_t p) {
    fp::Poly f(degree + 1, 0);
    f.back() = 1;
    for (BigInt k = 0;; ++k) {
        BigInt rest = k;
        for (unsigned i = 0; i < degree; ++i) {
            f[i] = mod_u64(rest % p, p);
            rest /= p;
        }
        if (rest != 0) throw Error(ErrorKind::internal, "no irreducible polynomial found");
        if (fp::irreducible(f, p)) return {f.begin(), f.end() - 1};
    }
}

}  // namespace detail

// Constructs a monic degree-`degree` polynomial f, irreducible over Z, with
// every input prime totally split in the field it generates. Requires the
// primes to be pairwise distinct and each larger than the degree (so that
// 0, 1, ..., degree-1 are distinct residues mod each of them).
inline FieldConstructionCertificate construct_field(unsigned degree,
                                                    const std::vector<std::uint64_t>& primes) {
    if (degree < 2) throw InvalidArgument("construct_field: degree must be >= 2");
    if (primes.empty()) throw InvalidPrime("construct_field: need at least one prime");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime_u64(primes[i])) throw InvalidPrime("construct_field: input is not prime");
        if (primes[i] <= degree) throw InvalidPrime("construct_field: primes must exceed the degree");
        for (std::size_t j = 0; j < i; ++j)
            if (primes[i] == primes[j]) throw InvalidPrime("construct_field: duplicate prime");
    }

    FieldConstructionCertificate cert;
    cert.degree = degree;

    // auxiliary prime: smallest prime outside the input list (a monic
    // irreducible of any degree exists modulo every prime)
    std::uint64_t aux = 2;
    while (std::find(primes.begin(), primes.end(), aux) != primes.end())
        aux = next_prime_at_least(aux + 1);
    cert.aux_prime = aux;
    cert.aux_irreducible = detail::first_irreducible_poly(degree, aux);

    const std::size_t n = primes.size();
    std::vector<BigInt> all(primes.begin(), primes.end());
    all.push_back(aux);
    BigInt total = 1;
    for (const BigInt& p : all) total *= p;
    std::vector<BigInt> cofactor(n + 1);
    BigInt cofactor_sum = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        cofactor[i] = total / all[i];
        if (i < n) cofactor_sum += cofactor[i];
    }

    // extended Euclid on (q_1 + ... + q_n, q_(n+1))
    BigInt a = cofactor_sum, b = cofactor[n];
    BigInt x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b != 0) {
        BigInt q = a / b;
        BigInt t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a != 1) throw Error(ErrorKind::internal, "cofactor sum not coprime to the auxiliary cofactor");
    cert.bezout_u1 = x0;
    cert.bezout_u2 = y0;

    // w(x) = x (x-1) ... (x-degree+1); shared by all input primes since the
    // chosen residues are 0 .. degree-1 everywhere
    std::vector<BigInt> w{1};
    for (unsigned j = 0; j < degree; ++j) {
        std::vector<BigInt> next(w.size() + 1, 0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            next[i + 1] += w[i];
            next[i] -= BigInt(j) * w[i];
        }
        w = std::move(next);
    }

    // f = u1 (sum q_i) w + u2 q_(n+1) g_lift
    std::vector<BigInt> f(degree + 1, 0);
    const BigInt scale_w = cert.bezout_u1 * cofactor_sum;
    const BigInt scale_g = cert.bezout_u2 * cofactor[n];
    for (std::size_t i = 0; i <= degree; ++i) {
        f[i] = scale_w * w[i];
        f[i] += scale_g * (i == degree ? BigInt(1) : BigInt(cert.aux_irreducible[i]));
    }
    if (f[degree] != 1) throw Error(ErrorKind::internal, "constructed polynomial is not monic");
    cert.poly.assign(f.begin(), f.end() - 1);

    // split witnesses, recomputed from f itself
    for (std::uint64_t p : primes) {
        fp::Poly reduced(degree + 1);
        for (unsigned i = 0; i < degree; ++i) reduced[i] = mod_u64(cert.poly[i], p);
        reduced[degree] = 1;
        std::vector<std::uint64_t> roots =
            p < kRootScanThreshold ? fp::roots_by_scan(reduced, p) : fp::roots(reduced, p);
        std::sort(roots.begin(), roots.end());
        if (roots.size() != degree)
            throw Error(ErrorKind::internal, "constructed polynomial does not split as required");
        cert.split_witnesses.push_back(SplitPrime{p, std::move(roots)});
    }

    // irreducibility mod aux must have been preserved: f = g mod aux
    {
        fp::Poly check(degree + 1);
        for (unsigned i = 0; i < degree; ++i) check[i] = mod_u64(cert.poly[i], aux);
        check[degree] = 1 % aux;
        fp::Poly g(cert.aux_irreducible.begin(), cert.aux_irreducible.end());
        g.push_back(1);
        for (auto& c : g) c %= aux;
        fp::normalize(g);
        fp::normalize(check);
        if (check != g) throw Error(ErrorKind::internal, "constructed polynomial != g mod aux prime");
    }
    return cert;
}

// The number field generated by a certificate's polynomial.
inline FieldPtr field_from_certificate(const FieldConstructionCertificate& cert) {
    return NumberField::create(cert.poly);
}

}  // namespace nflc
