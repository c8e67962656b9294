#pragma once

// Dense univariate polynomial arithmetic over F_p, p prime, coefficients in
// machine words. Degrees stay tiny here (bounded by the field degree), so
// schoolbook everything.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nflc/errors.hpp"
#include "nflc/modarith.hpp"

namespace nflc::fp {

// coeffs[i] is the coefficient of x^i; normalized means no trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline void normalize(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::uint64_t av = i < a.size() ? a[i] : 0;
        const std::uint64_t bv = i < b.size() ? b[i] : 0;
        out[i] = submod(av, bv, p);
    }
    normalize(out);
    return out;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], p), p);
    }
    normalize(out);
    return out;
}

inline Poly rem(Poly a, const Poly& b, std::uint64_t p) {
    if (b.empty()) throw Error(ErrorKind::internal, "poly rem by zero");
    const std::uint64_t lead_inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t q = mulmod(a.back(), lead_inv, p);
        if (q != 0) {
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = submod(a[shift + i], mulmod(q, b[i], p), p);
        }
        a.pop_back();
        normalize(a);
        if (a.size() < b.size()) break;
    }
    normalize(a);
    return a;
}

inline Poly monic(Poly a, std::uint64_t p) {
    normalize(a);
    if (a.empty() || a.back() == 1) return a;
    const std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

inline std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p), a[i], p);
    return acc;
}

// base^exp mod (f, p)
inline Poly powmod_poly(Poly base, std::uint64_t exp, const Poly& f, std::uint64_t p) {
    Poly result{1};
    base = rem(std::move(base), f, p);
    while (exp != 0) {
        if (exp & 1) result = rem(mul(result, base, p), f, p);
        exp >>= 1;
        if (exp != 0) base = rem(mul(base, base, p), f, p);
    }
    return result;
}

// x^(p^k) mod (f, p), by iterating the Frobenius power map.
inline Poly frobenius_power(unsigned k, const Poly& f, std::uint64_t p) {
    Poly h{0, 1};
    for (unsigned i = 0; i < k; ++i) h = powmod_poly(std::move(h), p, f, p);
    return h;
}

// Rabin test: monic f of degree d is irreducible mod p iff x^(p^d) = x mod f
// and gcd(x^(p^(d/q)) - x, f) = 1 for every prime q dividing d.
inline bool irreducible(const Poly& f, std::uint64_t p) {
    const int d = degree(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    std::vector<unsigned> prime_divisors;
    unsigned rest = static_cast<unsigned>(d);
    for (unsigned q = 2; q * q <= rest; ++q)
        if (rest % q == 0) {
            prime_divisors.push_back(q);
            while (rest % q == 0) rest /= q;
        }
    if (rest > 1) prime_divisors.push_back(rest);

    const Poly x{0, 1};
    for (unsigned q : prime_divisors) {
        Poly h = frobenius_power(static_cast<unsigned>(d) / q, f, p);
        if (gcd(sub(h, x, p), f, p) != Poly{1}) return false;
    }
    Poly h = frobenius_power(static_cast<unsigned>(d), f, p);
    return sub(h, x, p).empty();
}

// Exact quotient g / d (d divides g), made monic.
inline Poly quotient(const Poly& g, const Poly& d, std::uint64_t p) {
    Poly q(g.size() - d.size() + 1, 0);
    Poly rest = g;
    const std::uint64_t lead_inv = invmod(d.back(), p);
    while (rest.size() >= d.size()) {
        const std::size_t shift = rest.size() - d.size();
        const std::uint64_t c = mulmod(rest.back(), lead_inv, p);
        q[shift] = c;
        for (std::size_t i = 0; i < d.size(); ++i)
            rest[shift + i] = submod(rest[shift + i], mulmod(c, d[i], p), p);
        normalize(rest);
        if (rest.empty()) break;
    }
    normalize(q);
    return q;
}

// All roots of f in F_p (each once), unsorted.
inline std::vector<std::uint64_t> roots(const Poly& f_in, std::uint64_t p) {
    std::vector<std::uint64_t> out;
    Poly f = monic(f_in, p);
    if (degree(f) <= 0) return out;
    if (p == 2) {
        if (eval(f, 0, 2) == 0) out.push_back(0);
        if (eval(f, 1, 2) == 0) out.push_back(1);
        return out;
    }
    // radical linear part: gcd(f, x^p - x)
    Poly xp = powmod_poly(Poly{0, 1}, p, f, p);
    Poly g = gcd(sub(xp, Poly{0, 1}, p), f, p);
    if (g[0] == 0 && degree(g) >= 1) {  // factor x
        out.push_back(0);
        g = quotient(g, Poly{0, 1}, p);
    }

    // split g into linear factors with deterministic shifts
    std::vector<Poly> stack;
    if (degree(g) >= 1) stack.push_back(std::move(g));
    while (!stack.empty()) {
        Poly cur = std::move(stack.back());
        stack.pop_back();
        const int d = degree(cur);
        if (d == 1) {
            out.push_back(submod(0, cur[0], p));
            continue;
        }
        for (std::uint64_t shift = 0;; ++shift) {
            if (shift >= p) throw Error(ErrorKind::internal, "root splitting exhausted all shifts");
            Poly h = powmod_poly(Poly{shift, 1}, (p - 1) / 2, cur, p);
            h = sub(h, Poly{1}, p);
            Poly d1 = gcd(h, cur, p);
            if (degree(d1) > 0 && degree(d1) < d) {
                stack.push_back(quotient(cur, d1, p));
                stack.push_back(std::move(d1));
                break;
            }
        }
    }
    return out;
}

// Exhaustive root scan, usable as an independent oracle for small p.
inline std::vector<std::uint64_t> roots_by_scan(const Poly& f, std::uint64_t p) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < p; ++x)
        if (eval(f, x, p) == 0) out.push_back(x);
    return out;
}

}  // namespace nflc::fp
