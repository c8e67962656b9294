#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nflc/errors.hpp"

namespace nflc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, std::uint64_t exp) {
    BigInt result = 1;
    while (exp != 0) {
        if (exp & 1) result *= base;
        exp >>= 1;
        if (exp != 0) base *= base;
    }
    return result;
}

// Number of bits in |x|; 0 for x == 0.
inline unsigned bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

inline BigInt isqrt_ceil(const BigInt& x) {
    if (x <= 0) return 0;
    BigInt root = boost::multiprecision::sqrt(x);
    return root * root == x ? root : root + 1;
}

// Largest integer t >= 0 with t^k <= v, for rational v >= 0 and k >= 1.
inline BigInt iroot_floor(const BigRat& v, unsigned k) {
    if (k == 0) throw InvalidArgument("iroot_floor: k must be >= 1");
    if (v < 0) throw InvalidArgument("iroot_floor: negative radicand");
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    BigInt hi = 1;
    while (ipow(hi, k) * den <= num) hi <<= 1;
    BigInt lo = hi >> 1;
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) >> 1;
        if (ipow(mid, k) * den <= num)
            lo = mid;
        else
            hi = mid;
    }
    return ipow(lo, k) * den <= num ? lo : 0;
}

// Natural log, robust for values beyond double range. x must be positive.
inline double log_big(const BigInt& x) {
    const unsigned bits = bit_length(x);
    if (bits == 0) throw InvalidArgument("log_big: nonpositive argument");
    if (bits <= 512) return std::log(x.convert_to<double>());
    const BigInt top = x >> (bits - 64);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 64) * std::log(2.0);
}

// x mod p in [0, p), also for negative x.
inline std::uint64_t mod_u64(const BigInt& x, std::uint64_t p) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

inline BigInt bigint_from_decimal(const std::string& text) {
    if (text.empty()) throw InvalidArgument("empty decimal string");
    std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size()) throw InvalidArgument("bad decimal string: " + text);
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9') throw InvalidArgument("bad decimal string: " + text);
    return BigInt(text);
}

inline BigInt bigint_from_bytes(std::span<const std::uint8_t> bytes) {
    BigInt v = 0;
    for (std::uint8_t b : bytes) v = (v << 8) | b;
    return v;
}

// Big-endian, exactly `width` bytes; v must fit.
inline std::vector<std::uint8_t> bigint_to_bytes(const BigInt& v, std::size_t width) {
    std::vector<std::uint8_t> out(width, 0);
    BigInt t = v;
    for (std::size_t i = width; i-- > 0 && t != 0;) {
        out[i] = static_cast<std::uint8_t>((t & 0xff).convert_to<unsigned>());
        t >>= 8;
    }
    if (t != 0) throw Error(ErrorKind::internal, "bigint_to_bytes: value wider than requested width");
    return out;
}

}  // namespace nflc
