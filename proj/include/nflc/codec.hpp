#pragma once

// Encoding and erasure decoding.
//
// A message is a locality x (depth+1) matrix of base-radix digits; column-
// stacking the digits of row i gives the coefficient u_i < radix^(depth+1),
// and the encoded element is sum_i u_i alpha^i (top power-basis coefficient
// forced to zero). A codeword stores, for each split prime p (a "group") and
// each root beta of the minimal polynomial mod p (a "slot"), the residue
// sum_i u_i beta^i mod p, together with an erasure mask.
//
// Repair paths:
//   * local_recover: one slot from the other `locality` slots of its group,
//     by Lagrange interpolation at the group's roots over F_p.
//   * global_decode: any group with >= locality present slots yields the
//     coefficients mod its p; groups whose modulus product exceeds
//     radix^(depth+1) are combined by CRT. Erasure-only: every inconsistency
//     is an error, nothing is silently corrected.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nflc/bigint.hpp"
#include "nflc/code_params.hpp"
#include "nflc/errors.hpp"
#include "nflc/modarith.hpp"

namespace nflc {

class MessagePoly {
   public:
    MessagePoly(unsigned rows, unsigned cols)
        : rows_(rows), cols_(cols), digits_(static_cast<std::size_t>(rows) * cols, 0) {
        if (rows == 0 || cols == 0) throw InvalidArgument("MessagePoly: empty digit matrix");
    }

    static MessagePoly zero(const CodeSpec& spec) {
        return MessagePoly(spec.locality(), spec.depth() + 1);
    }

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    const BigInt& digit(unsigned i, unsigned j) const { return digits_[index_of(i, j)]; }
    void set_digit(unsigned i, unsigned j, BigInt v) { digits_[index_of(i, j)] = std::move(v); }

    // u_i = sum_j digit(i, j) radix^j
    std::vector<BigInt> coefficients(const BigInt& radix) const {
        std::vector<BigInt> out(rows_);
        for (unsigned i = 0; i < rows_; ++i) {
            BigInt acc = 0;
            for (unsigned j = cols_; j-- > 0;) acc = acc * radix + digit(i, j);
            out[i] = std::move(acc);
        }
        return out;
    }

    static MessagePoly from_coefficients(const std::vector<BigInt>& coeffs, const BigInt& radix,
                                         unsigned cols) {
        MessagePoly msg(static_cast<unsigned>(coeffs.size()), cols);
        const BigInt modulus = ipow(radix, cols);
        for (unsigned i = 0; i < msg.rows_; ++i) {
            if (coeffs[i] < 0 || coeffs[i] >= modulus)
                throw InvalidArgument("coefficient outside the message box");
            BigInt rest = coeffs[i];
            for (unsigned j = 0; j < cols; ++j) {
                msg.set_digit(i, j, rest % radix);
                rest /= radix;
            }
        }
        return msg;
    }

    // Enumeration index: sum_i u_i * coeff_modulus^i.
    BigInt index(const CodeSpec& spec) const {
        BigInt acc = 0;
        const std::vector<BigInt> u = coefficients(spec.radix());
        for (unsigned i = rows_; i-- > 0;) acc = acc * spec.coeff_modulus() + u[i];
        return acc;
    }

    static MessagePoly from_index(const CodeSpec& spec, const BigInt& value) {
        if (value < 0 || value >= spec.code_size())
            throw InvalidArgument("message index out of range");
        std::vector<BigInt> u(spec.locality());
        BigInt rest = value;
        for (unsigned i = 0; i < spec.locality(); ++i) {
            u[i] = rest % spec.coeff_modulus();
            rest /= spec.coeff_modulus();
        }
        return from_coefficients(u, spec.radix(), spec.depth() + 1);
    }

    void validate_for(const CodeSpec& spec) const {
        if (rows_ != spec.locality() || cols_ != spec.depth() + 1)
            throw InvalidArgument("message shape does not match the spec");
        for (const BigInt& d : digits_)
            if (d < 0 || d >= spec.radix()) throw InvalidArgument("digit outside [0, radix)");
    }

    bool operator==(const MessagePoly&) const = default;

   private:
    std::size_t index_of(unsigned i, unsigned j) const {
        if (i >= rows_ || j >= cols_) throw InvalidArgument("digit index out of range");
        return static_cast<std::size_t>(i) * cols_ + j;
    }

    unsigned rows_, cols_;
    std::vector<BigInt> digits_;
};

// groups x (locality+1) residue matrix with an erasure mask. Erased entries
// are stored as zero so equal codewords compare equal bytewise.
class Codeword {
   public:
    Codeword(unsigned groups, unsigned width)
        : groups_(groups),
          width_(width),
          symbols_(static_cast<std::size_t>(groups) * width, 0),
          present_(static_cast<std::size_t>(groups) * width, 1) {
        if (groups == 0 || width == 0) throw InvalidArgument("Codeword: empty shape");
    }

    unsigned groups() const { return groups_; }
    unsigned width() const { return width_; }

    std::uint64_t symbol(unsigned g, unsigned j) const { return symbols_[index_of(g, j)]; }
    bool present(unsigned g, unsigned j) const { return present_[index_of(g, j)] != 0; }

    void set_symbol(unsigned g, unsigned j, std::uint64_t v) {
        const std::size_t k = index_of(g, j);
        symbols_[k] = v;
        present_[k] = 1;
    }

    void erase(unsigned g, unsigned j) {
        const std::size_t k = index_of(g, j);
        symbols_[k] = 0;
        present_[k] = 0;
    }

    unsigned present_in_group(unsigned g) const {
        unsigned count = 0;
        for (unsigned j = 0; j < width_; ++j)
            if (present(g, j)) ++count;
        return count;
    }

    bool full() const {
        for (unsigned char f : present_)
            if (!f) return false;
        return true;
    }

    bool operator==(const Codeword&) const = default;

   private:
    std::size_t index_of(unsigned g, unsigned j) const {
        if (g >= groups_ || j >= width_) throw InvalidArgument("codeword position out of range");
        return static_cast<std::size_t>(g) * width_ + j;
    }

    unsigned groups_, width_;
    std::vector<std::uint64_t> symbols_;
    std::vector<unsigned char> present_;
};

namespace detail {

// Value at x of the degree < k polynomial interpolating (points[i], values[i]).
inline std::uint64_t lagrange_eval(std::span<const std::uint64_t> points,
                                   std::span<const std::uint64_t> values, std::uint64_t x,
                                   std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::uint64_t num = 1, den = 1;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            num = mulmod(num, submod(x, points[j], p), p);
            den = mulmod(den, submod(points[i], points[j], p), p);
        }
        acc = addmod(acc, mulmod(values[i], mulmod(num, invmod(den, p), p), p), p);
    }
    return acc;
}

inline std::uint64_t lagrange_eval_point(const std::vector<std::uint64_t>& poly, std::uint64_t x,
                                         std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p), poly[i], p);
    return acc;
}

// Coefficients of the interpolating polynomial (ascending, exactly k of them).
inline std::vector<std::uint64_t> interpolate_coeffs(std::span<const std::uint64_t> points,
                                                     std::span<const std::uint64_t> values,
                                                     std::uint64_t p) {
    const std::size_t k = points.size();
    // master = prod (x - points[i])
    std::vector<std::uint64_t> master(k + 1, 0);
    master[0] = 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j-- > 0;) {
            master[j + 1] = addmod(master[j + 1], master[j], p);
            master[j] = mulmod(master[j], submod(0, points[i], p), p);
        }
    }
    std::vector<std::uint64_t> coeffs(k, 0);
    std::vector<std::uint64_t> q(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        // q = master / (x - points[i]) by synthetic division
        std::uint64_t carry = master[k];
        for (std::size_t j = k; j-- > 0;) {
            q[j] = carry;
            carry = addmod(master[j], mulmod(carry, points[i], p), p);
        }
        const std::uint64_t scale =
            mulmod(values[i], invmod(lagrange_eval_point(q, points[i], p), p), p);
        for (std::size_t j = 0; j < k; ++j)
            coeffs[j] = addmod(coeffs[j], mulmod(scale, q[j], p), p);
    }
    return coeffs;
}

}  // namespace detail

namespace detail {

// Residue computation alone, without the goodness gate; used by encode()
// and by the exhaustive analyses (which may probe non-good specs).
inline Codeword encode_raw(const CodeSpec& spec, const MessagePoly& msg) {
    const std::vector<BigInt> u = msg.coefficients(spec.radix());
    Codeword cw(spec.group_count(), spec.group_width());
    for (unsigned g = 0; g < spec.group_count(); ++g) {
        const SplitPrime& sp = spec.primes()[g];
        std::vector<std::uint64_t> u_mod(u.size());
        for (std::size_t t = 0; t < u.size(); ++t) u_mod[t] = mod_u64(u[t], sp.p);
        for (unsigned j = 0; j < spec.group_width(); ++j) {
            std::uint64_t acc = 0;
            for (std::size_t t = u_mod.size(); t-- > 0;)
                acc = addmod(mulmod(acc, sp.roots[j], sp.p), u_mod[t], sp.p);
            cw.set_symbol(g, j, acc);
        }
    }
    return cw;
}

}  // namespace detail

inline Codeword encode(const CodeSpec& spec, const MessagePoly& msg) {
    if (!spec.good()) throw NotGoodCode("encoding requires a good split code");
    msg.validate_for(spec);
    return detail::encode_raw(spec, msg);
}

// Recovers the symbol of (group, slot) from the other `locality` slots of the
// group, all of which must be present.
inline std::uint64_t local_recover(const CodeSpec& spec, const Codeword& cw, unsigned group,
                                   unsigned slot) {
    if (group >= spec.group_count() || slot >= spec.group_width())
        throw InvalidArgument("local_recover: position out of range");
    const SplitPrime& sp = spec.primes()[group];
    std::vector<std::uint64_t> points, values;
    points.reserve(spec.locality());
    values.reserve(spec.locality());
    for (unsigned j = 0; j < spec.group_width(); ++j) {
        if (j == slot) continue;
        if (!cw.present(group, j)) continue;
        points.push_back(sp.roots[j]);
        values.push_back(cw.symbol(group, j));
    }
    if (points.size() < spec.locality())
        throw InsufficientLocalData("fewer than locality-many helper slots present in the group");
    return detail::lagrange_eval(points, values, sp.roots[slot], sp.p);
}

// Erasure decoding across groups. Groups with at least `locality` present
// slots are solved (using the first `locality` present slots ascending;
// further present slots must be consistent). If the solved groups' modulus
// product exceeds radix^(depth+1), the coefficients are combined by CRT,
// checked against the message box, and the re-encoded word must agree with
// every present symbol.
inline MessagePoly global_decode(const CodeSpec& spec, const Codeword& cw) {
    if (!spec.good()) throw NotGoodCode("decoding requires a good split code");
    if (cw.groups() != spec.group_count() || cw.width() != spec.group_width())
        throw InvalidArgument("codeword shape does not match the spec");

    struct SolvedGroup {
        unsigned group;
        std::vector<std::uint64_t> coeffs;  // u_t mod p
    };
    std::vector<SolvedGroup> solved;
    BigInt modulus_product = 1;
    for (unsigned g = 0; g < spec.group_count(); ++g) {
        const SplitPrime& sp = spec.primes()[g];
        std::vector<std::uint64_t> points, values, check_points, check_values;
        for (unsigned j = 0; j < spec.group_width(); ++j) {
            if (!cw.present(g, j)) continue;
            if (points.size() < spec.locality()) {
                points.push_back(sp.roots[j]);
                values.push_back(cw.symbol(g, j));
            } else {
                check_points.push_back(sp.roots[j]);
                check_values.push_back(cw.symbol(g, j));
            }
        }
        if (points.size() < spec.locality()) continue;
        std::vector<std::uint64_t> coeffs = detail::interpolate_coeffs(points, values, sp.p);
        for (std::size_t t = 0; t < check_points.size(); ++t) {
            if (detail::lagrange_eval_point(coeffs, check_points[t], sp.p) != check_values[t])
                throw Inconsistent("spare slot disagrees with its group's interpolation");
        }
        modulus_product *= sp.p;
        solved.push_back(SolvedGroup{g, std::move(coeffs)});
    }

    if (modulus_product <= spec.coeff_modulus())
        throw InsufficientGlobalData("solved groups' modulus product does not exceed the message box");

    // CRT per coefficient
    std::vector<BigInt> u(spec.locality());
    for (unsigned t = 0; t < spec.locality(); ++t) {
        BigInt value = 0, partial = 1;
        for (const SolvedGroup& sg : solved) {
            const std::uint64_t p = spec.primes()[sg.group].p;
            const std::uint64_t current = mod_u64(value, p);
            const std::uint64_t want = sg.coeffs[t];
            const std::uint64_t delta = mulmod(submod(want, current, p),
                                               invmod(mod_u64(partial, p), p), p);
            value += partial * delta;
            partial *= p;
        }
        if (value >= spec.coeff_modulus())
            throw OutOfRange("CRT representative escapes the message box (corruption)");
        u[t] = std::move(value);
    }

    MessagePoly msg = MessagePoly::from_coefficients(u, spec.radix(), spec.depth() + 1);
    const Codeword recoded = encode(spec, msg);
    for (unsigned g = 0; g < spec.group_count(); ++g)
        for (unsigned j = 0; j < spec.group_width(); ++j)
            if (cw.present(g, j) && recoded.symbol(g, j) != cw.symbol(g, j))
                throw Inconsistent("present symbol disagrees with the decoded message (corruption)");
    return msg;
}

// Membership test for a fully present word.
inline bool verify(const CodeSpec& spec, const Codeword& cw) {
    if (!cw.full()) throw InvalidArgument("verify requires a fully present codeword");
    try {
        (void)global_decode(spec, cw);
        return true;
    } catch (const Inconsistent&) {
        return false;
    } catch (const OutOfRange&) {
        return false;
    }
}

// ---- byte payload framing ----------------------------------------------
//
// A payload of L bytes is framed as: the 8L data bits, one 1 bit, then zero
// bits, for a total of exactly cap = floor(log2(code size)) bits; the framed
// value is carried in the big-endian mixed-radix digits of the message. The
// marker bit makes every length, including zero, unambiguous.

inline unsigned capacity_bits(const CodeSpec& spec) { return bit_length(spec.code_size()) - 1; }

// Largest payload (bytes) that fits one codeword.
inline std::size_t payload_capacity(const CodeSpec& spec) {
    const unsigned cap = capacity_bits(spec);
    return cap == 0 ? 0 : (cap - 1) / 8;
}

inline MessagePoly msg_from_bytes(const CodeSpec& spec, std::span<const std::uint8_t> data) {
    const unsigned cap = capacity_bits(spec);
    if (8 * data.size() + 1 > cap)
        throw CapacityExceeded("payload does not fit the codeword capacity");
    const unsigned pad = cap - 8 * static_cast<unsigned>(data.size());
    BigInt framed = (bigint_from_bytes(data) << pad) | (BigInt(1) << (pad - 1));

    const unsigned digit_count = spec.digit_count();
    std::vector<BigInt> digits(digit_count);
    for (unsigned t = digit_count; t-- > 0;) {
        digits[t] = framed % spec.radix();
        framed /= spec.radix();
    }
    MessagePoly msg = MessagePoly::zero(spec);
    for (unsigned i = 0; i < msg.rows(); ++i)
        for (unsigned j = 0; j < msg.cols(); ++j)
            msg.set_digit(i, j, std::move(digits[static_cast<std::size_t>(i) * msg.cols() + j]));
    return msg;
}

inline std::vector<std::uint8_t> msg_to_bytes(const CodeSpec& spec, const MessagePoly& msg) {
    msg.validate_for(spec);
    const unsigned cap = capacity_bits(spec);
    BigInt framed = 0;
    for (unsigned i = 0; i < msg.rows(); ++i)
        for (unsigned j = 0; j < msg.cols(); ++j) framed = framed * spec.radix() + msg.digit(i, j);
    if (framed == 0 || bit_length(framed) > cap)
        throw BadPadding("message does not carry a framed byte payload");
    const unsigned marker = static_cast<unsigned>(boost::multiprecision::lsb(framed));
    if ((cap - 1 - marker) % 8 != 0)
        throw BadPadding("marker bit is not on a byte boundary");
    const std::size_t len = (cap - 1 - marker) / 8;
    return bigint_to_bytes(framed >> (marker + 1), len);
}

}  // namespace nflc
