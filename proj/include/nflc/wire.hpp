#pragma once

// Binary codeword format. One record is:
//
//   magic "NFLC" | version u8 | group count u16 BE | locality u8
//   then per group:
//     p as u64 BE
//     locality+1 symbols, each ceil(bits(p)/8) bytes BE (erased -> zero)
//     presence mask, one bit per slot MSB-first, zero-padded to a byte
//
// Records round-trip bit-exactly; a stream is records back to back.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "nflc/codec.hpp"
#include "nflc/errors.hpp"

namespace nflc {

inline constexpr std::uint8_t kWireVersion = 1;

namespace detail {

inline unsigned symbol_width(std::uint64_t p) {
    return (std::bit_width(p) + 7) / 8;
}

inline void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, unsigned width) {
    for (unsigned i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_be(std::span<const std::uint8_t> in, std::size_t& offset, unsigned width) {
    if (offset + width > in.size()) throw MalformedCodeword("truncated codeword record");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 8) | in[offset++];
    return v;
}

}  // namespace detail

inline std::vector<std::uint8_t> wire_encode(const CodeSpec& spec, const Codeword& cw) {
    if (cw.groups() != spec.group_count() || cw.width() != spec.group_width())
        throw InvalidArgument("codeword shape does not match the spec");
    if (spec.group_count() > 0xffff) throw InvalidArgument("too many groups for the wire format");
    if (spec.locality() > 0xff) throw InvalidArgument("locality too large for the wire format");

    std::vector<std::uint8_t> out{'N', 'F', 'L', 'C', kWireVersion};
    detail::put_be(out, spec.group_count(), 2);
    out.push_back(static_cast<std::uint8_t>(spec.locality()));
    for (unsigned g = 0; g < spec.group_count(); ++g) {
        const std::uint64_t p = spec.primes()[g].p;
        detail::put_be(out, p, 8);
        const unsigned width = detail::symbol_width(p);
        for (unsigned j = 0; j < spec.group_width(); ++j)
            detail::put_be(out, cw.present(g, j) ? cw.symbol(g, j) : 0, width);
        std::uint8_t bits = 0;
        unsigned filled = 0;
        for (unsigned j = 0; j < spec.group_width(); ++j) {
            bits = static_cast<std::uint8_t>((bits << 1) | (cw.present(g, j) ? 1 : 0));
            if (++filled == 8) {
                out.push_back(bits);
                bits = 0;
                filled = 0;
            }
        }
        if (filled != 0) out.push_back(static_cast<std::uint8_t>(bits << (8 - filled)));
    }
    return out;
}

// Reads one record starting at `offset`, which is advanced past it.
inline Codeword wire_decode(const CodeSpec& spec, std::span<const std::uint8_t> in,
                            std::size_t& offset) {
    std::size_t pos = offset;
    if (pos + 8 > in.size()) throw MalformedCodeword("truncated codeword header");
    if (in[pos] != 'N' || in[pos + 1] != 'F' || in[pos + 2] != 'L' || in[pos + 3] != 'C')
        throw MalformedCodeword("bad magic");
    if (in[pos + 4] != kWireVersion) throw MalformedCodeword("unsupported version");
    pos += 5;
    const std::uint64_t groups = detail::get_be(in, pos, 2);
    const std::uint64_t locality = detail::get_be(in, pos, 1);
    if (groups != spec.group_count() || locality != spec.locality())
        throw MalformedCodeword("record shape does not match the spec");

    Codeword cw(spec.group_count(), spec.group_width());
    for (unsigned g = 0; g < spec.group_count(); ++g) {
        const std::uint64_t p = detail::get_be(in, pos, 8);
        if (p != spec.primes()[g].p) throw MalformedCodeword("group modulus does not match the spec");
        const unsigned width = detail::symbol_width(p);
        std::vector<std::uint64_t> symbols(spec.group_width());
        for (unsigned j = 0; j < spec.group_width(); ++j) symbols[j] = detail::get_be(in, pos, width);
        const unsigned mask_bytes = (spec.group_width() + 7) / 8;
        unsigned bit = 0;
        for (unsigned b = 0; b < mask_bytes; ++b) {
            const std::uint64_t byte = detail::get_be(in, pos, 1);
            for (int k = 7; k >= 0; --k, ++bit) {
                const bool flag = (byte >> k) & 1;
                if (bit < spec.group_width()) {
                    if (flag) {
                        if (symbols[bit] >= p) throw MalformedCodeword("symbol not reduced mod p");
                        cw.set_symbol(g, bit, symbols[bit]);
                    } else {
                        if (symbols[bit] != 0) throw MalformedCodeword("erased symbol must be zero");
                        cw.erase(g, bit);
                    }
                } else if (flag) {
                    throw MalformedCodeword("mask padding bits must be zero");
                }
            }
        }
    }
    offset = pos;
    return cw;
}

inline std::vector<Codeword> wire_decode_stream(const CodeSpec& spec,
                                                std::span<const std::uint8_t> in) {
    std::vector<Codeword> out;
    std::size_t offset = 0;
    while (offset < in.size()) out.push_back(wire_decode(spec, in, offset));
    return out;
}

}  // namespace nflc
