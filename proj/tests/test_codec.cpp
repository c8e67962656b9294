#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nflc/codec.hpp"
#include "nflc/primes.hpp"

using namespace nflc;

namespace {

FieldPtr example_field() {
    return NumberField::create({BigInt(2), BigInt(0), BigInt(-4), BigInt(0)});
}

CodeSpec example_spec() {
    const FieldPtr f = example_field();
    return CodeSpec::create(f, 3, 3, BigInt(2), next_split_primes(*f, 3));
}

MessagePoly alpha_message(const CodeSpec& spec) {
    // u = (0, 1, 0): the generator itself
    return MessagePoly::from_index(spec, BigInt(16));
}

}  // namespace

TEST_CASE("encoding fixed messages", "[codec]") {
    const CodeSpec spec = example_spec();

    const Codeword zero = encode(spec, MessagePoly::zero(spec));
    for (unsigned g = 0; g < 3; ++g)
        for (unsigned j = 0; j < 4; ++j) CHECK(zero.symbol(g, j) == 0);

    // the generator maps to the root tuples themselves (ascending slot order)
    const Codeword alpha = encode(spec, alpha_message(spec));
    const std::vector<std::vector<std::uint64_t>> expected{
        {5, 8, 9, 12}, {5, 14, 17, 26}, {3, 18, 29, 44}};
    for (unsigned g = 0; g < 3; ++g)
        for (unsigned j = 0; j < 4; ++j) CHECK(alpha.symbol(g, j) == expected[g][j]);

    const Codeword one = encode(spec, MessagePoly::from_index(spec, BigInt(1)));
    for (unsigned g = 0; g < 3; ++g)
        for (unsigned j = 0; j < 4; ++j) CHECK(one.symbol(g, j) == 1);
}

TEST_CASE("encode rejects non-good specs and bad messages", "[codec]") {
    const FieldPtr f = example_field();
    const CodeSpec bad = CodeSpec::create(f, 3, 3, BigInt(2), next_split_primes(*f, 1));
    CHECK_THROWS_AS(encode(bad, MessagePoly(3, 4)), NotGoodCode);

    const CodeSpec spec = example_spec();
    MessagePoly wrong_shape(2, 4);
    CHECK_THROWS_AS(encode(spec, wrong_shape), InvalidArgument);
    MessagePoly bad_digit = MessagePoly::zero(spec);
    bad_digit.set_digit(0, 0, BigInt(2));
    CHECK_THROWS_AS(encode(spec, bad_digit), InvalidArgument);
}

TEST_CASE("message index round trip", "[codec]") {
    const CodeSpec spec = example_spec();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const BigInt v = rng() % 4096;
        CHECK(MessagePoly::from_index(spec, v).index(spec) == v);
    }
    CHECK_THROWS_AS(MessagePoly::from_index(spec, BigInt(4096)), InvalidArgument);
}

TEST_CASE("local recovery of single erasures", "[codec]") {
    const CodeSpec spec = example_spec();
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
        const Codeword cw = encode(spec, MessagePoly::from_index(spec, BigInt(rng() % 4096)));
        for (unsigned g = 0; g < 3; ++g) {
            for (unsigned j = 0; j < 4; ++j) {
                Codeword damaged = cw;
                damaged.erase(g, j);
                REQUIRE(local_recover(spec, damaged, g, j) == cw.symbol(g, j));
            }
        }
    }
}

TEST_CASE("one erasure per group recovers independently", "[codec]") {
    const CodeSpec spec = example_spec();
    const Codeword cw = encode(spec, alpha_message(spec));
    Codeword damaged = cw;
    damaged.erase(0, 3);
    damaged.erase(1, 0);
    damaged.erase(2, 2);
    for (const auto& [g, j] : {std::pair<unsigned, unsigned>{0, 3}, {1, 0}, {2, 2}}) {
        REQUIRE(local_recover(spec, damaged, g, j) == cw.symbol(g, j));
    }
}

TEST_CASE("local recovery from corrupted helpers flags the word", "[codec]") {
    // recovery always returns the value consistent with the helpers, so a
    // corrupted helper must surface as a mismatch against the true symbol
    const CodeSpec spec = example_spec();
    const Codeword cw = encode(spec, alpha_message(spec));
    Codeword tainted = cw;
    tainted.set_symbol(0, 0, (cw.symbol(0, 0) + 1) % 17);
    tainted.erase(0, 1);
    CHECK(local_recover(spec, tainted, 0, 1) != cw.symbol(0, 1));
}

TEST_CASE("local recovery needs all group mates", "[codec]") {
    const CodeSpec spec = example_spec();
    Codeword cw = encode(spec, alpha_message(spec));
    cw.erase(0, 1);
    cw.erase(0, 2);
    CHECK_THROWS_AS(local_recover(spec, cw, 0, 1), InsufficientLocalData);
    CHECK_THROWS_AS(local_recover(spec, cw, 7, 0), InvalidArgument);
}

TEST_CASE("global decode round trip, exhaustively", "[codec]") {
    const CodeSpec spec = example_spec();
    for (unsigned v = 0; v < 4096; ++v) {
        const MessagePoly msg = MessagePoly::from_index(spec, BigInt(v));
        REQUIRE(global_decode(spec, encode(spec, msg)) == msg);
    }
}

TEST_CASE("global decode survives a whole lost group", "[codec]") {
    const CodeSpec spec = example_spec();
    const MessagePoly msg = MessagePoly::from_index(spec, BigInt(1803));
    Codeword cw = encode(spec, msg);
    for (unsigned j = 0; j < 4; ++j) cw.erase(0, j);  // 31 * 47 = 1457 > 16
    CHECK(global_decode(spec, cw) == msg);

    // even a single surviving group clears the bar here: 17 > 16
    Codeword only17 = encode(spec, msg);
    for (unsigned g = 1; g < 3; ++g)
        for (unsigned j = 0; j < 4; ++j) only17.erase(g, j);
    CHECK(global_decode(spec, only17) == msg);
}

TEST_CASE("global decode refuses starved patterns", "[codec]") {
    const CodeSpec spec = example_spec();
    Codeword cw = encode(spec, alpha_message(spec));
    for (unsigned g = 0; g < 3; ++g) {
        cw.erase(g, 0);
        cw.erase(g, 1);
    }
    CHECK_THROWS_AS(global_decode(spec, cw), InsufficientGlobalData);
}

TEST_CASE("corruption is detected, never corrected", "[codec]") {
    const CodeSpec spec = example_spec();
    const MessagePoly msg = MessagePoly::from_index(spec, BigInt(999));
    const Codeword cw = encode(spec, msg);

    // spare-slot check: groups are solved from the first three slots
    Codeword spare = cw;
    spare.set_symbol(1, 3, (cw.symbol(1, 3) + 1) % 31);
    CHECK_THROWS_AS(global_decode(spec, spare), Inconsistent);

    // corrupting a solving slot must also surface as an error
    Codeword solver = cw;
    solver.set_symbol(2, 0, (cw.symbol(2, 0) + 1) % 47);
    CHECK_THROWS(global_decode(spec, solver));
    bool ok;
    try {
        (void)global_decode(spec, solver);
        ok = true;
    } catch (const Inconsistent&) {
        ok = false;
    } catch (const OutOfRange&) {
        ok = false;
    }
    CHECK_FALSE(ok);
}

TEST_CASE("verify accepts members and flags perturbations", "[codec]") {
    const CodeSpec spec = example_spec();
    const Codeword cw = encode(spec, MessagePoly::from_index(spec, BigInt(2024 % 4096)));
    CHECK(verify(spec, cw));

    const Codeword zero = encode(spec, MessagePoly::zero(spec));
    CHECK(verify(spec, zero));

    std::mt19937_64 rng(29);
    for (int i = 0; i < 50; ++i) {
        Codeword bad = cw;
        const unsigned g = rng() % 3, j = rng() % 4;
        const std::uint64_t p = spec.primes()[g].p;
        bad.set_symbol(g, j, (bad.symbol(g, j) + 1) % p);
        REQUIRE_FALSE(verify(spec, bad));
    }

    Codeword partial = cw;
    partial.erase(0, 0);
    CHECK_THROWS_AS(verify(spec, partial), InvalidArgument);
}

TEST_CASE("reduction is a ring homomorphism", "[codec]") {
    const FieldPtr f = example_field();
    const std::vector<SplitPrime> primes = next_split_primes(*f, 3);
    std::mt19937_64 rng(31);
    const auto reduce = [](const AlgebraicInt& x, std::uint64_t beta, std::uint64_t p) {
        std::uint64_t acc = 0;
        for (std::size_t i = x.coeffs().size(); i-- > 0;)
            acc = addmod(mulmod(acc, beta, p), mod_u64(x.coeffs()[i], p), p);
        return acc;
    };
    for (int i = 0; i < 50; ++i) {
        std::vector<BigInt> a(4), b(4);
        for (auto& c : a) c = static_cast<long long>(rng() % 101) - 50;
        for (auto& c : b) c = static_cast<long long>(rng() % 101) - 50;
        const AlgebraicInt x(f, a), y(f, b);
        for (const SplitPrime& sp : primes) {
            for (std::uint64_t beta : sp.roots) {
                REQUIRE(reduce(x + y, beta, sp.p) ==
                        addmod(reduce(x, beta, sp.p), reduce(y, beta, sp.p), sp.p));
                REQUIRE(reduce(x * y, beta, sp.p) ==
                        mulmod(reduce(x, beta, sp.p), reduce(y, beta, sp.p), sp.p));
            }
        }
    }
}

TEST_CASE("byte payload framing", "[codec]") {
    const CodeSpec spec = example_spec();
    CHECK(capacity_bits(spec) == 12);
    CHECK(payload_capacity(spec) == 1);

    // empty payload is representable and distinct from a zero byte
    const MessagePoly empty = msg_from_bytes(spec, {});
    CHECK(msg_to_bytes(spec, empty).empty());
    const std::vector<std::uint8_t> zero_byte{0};
    const MessagePoly zero = msg_from_bytes(spec, zero_byte);
    CHECK(msg_to_bytes(spec, zero) == zero_byte);
    CHECK_FALSE(empty == zero);

    for (unsigned b = 0; b < 256; ++b) {
        const std::vector<std::uint8_t> payload{static_cast<std::uint8_t>(b)};
        const MessagePoly msg = msg_from_bytes(spec, payload);
        REQUIRE(msg_to_bytes(spec, msg) == payload);
        // and the framing survives the channel
        REQUIRE(msg_to_bytes(spec, global_decode(spec, encode(spec, msg))) == payload);
    }

    const std::vector<std::uint8_t> two_bytes{1, 2};
    CHECK_THROWS_AS(msg_from_bytes(spec, two_bytes), CapacityExceeded);
    CHECK_THROWS_AS(msg_to_bytes(spec, MessagePoly::zero(spec)), BadPadding);
}
