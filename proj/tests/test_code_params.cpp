#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nflc/code_params.hpp"

using namespace nflc;

namespace {

FieldPtr example_field() {
    return NumberField::create({BigInt(2), BigInt(0), BigInt(-4), BigInt(0)});
}

CodeSpec example_spec() {
    const FieldPtr f = example_field();
    return CodeSpec::create(f, 3, 3, BigInt(2), next_split_primes(*f, 3));
}

}  // namespace

TEST_CASE("good split check on the worked example", "[code_params]") {
    const FieldPtr f = example_field();
    const std::vector<SplitPrime> primes = next_split_primes(*f, 3);

    const GoodCheck full = good_split_check(*f, 3, 3, BigInt(2), primes);
    CHECK(full.good);
    CHECK(full.margin == BigRat(ipow(BigInt(17) * 31 * 47, 4), BigInt("12656250000")));

    const GoodCheck single = good_split_check(*f, 3, 3, BigInt(2), {primes[0]});
    CHECK_FALSE(single.good);
    CHECK(single.margin == BigRat(BigInt(83521), BigInt("12656250000")));

    const GoodCheck shallow = good_split_check(*f, 3, 0, BigInt(2), primes);
    CHECK(shallow.good);  // bound degenerates to the constant itself
}

TEST_CASE("good split check validates its inputs", "[code_params]") {
    const FieldPtr f = example_field();
    const std::vector<SplitPrime> primes = next_split_primes(*f, 3);
    CHECK_THROWS_AS(good_split_check(*f, 2, 3, BigInt(2), primes), DegreeMismatch);
    CHECK_THROWS_AS(good_split_check(*f, 3, 3, BigInt(1), primes), InvalidArgument);
    CHECK_THROWS_AS(good_split_check(*f, 3, 3, BigInt(2), {}), InvalidArgument);
    CHECK_THROWS_AS(good_split_check(*f, 3, 3, BigInt(2), {SplitPrime{19, {0, 1, 2, 3}}}), NotSplit);
    CHECK_THROWS_AS(good_split_check(*f, 3, 3, BigInt(2), {SplitPrime{2, {0, 1, 0, 1}}}), NotSplit);
    std::vector<SplitPrime> unsorted{primes[1], primes[0]};
    CHECK_THROWS_AS(good_split_check(*f, 3, 3, BigInt(2), unsorted), InvalidArgument);
}

TEST_CASE("cover size of the worked example", "[code_params]") {
    const FieldPtr f = example_field();
    const std::vector<SplitPrime> primes = next_split_primes(*f, 3);
    CHECK(compute_m(*f, 3, 3, BigInt(2), primes) == 8);
    CHECK(compute_m_exhaustive(*f, 3, 3, BigInt(2), primes) == 8);
    CHECK_THROWS_AS(compute_m(*f, 3, 3, BigInt(2), {primes[0]}), Unsatisfiable);
    CHECK_THROWS_AS(compute_m(*f, 3, 3, BigInt(1), primes), InvalidArgument);
}

TEST_CASE("greedy cover equals exhaustive subset search", "[code_params]") {
    struct Instance {
        FieldPtr field;
        unsigned locality;
    };
    const std::vector<Instance> fields{
        {NumberField::create({BigInt(1), BigInt(1)}), 1},
        {NumberField::create({BigInt(-2), BigInt(0)}), 1},
        {NumberField::create({BigInt(-1), BigInt(-1), BigInt(0)}), 2},
        {example_field(), 3},
    };
    unsigned instances = 0;
    for (const Instance& inst : fields) {
        const unsigned width = inst.locality + 1;
        for (unsigned ell = 1; ell * width <= 16; ++ell) {
            const std::vector<SplitPrime> primes = next_split_primes(*inst.field, ell);
            for (long long radix : {2, 3, 5}) {
                for (unsigned depth : {0u, 1u, 3u}) {
                    unsigned greedy = 0, exhaustive = 0;
                    bool greedy_throws = false, exhaustive_throws = false;
                    try {
                        greedy = compute_m(*inst.field, inst.locality, depth, BigInt(radix), primes);
                    } catch (const Unsatisfiable&) {
                        greedy_throws = true;
                    }
                    try {
                        exhaustive = compute_m_exhaustive(*inst.field, inst.locality, depth,
                                                          BigInt(radix), primes);
                    } catch (const Unsatisfiable&) {
                        exhaustive_throws = true;
                    }
                    REQUIRE(greedy_throws == exhaustive_throws);
                    if (!greedy_throws) REQUIRE(greedy == exhaustive);
                    ++instances;
                }
            }
        }
    }
    CHECK(instances >= 60);
}

TEST_CASE("first-prime toy cover", "[code_params]") {
    const FieldPtr f = NumberField::create({BigInt(1), BigInt(1)});
    const std::vector<SplitPrime> primes = next_split_primes(*f, 2);
    CHECK(primes[0].p == 7);
    CHECK(primes[1].p == 13);
    // bound is 4 * 1 = 4 and every position modulus exceeds it
    CHECK(compute_m(*f, 1, 0, BigInt(2), primes) == 1);
    CHECK(compute_m_exhaustive(*f, 1, 0, BigInt(2), primes) == 1);
}

TEST_CASE("spec derives lengths, sizes and bounds", "[code_params]") {
    const CodeSpec spec = example_spec();
    CHECK(spec.good());
    CHECK(spec.group_count() == 3);
    CHECK(spec.group_width() == 4);
    CHECK(spec.length() == 12);
    CHECK(spec.digit_count() == 12);
    CHECK(spec.coeff_modulus() == 16);
    CHECK(spec.code_size() == 4096);
    CHECK(spec.cover_size() == 8);
    CHECK(spec.distance_bound() == 5);
    CHECK(spec.margin() > 1);
}

TEST_CASE("non-good specs are representable but flagged", "[code_params]") {
    const FieldPtr f = example_field();
    const CodeSpec spec = CodeSpec::create(f, 3, 3, BigInt(2), next_split_primes(*f, 1));
    CHECK_FALSE(spec.good());
    CHECK(spec.cover_size() == 0);
    CHECK(spec.distance_bound() == 0);
    CHECK(spec.margin() < 1);
}

TEST_CASE("ambient distance report", "[code_params]") {
    const CodeSpec spec = example_spec();
    const AmbientDistance ambient = ambient_distance_report(spec);
    CHECK(ambient.lower_bound == 5);
    // oracle: product of the 7 smallest position moduli vs 16^4
    const BigInt seven_smallest = ipow(BigInt(17), 4) * ipow(BigInt(31), 3);
    CHECK(ambient.tight == (seven_smallest < ipow(BigInt(16), 4)));
    CHECK_FALSE(ambient.tight);
}

TEST_CASE("family parameter validation", "[code_params]") {
    const FieldPtr f = example_field();
    CHECK_NOTHROW(FamilyParams::create(f, 3, 3, BigRat(1, 2), BigRat(1, 25)));
    // (1/10)^4 * 250000 = 25 >= 1
    CHECK_THROWS_AS(FamilyParams::create(f, 3, 3, BigRat(1, 2), BigRat(1, 10)), InvalidArgument);
    CHECK_THROWS_AS(FamilyParams::create(f, 3, 3, BigRat(0), BigRat(1, 25)), InvalidArgument);
    CHECK_THROWS_AS(FamilyParams::create(f, 3, 3, BigRat(1), BigRat(1, 25)), InvalidArgument);
    CHECK_THROWS_AS(FamilyParams::create(f, 2, 3, BigRat(1, 2), BigRat(1, 25)), DegreeMismatch);
}

TEST_CASE("family design reproduces the hand-computed member", "[code_params]") {
    const FamilyParams fp =
        FamilyParams::create(example_field(), 3, 3, BigRat(1, 2), BigRat(1, 25));
    const CodeSpec spec = design_family(fp, 4);
    CHECK(spec.radix() == 3);  // floor((47*79/25)^(1/4))
    REQUIRE(spec.primes().size() == 4);
    CHECK(spec.primes()[3].p == 79);
    CHECK(spec.good());

    CHECK_THROWS_AS(design_family(fp, 1), MTooSmall);
    CHECK_THROWS_AS(design_family(fp, 2), MTooSmall);
    CHECK_THROWS_AS(design_family(fp, 0), InvalidArgument);
}

TEST_CASE("family members satisfy the tail inequality", "[code_params]") {
    const FamilyParams fp =
        FamilyParams::create(example_field(), 3, 3, BigRat(1, 2), BigRat(1, 25));
    for (unsigned ell : {4u, 8u, 16u}) {
        const CodeSpec spec = design_family(fp, ell);
        REQUIRE(spec.good());
        // the primes beyond the cut alone already exceed the bound
        BigInt tail = 1;
        for (unsigned i = ell / 2; i < ell; ++i) tail *= spec.primes()[i].p;
        const BigInt bound = spec.field()->norm_bound_constant() *
                             ipow(spec.coeff_modulus() - 1, spec.locality() + 1);
        REQUIRE(ipow(tail, spec.locality() + 1) > bound);
    }
}

TEST_CASE("rate of the worked example", "[code_params]") {
    const CodeSpec spec = example_spec();
    CHECK(std::abs(rate(spec) - 0.205532) < 1e-4);

    const FieldPtr f = example_field();
    const CodeSpec tiny = CodeSpec::create(f, 3, 0, BigInt(2), next_split_primes(*f, 1));
    const double expected = 3.0 * std::log(2.0) / (4.0 * std::log(17.0));
    CHECK(std::abs(rate(tiny) - expected) < 1e-12);
}
