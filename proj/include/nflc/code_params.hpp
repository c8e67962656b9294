#pragma once

// Code parameter validation and design. A code is specified by a number
// field of degree locality+1, a digit radix, a stack depth (extra base-radix
// layers per coefficient), and a list of totally split primes; everything
// else (length, injectivity margin, cover size, distance bound, size) is
// derived here by exact integer/rational arithmetic. Floating point appears
// only in the informational rate().

#include <cstdint>
#include <utility>
#include <vector>

#include "nflc/bigint.hpp"
#include "nflc/errors.hpp"
#include "nflc/number_field.hpp"
#include "nflc/primes.hpp"

namespace nflc {

struct GoodCheck {
    bool good = false;
    BigRat margin;  // (prod p)^(locality+1) / (C (radix^(depth+1)-1)^(locality+1)), exact
};

namespace detail {

inline void validate_code_inputs(const NumberField& field, unsigned locality, const BigInt& radix,
                                 const std::vector<SplitPrime>& primes) {
    if (locality == 0) throw InvalidArgument("locality must be >= 1");
    if (field.degree() != locality + 1)
        throw DegreeMismatch("field degree must equal locality + 1");
    if (radix < 2) throw InvalidArgument("radix must be >= 2");
    if (primes.empty()) throw InvalidArgument("at least one split prime is required");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        validate_split_prime(field, primes[i]);
        if (i > 0 && primes[i].p <= primes[i - 1].p)
            throw InvalidArgument("primes must be strictly ascending");
    }
}

inline BigInt injectivity_bound(const NumberField& field, unsigned locality, unsigned depth,
                                const BigInt& radix) {
    return field.norm_bound_constant() * ipow(ipow(radix, depth + 1) - 1, locality + 1);
}

}  // namespace detail

// Exact comparison (prod p_i)^(locality+1) vs C (radix^(depth+1)-1)^(locality+1).
// good == true guarantees the encoding map is injective.
inline GoodCheck good_split_check(const NumberField& field, unsigned locality, unsigned depth,
                                  const BigInt& radix, const std::vector<SplitPrime>& primes) {
    detail::validate_code_inputs(field, locality, radix, primes);
    BigInt prod = 1;
    for (const SplitPrime& sp : primes) prod *= sp.p;
    const BigInt lhs = ipow(prod, locality + 1);
    const BigInt rhs = detail::injectivity_bound(field, locality, depth, radix);
    return GoodCheck{lhs > rhs, BigRat(lhs, rhs)};
}

// Cover size m: the least t such that EVERY t of the residue positions have
// modulus product exceeding the injectivity bound, equivalently the
// shortest ascending-sorted prefix of the position moduli whose product
// exceeds it (the t smallest moduli minimize the product over t-subsets).
// Each prime contributes locality+1 positions of modulus p. The distance
// bound is then length - m + 1.
inline unsigned compute_m(const NumberField& field, unsigned locality, unsigned depth,
                          const BigInt& radix, const std::vector<SplitPrime>& primes) {
    detail::validate_code_inputs(field, locality, radix, primes);
    const BigInt bound = detail::injectivity_bound(field, locality, depth, radix);
    BigInt prod = 1;
    unsigned taken = 0;
    for (const SplitPrime& sp : primes) {  // ascending
        for (unsigned j = 0; j <= locality; ++j) {
            prod *= sp.p;
            ++taken;
            if (prod > bound) return taken;
        }
    }
    throw Unsatisfiable("full modulus product does not exceed the injectivity bound");
}

// Auditing oracle for compute_m: enumerates all 2^n position subsets and
// returns 1 + the largest cardinality whose product stays <= the bound.
inline unsigned compute_m_exhaustive(const NumberField& field, unsigned locality, unsigned depth,
                                     const BigInt& radix, const std::vector<SplitPrime>& primes) {
    detail::validate_code_inputs(field, locality, radix, primes);
    const BigInt bound = detail::injectivity_bound(field, locality, depth, radix);
    std::vector<std::uint64_t> moduli;
    for (const SplitPrime& sp : primes)
        moduli.insert(moduli.end(), locality + 1, sp.p);
    if (moduli.size() > 16) throw TooLarge("exhaustive subset search limited to 16 positions");

    unsigned best = 0;
    const auto recurse = [&](auto&& self, std::size_t idx, const BigInt& prod, unsigned size) -> void {
        if (idx == moduli.size()) {
            if (prod <= bound) best = std::max(best, size);
            return;
        }
        self(self, idx + 1, prod, size);
        self(self, idx + 1, prod * moduli[idx], size + 1);
    };
    recurse(recurse, 0, BigInt(1), 0);
    if (best == moduli.size())
        throw Unsatisfiable("full modulus product does not exceed the injectivity bound");
    return best + 1;
}

// Full code specification with derived quantities, immutable once created.
class CodeSpec {
   public:
    static CodeSpec create(FieldPtr field, unsigned locality, unsigned depth, BigInt radix,
                           std::vector<SplitPrime> primes) {
        if (!field) throw InvalidArgument("CodeSpec requires a field");
        GoodCheck check = good_split_check(*field, locality, depth, radix, primes);
        CodeSpec spec;
        spec.field_ = std::move(field);
        spec.locality_ = locality;
        spec.depth_ = depth;
        spec.radix_ = std::move(radix);
        spec.primes_ = std::move(primes);
        spec.good_ = check.good;
        spec.margin_ = std::move(check.margin);
        spec.coeff_modulus_ = ipow(spec.radix_, depth + 1);
        spec.m_ = spec.good_
                      ? compute_m(*spec.field_, locality, depth, spec.radix_, spec.primes_)
                      : 0;
        return spec;
    }

    const FieldPtr& field() const { return field_; }
    unsigned locality() const { return locality_; }
    unsigned depth() const { return depth_; }
    const BigInt& radix() const { return radix_; }
    const std::vector<SplitPrime>& primes() const { return primes_; }

    unsigned group_count() const { return static_cast<unsigned>(primes_.size()); }
    unsigned group_width() const { return locality_ + 1; }
    unsigned length() const { return group_count() * group_width(); }
    unsigned digit_count() const { return locality_ * (depth_ + 1); }

    // Upper bound (exclusive) for each message coefficient: radix^(depth+1).
    const BigInt& coeff_modulus() const { return coeff_modulus_; }
    BigInt code_size() const { return ipow(radix_, digit_count()); }

    bool good() const { return good_; }
    const BigRat& margin() const { return margin_; }

    // Cover size m (0 for a non-good spec).
    unsigned cover_size() const { return m_; }
    unsigned distance_bound() const { return good_ ? length() - m_ + 1 : 0; }

    bool operator==(const CodeSpec& other) const {
        return *field_ == *other.field_ && locality_ == other.locality_ && depth_ == other.depth_ &&
               radix_ == other.radix_ && primes_ == other.primes_;
    }

   private:
    CodeSpec() = default;

    FieldPtr field_;
    unsigned locality_ = 0;
    unsigned depth_ = 0;
    BigInt radix_;
    std::vector<SplitPrime> primes_;
    BigInt coeff_modulus_;
    bool good_ = false;
    BigRat margin_;
    unsigned m_ = 0;
};

struct AmbientDistance {
    unsigned lower_bound = 0;
    // Tightness certificate for the ambient residue code only (never for the
    // subcode): true when the m-1 smallest moduli have product below
    // coeff_modulus^(locality+1), which pins the ambient distance to exactly
    // the bound.
    bool tight = false;
};

inline AmbientDistance ambient_distance_report(const CodeSpec& spec) {
    if (!spec.good()) throw NotGoodCode("ambient distance report requires a good spec");
    AmbientDistance out;
    out.lower_bound = spec.distance_bound();
    BigInt prod = 1;
    unsigned taken = 0;
    for (const SplitPrime& sp : spec.primes()) {
        for (unsigned j = 0; j <= spec.locality() && taken + 1 < spec.cover_size(); ++j) {
            prod *= sp.p;
            ++taken;
        }
    }
    out.tight = prod < ipow(spec.coeff_modulus(), spec.locality() + 1);
    return out;
}

// Parameters for an asymptotically good family: a cut fraction in (0,1)
// deciding how many leading primes are sacrificed to the distance reservoir,
// and a radix factor k with k^(locality+1) C < 1 (exact rational check).
class FamilyParams {
   public:
    static FamilyParams create(FieldPtr field, unsigned locality, unsigned depth, BigRat cut_fraction,
                               BigRat radix_factor) {
        if (!field) throw InvalidArgument("FamilyParams requires a field");
        if (field->degree() != locality + 1)
            throw DegreeMismatch("field degree must equal locality + 1");
        if (cut_fraction <= 0 || cut_fraction >= 1)
            throw InvalidArgument("cut fraction must lie strictly between 0 and 1");
        if (radix_factor <= 0) throw InvalidArgument("radix factor must be positive");
        BigRat power = 1;
        for (unsigned i = 0; i <= locality; ++i) power *= radix_factor;
        if (power * BigRat(field->norm_bound_constant()) >= 1)
            throw InvalidArgument(
                "radix factor too large: k^(locality+1) * norm bound constant must be < 1");
        FamilyParams fp;
        fp.field_ = std::move(field);
        fp.locality_ = locality;
        fp.depth_ = depth;
        fp.cut_fraction_ = std::move(cut_fraction);
        fp.radix_factor_ = std::move(radix_factor);
        return fp;
    }

    const FieldPtr& field() const { return field_; }
    unsigned locality() const { return locality_; }
    unsigned depth() const { return depth_; }
    const BigRat& cut_fraction() const { return cut_fraction_; }
    const BigRat& radix_factor() const { return radix_factor_; }

   private:
    FamilyParams() = default;

    FieldPtr field_;
    unsigned locality_ = 0;
    unsigned depth_ = 0;
    BigRat cut_fraction_;
    BigRat radix_factor_;
};

// Member ell of the family: the first ell split primes, with radix
// floor((k P_ell / P_floor(c*ell))^(1/(depth+1))). The resulting spec is
// always good (by the defining inequality); a non-good result would be an
// internal error.
inline CodeSpec design_family(const FamilyParams& fp, unsigned ell,
                              std::uint64_t ceiling = kDefaultPrimeCeiling) {
    if (ell == 0) throw InvalidArgument("design_family: ell must be >= 1");
    std::vector<SplitPrime> primes = next_split_primes(*fp.field(), ell, 2, ceiling);

    const BigInt cut_num = boost::multiprecision::numerator(fp.cut_fraction());
    const BigInt cut_den = boost::multiprecision::denominator(fp.cut_fraction());
    const unsigned cut = ((cut_num * ell) / cut_den).convert_to<unsigned>();

    BigInt p_ell = 1, p_cut = 1;
    for (unsigned i = 0; i < ell; ++i) {
        p_ell *= primes[i].p;
        if (i < cut) p_cut *= primes[i].p;
    }
    const BigRat target = fp.radix_factor() * BigRat(p_ell, p_cut);
    const BigInt radix = iroot_floor(target, fp.depth() + 1);
    if (radix < 2) throw MTooSmall("designed radix below 2; increase ell");
    CodeSpec spec = CodeSpec::create(fp.field(), fp.locality(), fp.depth(), radix, std::move(primes));
    if (!spec.good())
        throw Unsatisfiable("family member failed the goodness inequality");
    return spec;
}

// Information rate log(code size) / log(ambient size) as a double; the log
// computation is accurate to well within 1e-12 relative error at the sizes
// handled here.
inline double rate(const CodeSpec& spec) {
    double log_p = 0;
    for (const SplitPrime& sp : spec.primes()) log_p += std::log(static_cast<double>(sp.p));
    return static_cast<double>(spec.digit_count()) * log_big(spec.radix()) /
           (static_cast<double>(spec.locality() + 1) * log_p);
}

}  // namespace nflc
