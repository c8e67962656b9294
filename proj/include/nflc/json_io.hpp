#pragma once

// JSON schemas for every externally visible object. Big integers travel as
// decimal strings. Key order is fixed (insertion order) so dumps are
// byte-stable.

#include <string>
#include <vector>

#include <json.hpp>

#include "nflc/analysis.hpp"
#include "nflc/bigint.hpp"
#include "nflc/code_params.hpp"
#include "nflc/codec.hpp"
#include "nflc/errors.hpp"
#include "nflc/number_field.hpp"
#include "nflc/primes.hpp"
#include "nflc/sim.hpp"

namespace nflc {

using Json = nlohmann::ordered_json;

namespace detail {

template <typename F>
auto json_guard(const char* what, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string(what) + ": " + e.what());
    }
}

}  // namespace detail

// ---- number field: {"min_poly": ["b0", ...], "degree": d} ----------------

inline Json field_to_json(const NumberField& field) {
    Json j;
    Json coeffs = Json::array();
    for (const BigInt& b : field.coeffs()) coeffs.push_back(to_decimal(b));
    j["min_poly"] = std::move(coeffs);
    j["degree"] = field.degree();
    return j;
}

inline FieldPtr field_from_json(const Json& j,
                                IrreducibilityPolicy policy = IrreducibilityPolicy::require_certificate) {
    return detail::json_guard("number field", [&] {
        std::vector<BigInt> coeffs;
        for (const Json& c : j.at("min_poly")) coeffs.push_back(bigint_from_decimal(c.get<std::string>()));
        const auto degree = j.at("degree").get<std::uint64_t>();
        if (degree != coeffs.size())
            throw InvalidArgument("field degree does not match the coefficient count");
        return NumberField::create(std::move(coeffs), policy);
    });
}

// ---- split primes: {"p": u64, "roots": [u64...]} --------------------------

inline Json split_prime_to_json(const SplitPrime& sp) {
    Json j;
    j["p"] = sp.p;
    j["roots"] = sp.roots;
    return j;
}

inline SplitPrime split_prime_from_json(const Json& j) {
    return detail::json_guard("split prime", [&] {
        SplitPrime sp;
        sp.p = j.at("p").get<std::uint64_t>();
        sp.roots = j.at("roots").get<std::vector<std::uint64_t>>();
        return sp;
    });
}

// ---- code spec ------------------------------------------------------------
//
// {"field": {...}, "r": u32, "s": u32, "M": "decimal", "primes": [...],
//  "derived": {"n":..., "m":..., "dist_lb":..., "good": bool}}
//
// The derived block is recomputed on load; any mismatch is a hard error.

inline Json spec_to_json(const CodeSpec& spec) {
    Json j;
    j["field"] = field_to_json(*spec.field());
    j["r"] = spec.locality();
    j["s"] = spec.depth();
    j["M"] = to_decimal(spec.radix());
    Json primes = Json::array();
    for (const SplitPrime& sp : spec.primes()) primes.push_back(split_prime_to_json(sp));
    j["primes"] = std::move(primes);
    Json derived;
    derived["n"] = spec.length();
    derived["m"] = spec.cover_size();
    derived["dist_lb"] = spec.distance_bound();
    derived["good"] = spec.good();
    j["derived"] = std::move(derived);
    return j;
}

inline CodeSpec spec_from_json(const Json& j,
                               IrreducibilityPolicy policy = IrreducibilityPolicy::require_certificate) {
    return detail::json_guard("code spec", [&] {
        FieldPtr field = field_from_json(j.at("field"), policy);
        const auto locality = j.at("r").get<std::uint32_t>();
        const auto depth = j.at("s").get<std::uint32_t>();
        BigInt radix = bigint_from_decimal(j.at("M").get<std::string>());
        std::vector<SplitPrime> primes;
        for (const Json& sp : j.at("primes")) primes.push_back(split_prime_from_json(sp));
        CodeSpec spec = CodeSpec::create(std::move(field), locality, depth, std::move(radix),
                                         std::move(primes));
        if (j.contains("derived")) {
            const Json& d = j.at("derived");
            if (d.at("n").get<std::uint64_t>() != spec.length() ||
                d.at("m").get<std::uint64_t>() != spec.cover_size() ||
                d.at("dist_lb").get<std::uint64_t>() != spec.distance_bound() ||
                d.at("good").get<bool>() != spec.good())
                throw DerivedMismatch("serialized derived block disagrees with recomputed values");
        }
        return spec;
    });
}

// ---- field construction certificate ---------------------------------------

inline Json certificate_to_json(const FieldConstructionCertificate& cert) {
    Json j;
    j["degree"] = cert.degree;
    Json poly = Json::array();
    for (const BigInt& b : cert.poly) poly.push_back(to_decimal(b));
    j["poly"] = std::move(poly);
    j["aux_prime"] = cert.aux_prime;
    j["aux_irreducible"] = cert.aux_irreducible;
    j["bezout"] = Json::array({to_decimal(cert.bezout_u1), to_decimal(cert.bezout_u2)});
    Json wit = Json::array();
    for (const SplitPrime& sp : cert.split_witnesses) wit.push_back(split_prime_to_json(sp));
    j["split_witnesses"] = std::move(wit);
    return j;
}

// ---- message / distance report ---------------------------------------------

inline Json message_to_json(const CodeSpec& spec, const MessagePoly& msg) {
    Json digits = Json::array();
    for (unsigned i = 0; i < msg.rows(); ++i) {
        Json row = Json::array();
        for (unsigned j = 0; j < msg.cols(); ++j) row.push_back(to_decimal(msg.digit(i, j)));
        digits.push_back(std::move(row));
    }
    Json j;
    j["index"] = to_decimal(msg.index(spec));
    j["digits"] = std::move(digits);
    return j;
}

inline Json distance_report_to_json(const CodeSpec& spec, const DistanceReport& report) {
    Json j;
    j["min_distance"] = report.min_distance;
    j["lower_bound"] = report.lower_bound;
    j["witness_pair"] =
        Json::array({message_to_json(spec, MessagePoly::from_index(spec, report.witness_a)),
                     message_to_json(spec, MessagePoly::from_index(spec, report.witness_b))});
    j["enumerated"] = report.enumerated;
    return j;
}

// ---- simulator --------------------------------------------------------------

inline Json scenario_to_json(const Scenario& sc) {
    Json j;
    j["stripes"] = sc.stripes;
    j["seed"] = sc.seed;
    Json events = Json::array();
    for (const SimEvent& e : sc.events) {
        Json ev;
        ev["time"] = e.time;
        ev["node"] = Json::array({e.group, e.slot});
        ev["kind"] = e.kind == EventKind::fail ? "fail" : "restore";
        events.push_back(std::move(ev));
    }
    j["events"] = std::move(events);
    return j;
}

inline Scenario scenario_from_json(const Json& j) {
    return detail::json_guard("scenario", [&] {
        Scenario sc;
        sc.stripes = j.value("stripes", std::uint64_t(1));
        sc.seed = j.value("seed", std::uint64_t(0));
        for (const Json& ev : j.at("events")) {
            SimEvent e;
            e.time = ev.at("time").get<std::uint64_t>();
            const Json& node = ev.at("node");
            if (!node.is_array() || node.size() != 2)
                throw InvalidScenario("event node must be [group, slot]");
            e.group = node[0].get<std::uint32_t>();
            e.slot = node[1].get<std::uint32_t>();
            const std::string kind = ev.at("kind").get<std::string>();
            if (kind == "fail")
                e.kind = EventKind::fail;
            else if (kind == "restore")
                e.kind = EventKind::restore;
            else
                throw InvalidScenario("event kind must be fail or restore");
            sc.events.push_back(e);
        }
        return sc;
    });
}

inline Json sim_report_to_json(const SimReport& report) {
    Json j;
    j["repairs_local"] = report.repairs_local;
    j["repairs_global"] = report.repairs_global;
    j["symbols_read"] = report.symbols_read;
    j["unrecoverable"] = report.unrecoverable;
    Json log = Json::array();
    for (const SimLogEntry& e : report.log) {
        Json entry;
        entry["time"] = e.time;
        entry["node"] = Json::array({e.group, e.slot});
        entry["event"] = e.event;
        entry["action"] = e.action;
        entry["symbols_read"] = e.symbols_read;
        log.push_back(std::move(entry));
    }
    j["log"] = std::move(log);
    return j;
}

}  // namespace nflc
