// Command-line surface for the nflc library: code design, field
// construction, split-prime search, file encode/decode, single-symbol
// repair, exhaustive analysis, and the storage-failure simulator.
//
// Exit codes: 0 success, 1 domain failure (not good / undecodable / ...),
// 2 usage error, 3 internal invariant violation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nflc/nflc.hpp"

namespace {

using nflc::BigInt;
using nflc::Json;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nflc::InvalidArgument("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw nflc::InvalidArgument("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nflc::InvalidArgument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw nflc::InvalidArgument(path + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void emit_json(const Json& j, const std::string& out_path, bool to_stdout) {
    const std::string text = dump(j);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw nflc::InvalidArgument("cannot write " + out_path);
        out << text;
    }
    if (to_stdout || out_path.empty()) std::cout << text;
}

struct CommonFlags {
    bool json = false;
    bool allow_unproven = false;
    unsigned threads = 1;
    std::uint64_t seed = 0;
};

nflc::IrreducibilityPolicy policy_of(const CommonFlags& flags) {
    return flags.allow_unproven ? nflc::IrreducibilityPolicy::allow_unproven
                                : nflc::IrreducibilityPolicy::require_certificate;
}

nflc::FieldPtr load_field(const std::string& path, const CommonFlags& flags) {
    nflc::FieldPtr field = nflc::field_from_json(read_json(path), policy_of(flags));
    if (!field->irreducibility_certified())
        std::cerr << "warning: irreducibility of the minimal polynomial is unproven (accepted via "
                     "--allow-unproven)\n";
    return field;
}

nflc::CodeSpec load_spec(const std::string& path, const CommonFlags& flags) {
    return nflc::spec_from_json(read_json(path), policy_of(flags));
}

std::vector<nflc::SplitPrime> resolve_primes(const nflc::NumberField& field,
                                             const std::string& primes_arg, std::uint64_t start,
                                             std::uint64_t ceiling) {
    if (primes_arg.rfind("auto:", 0) == 0) {
        const std::string count_text = primes_arg.substr(5);
        std::size_t used = 0;
        unsigned long count = 0;
        try {
            count = std::stoul(count_text, &used);
        } catch (const std::exception&) {
            throw nflc::InvalidArgument("bad --primes auto count: " + count_text);
        }
        if (used != count_text.size() || count == 0)
            throw nflc::InvalidArgument("bad --primes auto count: " + count_text);
        return nflc::next_split_primes(field, count, start, ceiling);
    }
    std::vector<nflc::SplitPrime> out;
    std::stringstream ss(primes_arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        std::uint64_t p = 0;
        try {
            p = std::stoull(token, &used);
        } catch (const std::exception&) {
            throw nflc::InvalidArgument("bad prime: " + token);
        }
        if (used != token.size()) throw nflc::InvalidArgument("bad prime: " + token);
        if (!nflc::is_totally_split(field, p))
            throw nflc::NotSplit("prime " + std::to_string(p) + " is not totally split in the field");
        out.push_back(nflc::SplitPrime{p, nflc::roots_mod_p(field, p)});
    }
    if (out.empty()) throw nflc::InvalidArgument("--primes must name at least one prime");
    std::sort(out.begin(), out.end(),
              [](const nflc::SplitPrime& a, const nflc::SplitPrime& b) { return a.p < b.p; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].p == out[i - 1].p)
            throw nflc::InvalidArgument("duplicate prime " + std::to_string(out[i].p));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"non-linear locally recoverable codes from number fields"};
    app.require_subcommand(1);
    CommonFlags flags;

    // ---- design ----
    auto* design = app.add_subcommand("design", "validate parameters and emit a code spec");
    std::string design_field, design_primes, design_out;
    unsigned design_r = 0, design_s = 0;
    std::string design_m;
    std::uint64_t design_start = 2, design_ceiling = nflc::kDefaultPrimeCeiling;
    design->add_option("--field", design_field, "number field JSON")->required();
    design->add_option("--r", design_r, "locality")->required();
    design->add_option("--s", design_s, "stack depth")->required();
    design->add_option("--M", design_m, "digit radix (decimal)")->required();
    design->add_option("--primes", design_primes, "auto:L for the first L split primes, or p1,p2,...")
        ->required();
    design->add_option("--start", design_start, "lower bound for auto prime search");
    design->add_option("--ceiling", design_ceiling, "prime search ceiling");
    design->add_option("--out", design_out, "output spec path (stdout when omitted)");
    design->add_flag("--json", flags.json, "machine-readable stdout");
    design->add_flag("--allow-unproven", flags.allow_unproven, "accept uncertified irreducibility");
    design->callback([&] {
        nflc::FieldPtr field = load_field(design_field, flags);
        std::vector<nflc::SplitPrime> primes =
            resolve_primes(*field, design_primes, design_start, design_ceiling);
        const BigInt radix = nflc::bigint_from_decimal(design_m);
        const nflc::GoodCheck check =
            nflc::good_split_check(*field, design_r, design_s, radix, primes);
        if (!check.good) {
            std::cerr << "not a good split code: margin = "
                      << nflc::to_decimal(boost::multiprecision::numerator(check.margin)) << "/"
                      << nflc::to_decimal(boost::multiprecision::denominator(check.margin))
                      << " ~= " << check.margin.convert_to<double>() << " (needs > 1)\n";
            throw nflc::NotGoodCode("parameters fail the injectivity bound");
        }
        nflc::CodeSpec spec =
            nflc::CodeSpec::create(field, design_r, design_s, radix, std::move(primes));
        emit_json(nflc::spec_to_json(spec), design_out, flags.json);
        if (!flags.json)
            std::cerr << "good split code: n=" << spec.length() << " m=" << spec.cover_size()
                      << " dist_lb=" << spec.distance_bound()
                      << " margin~=" << spec.margin().convert_to<double>() << "\n";
    });

    // ---- construct-field ----
    auto* construct = app.add_subcommand("construct-field",
                                         "build a field where given primes are totally split");
    unsigned construct_degree = 0;
    std::string construct_primes, construct_out;
    construct->add_option("--degree", construct_degree, "field degree")->required();
    construct->add_option("--primes", construct_primes, "comma-separated primes, each > degree")
        ->required();
    construct->add_option("--out", construct_out, "output path (stdout when omitted)");
    construct->add_flag("--json", flags.json, "machine-readable stdout");
    construct->callback([&] {
        std::vector<std::uint64_t> primes;
        std::stringstream ss(construct_primes);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (token.empty()) continue;
            try {
                primes.push_back(std::stoull(token));
            } catch (const std::exception&) {
                throw nflc::InvalidArgument("bad prime: " + token);
            }
        }
        const nflc::FieldConstructionCertificate cert =
            nflc::construct_field(construct_degree, primes);
        Json j;
        j["field"] = nflc::field_to_json(*nflc::field_from_certificate(cert));
        j["certificate"] = nflc::certificate_to_json(cert);
        emit_json(j, construct_out, flags.json);
    });

    // ---- find-primes ----
    auto* find = app.add_subcommand("find-primes", "list totally split primes with their roots");
    std::string find_field;
    unsigned find_count = 1;
    std::uint64_t find_start = 2, find_ceiling = nflc::kDefaultPrimeCeiling;
    find->add_option("--field", find_field, "number field JSON")->required();
    find->add_option("--count", find_count, "how many primes")->required();
    find->add_option("--start", find_start, "search from this value");
    find->add_option("--ceiling", find_ceiling, "prime search ceiling");
    find->add_flag("--json", flags.json, "machine-readable stdout");
    find->add_flag("--allow-unproven", flags.allow_unproven, "accept uncertified irreducibility");
    find->callback([&] {
        nflc::FieldPtr field = load_field(find_field, flags);
        const std::vector<nflc::SplitPrime> primes =
            nflc::next_split_primes(*field, find_count, find_start, find_ceiling);
        if (flags.json) {
            Json j = Json::array();
            for (const nflc::SplitPrime& sp : primes) j.push_back(nflc::split_prime_to_json(sp));
            std::cout << dump(j);
        } else {
            for (const nflc::SplitPrime& sp : primes) {
                std::cout << sp.p << ":";
                for (std::uint64_t r : sp.roots) std::cout << " " << r;
                std::cout << "\n";
            }
        }
    });

    // ---- encode ----
    auto* encode_cmd = app.add_subcommand("encode", "encode a file into a codeword stream");
    std::string enc_spec, enc_in, enc_out;
    encode_cmd->add_option("--spec", enc_spec, "code spec JSON")->required();
    encode_cmd->add_option("--in", enc_in, "input payload file")->required();
    encode_cmd->add_option("--out", enc_out, "output codeword stream")->required();
    encode_cmd->add_flag("--allow-unproven", flags.allow_unproven, "accept uncertified irreducibility");
    encode_cmd->callback([&] {
        const nflc::CodeSpec spec = load_spec(enc_spec, flags);
        const std::vector<std::uint8_t> data = read_file(enc_in);
        const std::size_t chunk = nflc::payload_capacity(spec);
        if (chunk == 0 && !data.empty())
            throw nflc::CapacityExceeded("spec capacity is zero bytes per codeword");
        std::vector<std::uint8_t> out;
        std::size_t offset = 0;
        do {
            const std::size_t take = std::min(chunk, data.size() - offset);
            const std::span<const std::uint8_t> piece(data.data() + offset, take);
            const nflc::Codeword cw = nflc::encode(spec, nflc::msg_from_bytes(spec, piece));
            const std::vector<std::uint8_t> bytes = nflc::wire_encode(spec, cw);
            out.insert(out.end(), bytes.begin(), bytes.end());
            offset += take;
        } while (offset < data.size());
        write_file(enc_out, out);
    });

    // ---- decode ----
    auto* decode_cmd = app.add_subcommand("decode", "decode a codeword stream back into a file");
    std::string dec_spec, dec_in, dec_out;
    decode_cmd->add_option("--spec", dec_spec, "code spec JSON")->required();
    decode_cmd->add_option("--in", dec_in, "input codeword stream")->required();
    decode_cmd->add_option("--out", dec_out, "output payload file")->required();
    decode_cmd->add_flag("--allow-unproven", flags.allow_unproven, "accept uncertified irreducibility");
    decode_cmd->callback([&] {
        const nflc::CodeSpec spec = load_spec(dec_spec, flags);
        const std::vector<std::uint8_t> data = read_file(dec_in);
        std::vector<std::uint8_t> out;
        for (const nflc::Codeword& cw : nflc::wire_decode_stream(spec, data)) {
            const nflc::MessagePoly msg = nflc::global_decode(spec, cw);
            const std::vector<std::uint8_t> piece = nflc::msg_to_bytes(spec, msg);
            out.insert(out.end(), piece.begin(), piece.end());
        }
        write_file(dec_out, out);
    });

    // ---- repair ----
    auto* repair = app.add_subcommand("repair", "recover one erased symbol locally");
    std::string rep_spec, rep_in;
    unsigned rep_group = 0, rep_slot = 0;
    std::size_t rep_index = 0;
    repair->add_option("--spec", rep_spec, "code spec JSON")->required();
    repair->add_option("--in", rep_in, "codeword stream")->required();
    repair->add_option("--group", rep_group, "group index")->required();
    repair->add_option("--slot", rep_slot, "slot index")->required();
    repair->add_option("--index", rep_index, "record index in the stream (default 0)");
    repair->add_flag("--json", flags.json, "machine-readable stdout");
    repair->add_flag("--allow-unproven", flags.allow_unproven, "accept uncertified irreducibility");
    repair->callback([&] {
        const nflc::CodeSpec spec = load_spec(rep_spec, flags);
        const std::vector<std::uint8_t> data = read_file(rep_in);
        const std::vector<nflc::Codeword> records = nflc::wire_decode_stream(spec, data);
        if (rep_index >= records.size())
            throw nflc::InvalidArgument("record index beyond the stream");
        const std::uint64_t symbol = nflc::local_recover(spec, records[rep_index], rep_group, rep_slot);
        if (flags.json) {
            Json j;
            j["group"] = rep_group;
            j["slot"] = rep_slot;
            j["symbol"] = symbol;
            std::cout << dump(j);
        } else {
            std::cout << "group " << rep_group << " slot " << rep_slot << " symbol " << symbol
                      << "\n";
        }
    });

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "exhaustive minimum-distance report");
    std::string an_spec, an_out;
    bool an_force = false;
    analyze->add_option("--spec", an_spec, "code spec JSON")->required();
    analyze->add_option("--out", an_out, "report path (stdout when omitted)");
    analyze->add_option("--threads", flags.threads, "worker threads");
    analyze->add_flag("--force", an_force, "analyze even when the code is large");
    analyze->add_flag("--json", flags.json, "machine-readable stdout");
    analyze->add_flag("--allow-unproven", flags.allow_unproven, "accept uncertified irreducibility");
    analyze->callback([&] {
        const nflc::CodeSpec spec = load_spec(an_spec, flags);
        const nflc::DistanceReport report = nflc::brute_min_distance(spec, flags.threads, an_force);
        const Json j = nflc::distance_report_to_json(spec, report);
        emit_json(j, an_out, flags.json);
        if (!flags.json && !an_out.empty())
            std::cout << "min_distance " << report.min_distance << "\n"
                      << "lower_bound  " << report.lower_bound << "\n"
                      << "enumerated   " << report.enumerated << "\n";
    });

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "replay a failure scenario");
    std::string sim_scenario, sim_spec, sim_out;
    simulate->add_option("--scenario", sim_scenario, "scenario JSON")->required();
    simulate->add_option("--spec", sim_spec, "code spec JSON (overrides the scenario's)");
    simulate->add_option("--out", sim_out, "report path (stdout when omitted)");
    simulate->add_option("--threads", flags.threads, "worker threads");
    simulate->add_option("--seed", flags.seed, "override the scenario seed");
    simulate->add_flag("--json", flags.json, "machine-readable stdout");
    simulate->add_flag("--allow-unproven", flags.allow_unproven, "accept uncertified irreducibility");
    simulate->callback([&] {
        const Json sc_json = read_json(sim_scenario);
        nflc::Scenario sc = nflc::scenario_from_json(sc_json);
        if (simulate->count("--seed") > 0) sc.seed = flags.seed;
        std::optional<nflc::CodeSpec> spec;
        if (!sim_spec.empty()) {
            spec = load_spec(sim_spec, flags);
        } else if (sc_json.contains("spec")) {
            spec = nflc::spec_from_json(sc_json.at("spec"), policy_of(flags));
        } else if (sc_json.contains("spec_path")) {
            const std::filesystem::path base =
                std::filesystem::path(sim_scenario).parent_path();
            spec = load_spec((base / sc_json.at("spec_path").get<std::string>()).string(), flags);
        } else {
            throw nflc::InvalidArgument(
                "scenario carries no spec; embed \"spec\", set \"spec_path\", or pass --spec");
        }
        const nflc::SimReport report = nflc::run_scenario(*spec, sc, flags.threads);
        emit_json(nflc::sim_report_to_json(report), sim_out, flags.json);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nflc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case nflc::ErrorKind::domain:
                return 1;
            case nflc::ErrorKind::usage:
                return 2;
            case nflc::ErrorKind::internal:
                return 3;
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
