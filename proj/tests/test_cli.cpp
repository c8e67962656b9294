#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nflc/json_io.hpp"
#include "nflc/wire.hpp"

namespace fs = std::filesystem;
using namespace nflc;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "nflc_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = std::string(NFLC_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

const fs::path& field_json() {
    static const fs::path path = [] {
        const fs::path p = work_dir() / "field.json";
        fs::copy_file(fs::path(NFLC_GOLDEN_DIR) / "example_field.json", p,
                      fs::copy_options::overwrite_existing);
        return p;
    }();
    return path;
}

const fs::path& spec_json() {
    static const fs::path path = [] {
        const fs::path p = work_dir() / "spec.json";
        const CliResult r = run_cli("design --field " + field_json().string() +
                                    " --r 3 --s 3 --M 2 --primes auto:3 --out " + p.string());
        REQUIRE(r.exit_code == 0);
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("design writes the golden spec byte for byte", "[cli]") {
    CHECK(slurp(spec_json()) == slurp(fs::path(NFLC_GOLDEN_DIR) / "example_spec.json"));
}

TEST_CASE("design accepts an explicit prime list", "[cli]") {
    const fs::path out = work_dir() / "spec_explicit.json";
    const CliResult r = run_cli("design --field " + field_json().string() +
                                " --r 3 --s 3 --M 2 --primes 17,31,47 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out) == slurp(spec_json()));

    // order does not matter, duplicates do
    const fs::path out2 = work_dir() / "spec_reordered.json";
    CHECK(run_cli("design --field " + field_json().string() +
                  " --r 3 --s 3 --M 2 --primes 47,17,31 --out " + out2.string())
              .exit_code == 0);
    CHECK(slurp(out2) == slurp(spec_json()));
    CHECK(run_cli("design --field " + field_json().string() +
                  " --r 3 --s 3 --M 2 --primes 17,17,31 --out " + out2.string())
              .exit_code == 2);
}

TEST_CASE("design fails with margin on a non-good parameter set", "[cli]") {
    const CliResult r = run_cli("design --field " + field_json().string() +
                                " --r 3 --s 3 --M 2 --primes 17 --out " +
                                (work_dir() / "never.json").string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("margin") != std::string::npos);
    CHECK_FALSE(fs::exists(work_dir() / "never.json"));
}

TEST_CASE("find-primes lists roots", "[cli]") {
    const CliResult r =
        run_cli("find-primes --field " + field_json().string() + " --count 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("17: 5 8 9 12") != std::string::npos);
    CHECK(r.out.find("31: 5 14 17 26") != std::string::npos);
    CHECK(r.out.find("47: 3 18 29 44") != std::string::npos);
}

TEST_CASE("encode and decode round-trip a file", "[cli]") {
    const fs::path payload = work_dir() / "payload.bin";
    std::string data;
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 10; ++i) data.push_back(static_cast<char>(rng() % 256));
    spit(payload, data);

    const fs::path stream = work_dir() / "payload.nflc";
    const fs::path restored = work_dir() / "restored.bin";
    CHECK(run_cli("encode --spec " + spec_json().string() + " --in " + payload.string() +
                  " --out " + stream.string())
              .exit_code == 0);
    CHECK(run_cli("decode --spec " + spec_json().string() + " --in " + stream.string() +
                  " --out " + restored.string())
              .exit_code == 0);
    CHECK(slurp(restored) == data);
}

TEST_CASE("empty files survive the round trip", "[cli]") {
    const fs::path payload = work_dir() / "empty.bin";
    spit(payload, "");
    const fs::path stream = work_dir() / "empty.nflc";
    const fs::path restored = work_dir() / "empty_restored.bin";
    CHECK(run_cli("encode --spec " + spec_json().string() + " --in " + payload.string() +
                  " --out " + stream.string())
              .exit_code == 0);
    CHECK(fs::file_size(stream) > 0);  // one codeword carrying the empty payload
    CHECK(run_cli("decode --spec " + spec_json().string() + " --in " + stream.string() +
                  " --out " + restored.string())
              .exit_code == 0);
    CHECK(slurp(restored).empty());
}

TEST_CASE("reference codeword stream is byte-stable", "[cli]") {
    const fs::path payload = work_dir() / "ref_payload.bin";
    spit(payload, std::string("\xc0\xde", 2));
    const fs::path stream = work_dir() / "ref.nflc";
    CHECK(run_cli("encode --spec " + spec_json().string() + " --in " + payload.string() +
                  " --out " + stream.string())
              .exit_code == 0);
    CHECK(slurp(stream) == slurp(fs::path(NFLC_GOLDEN_DIR) / "reference.nflc"));
}

TEST_CASE("repair prints a recovered symbol", "[cli]") {
    const fs::path payload = work_dir() / "rep_payload.bin";
    spit(payload, "Z");
    const fs::path stream = work_dir() / "rep.nflc";
    REQUIRE(run_cli("encode --spec " + spec_json().string() + " --in " + payload.string() +
                    " --out " + stream.string())
                .exit_code == 0);

    const CliResult r = run_cli("repair --spec " + spec_json().string() + " --in " +
                                stream.string() + " --group 1 --slot 2 --json");
    REQUIRE(r.exit_code == 0);

    // oracle: decode the record directly and re-derive the symbol
    const CodeSpec spec = spec_from_json(Json::parse(slurp(spec_json())));
    std::ifstream in(stream, std::ios::binary);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    const std::vector<Codeword> records = wire_decode_stream(spec, bytes);
    REQUIRE(records.size() == 1);
    const Json j = Json::parse(r.out);
    CHECK(j["symbol"].get<std::uint64_t>() == records[0].symbol(1, 2));
}

TEST_CASE("analyze reports the distance table", "[cli]") {
    const fs::path report = work_dir() / "analysis.json";
    const CliResult r = run_cli("analyze --spec " + spec_json().string() + " --threads 2 --out " +
                                report.string());
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(slurp(report));
    CHECK(j["min_distance"] == 8);
    CHECK(j["lower_bound"] == 5);
    CHECK(j["enumerated"] == 4096);
}

TEST_CASE("simulate consumes a scenario file", "[cli]") {
    Json scenario;
    scenario["stripes"] = 2;
    scenario["seed"] = 7;
    scenario["spec_path"] = spec_json().filename().string();
    scenario["events"] = Json::array({Json{{"time", 1}, {"node", Json::array({0, 2})}, {"kind", "fail"}}});
    const fs::path sc_path = work_dir() / "scenario.json";
    spit(sc_path, scenario.dump(2) + "\n");

    const fs::path report = work_dir() / "sim_report.json";
    const CliResult r =
        run_cli("simulate --scenario " + sc_path.string() + " --out " + report.string());
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(slurp(report));
    CHECK(j["repairs_local"] == 1);
    CHECK(j["symbols_read"] == 3);
    CHECK(j["unrecoverable"] == 0);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    CHECK(run_cli("design --r 3").exit_code == 2);                       // missing required flags
    CHECK(run_cli("no-such-command").exit_code == 2);                    // unknown subcommand
    CHECK(run_cli("analyze --spec /no/such/file.json").exit_code == 2);  // unreadable input
}

TEST_CASE("domain failures exit with 1", "[cli]") {
    const fs::path garbage = work_dir() / "garbage.nflc";
    spit(garbage, "definitely not a codeword");
    CHECK(run_cli("decode --spec " + spec_json().string() + " --in " + garbage.string() +
                  " --out " + (work_dir() / "g.bin").string())
              .exit_code == 1);
    // exhausted prime search is a domain failure as well
    CHECK(run_cli("find-primes --field " + field_json().string() + " --count 1 --ceiling 16")
              .exit_code == 1);
}
