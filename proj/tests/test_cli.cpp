#include "doctest.h"
#include "oracles.hpp"

#include "rackext/cli.hpp"
#include "rackext/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rackext;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    json body() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("rackext_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write_json(const std::string& name, const json& j) const { return write(name, j.dump()); }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST_CASE("rack verbs") {
    TempDir dir;
    const std::string c3 = dir.write("c3.json", R"({"size": 3, "table": [[1,1,1],[2,2,2],[0,0,0]]})");
    Run r = run({"check-rack", c3});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["rack"] == true);
    CHECK(r.body()["quandle"] == false);

    r = run({"check-quandle", c3});
    CHECK(r.code == cli::kFalse);
    CHECK(r.body()["violation"]["kind"] == "IdempotenceViolation");

    const std::string bad = dir.write("bad.json", R"({"size": 2, "table": [[0,0],[0,1]]})");
    r = run({"check-rack", bad});
    CHECK(r.code == cli::kFalse);
    CHECK(r.body()["violation"]["kind"] == "AxiomR1Violation");

    CHECK(run({"check-rack", dir.write("garbage.json", "{")}).code == cli::kMalformed);
    CHECK(run({"check-rack", dir.write("shape.json", R"({"size": 2, "table": [[0,0]]})")}).code == cli::kMalformed);
    CHECK(run({"check-rack", dir.write("extra.json", R"({"size": 1, "table": [[0]], "x": 1})")}).code ==
          cli::kMalformed);
    CHECK(run({"check-rack", (std::filesystem::temp_directory_path() / "missing_rackext.json").string()}).code ==
          cli::kMalformed);
    CHECK(run({"no-such-verb"}).code == cli::kMalformed);
    CHECK(run({}).code == cli::kMalformed);

    r = run({"orbits", "catalog:r3_plus_point"});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["orbits"] == json::parse("[[0,1,2],[3]]"));

    r = run({"opgroup", "catalog:r3"});
    CHECK(r.body()["order"] == 6);
    r = run({"asgroup", "catalog:c3"});
    CHECK(r.body()["generators"] == 3);
    CHECK(r.body()["relations"].size() == 9);

    const std::string s3 = dir.write_json("s3.json", json{{"size", 6}, {"mult", FinGroup::symmetric(3).table()}});
    r = run({"conj", s3});
    CHECK(r.code == cli::kOk);
    CHECK(io::rack_from_json(r.body()).value() == conj_rack(FinGroup::symmetric(3)));
}

TEST_CASE("catalog export round-trips") {
    Run r = run({"catalog"});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["modules"].size() == load_bundled_catalog().size());
    for (const auto& c : load_bundled_catalog()) {
        r = run({"catalog", "--module", c.name});
        REQUIRE(r.code == cli::kOk);
        CHECK(io::module_from_json(r.body(), io::Resolver{}) == c.module);
    }
    CHECK(run({"catalog", "--module", "nope"}).code == cli::kMalformed);
}

TEST_CASE("module verbs") {
    TempDir dir;
    Run r = run({"module", "make", "--kind", "dihedral", "--rack", "catalog:r3", "--moduli", "3"});
    REQUIRE(r.code == cli::kOk);
    const std::string d3 = dir.write("d3.json", r.out);
    CHECK(io::module_from_json(r.body(), io::Resolver{}) == oracle::module("r3_d3"));

    r = run({"module", "check", d3});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["valid"] == true);
    CHECK(r.body()["flavor"] == "quandle");

    json broken = json::parse(run({"catalog", "--module", "r3_d3"}).out);
    broken["psi"]["0,1"] = json::parse("[[1]]");
    r = run({"module", "check", dir.write_json("broken.json", broken)});
    CHECK(r.code == cli::kFalse);
    CHECK(r.body()["valid"] == false);

    r = run({"module", "make", "--kind", "alexander", "--rack", "catalog:r3", "--orbit", "3:1,1"});
    REQUIRE(r.code == cli::kOk);
    CHECK(io::module_from_json(r.body(), io::Resolver{}) == oracle::module("r3_alex_1_plus_t_z3"));

    r = run({"module", "make", "--kind", "trivial", "--rack", "catalog:c3", "--group", "2"});
    CHECK(r.code == cli::kOk);
    r = run({"module", "make", "--kind", "trivial", "--rack", "catalog:c3", "--group", "2", "--flavor", "quandle"});
    CHECK(r.code == cli::kMalformed);

    r = run({"word-action", "catalog:c3_z5_andr_grana", "--from", "0", "--word", "1 2^-1"});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["terminal"] == 0);
    CHECK(run({"word-action", "catalog:c3_z5", "--from", "0", "--word", "7"}).code == cli::kMalformed);
}

TEST_CASE("extension verbs") {
    TempDir dir;
    const RackModule& m = oracle::module("c3_z5_andr_grana");
    std::mt19937_64 rng(41);
    const ExtResult ext = ext_group(m, Flavor::Rack);
    const FactorSet s = oracle::random_cocycle(rng, m, ext);
    const std::string sigma = dir.write_json("sigma.json", io::factor_set_to_json(m, s));
    const std::string mod = "catalog:c3_z5_andr_grana";

    Run r = run({"cocycle-check", mod, sigma});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["cocycle"] == true);

    r = run({"extend", mod, sigma});
    REQUIRE(r.code == cli::kOk);
    const std::string rack = dir.write("ext.json", r.out);
    CHECK(run({"check-rack", rack}).code == cli::kOk);
    CHECK(run({"extend", mod, sigma}).out == r.out);

    const Cochain u = oracle::random_cochain(rng, m);
    const std::string section = dir.write_json("section.json", json{{"s", io::cochain_to_json(u)}});
    r = run({"extract", mod, rack, section});
    REQUIRE(r.code == cli::kOk);
    CHECK(io::factor_set_from_json(r.body(), m) == add(m, s, coboundary_of(m, u)));
    const std::string tau = dir.write("tau.json", r.out);

    r = run({"equivalent", mod, sigma, tau});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["equivalent"] == true);

    r = run({"split", mod, dir.write_json("zero.json", io::factor_set_to_json(m, zero_factor_set(m)))});
    CHECK(r.code == cli::kOk);

    std::optional<FactorSet> bad;
    while (!bad) {
        FactorSet t = oracle::random_factor_set(rng, m);
        if (!cocycle_check(m, t)) bad = t;
    }
    const std::string bad_file = dir.write_json("bad.json", io::factor_set_to_json(m, *bad));
    r = run({"cocycle-check", mod, bad_file});
    CHECK(r.code == cli::kFalse);
    CHECK(r.body()["violation"]["witness"].size() == 3);
    r = run({"extend", mod, bad_file});
    CHECK(r.code == cli::kFalse);
    CHECK(r.body()["violation"]["kind"] == "AxiomR2Violation");
    CHECK(run({"split", mod, bad_file}).code == cli::kMalformed);

    const std::string semi = dir.write("semi.json", run({"semidirect", "catalog:r3_d3"}).out);
    r = run({"check-quandle", semi});
    CHECK(r.code == cli::kOk);

    CHECK(run({"semidirect", "catalog:conj_s3_z2"}).code == cli::kOk);
    CHECK(run({"semidirect", "catalog:r3_dinf"}).code == cli::kMalformed);
}

TEST_CASE("ext verb") {
    Run r = run({"ext", "catalog:r3_d3", "--quandle", "--brute-force"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.body()["torsion"] == json::parse("[3,3]"));
    CHECK(r.body()["brute_force"]["agrees"] == true);
    CHECK(run({"ext", "catalog:r3_d3", "--quandle", "--brute-force"}).out == r.out);

    r = run({"ext", "catalog:r3_dinf"});
    CHECK(r.code == cli::kOk);
    CHECK(r.body()["orders"].is_null());
    CHECK(run({"ext", "catalog:r3_dinf", "--brute-force"}).code == cli::kCapExceeded);
    CHECK(run({"ext", "catalog:c3_z2", "--brute-force", "--cap", "10"}).code == cli::kCapExceeded);
    CHECK(run({"ext", "catalog:c3_z2", "--quandle"}).code == cli::kMalformed);
    CHECK(run({"ext", "catalog:c3_z2", "--jobs", "0"}).code == cli::kMalformed);
}

TEST_CASE("dynamical verb") {
    TempDir dir;
    json alpha = json::object();
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) alpha[std::to_string(x) + "," + std::to_string(y)] = json::parse("[[0,0],[1,1]]");
    const std::string file = dir.write_json("alpha.json", json{{"s_size", 2}, {"alpha", alpha}});
    Run r = run({"dynamical", "catalog:c3", file});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.body()["size"] == 6);

    alpha["1,1"] = json::parse("[[0,0],[0,1]]");
    r = run({"dynamical", "catalog:c3", dir.write_json("bad.json", json{{"s_size", 2}, {"alpha", alpha}})});
    CHECK(r.code == cli::kFalse);
    CHECK(r.body()["violation"]["kind"] == "Condition1Violation");
}

TEST_CASE("help exits cleanly") {
    const Run r = run({"--help"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("ext") != std::string::npos);
}
