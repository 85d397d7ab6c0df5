#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path tmp_dir() {
    static fs::path d = [] {
        auto p = fs::temp_directory_path() / ("morita_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

fs::path data(const std::string& name) {
    const char* d = std::getenv("MORITA_DATA");
    return fs::path(d ? d : "data") / name;
}

Run cli(const std::string& args) {
    const char* bin = std::getenv("MORITA_CLI");
    REQUIRE(bin != nullptr);
    auto o = tmp_dir() / "stdout", e = tmp_dir() / "stderr";
    std::string cmd = std::string("\"") + bin + "\" " + args + " >\"" + o.string() + "\" 2>\"" + e.string() + "\"";
    int st = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

fs::path write(const std::string& name, const std::string& text) {
    auto p = tmp_dir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::vector<std::size_t> witness(const std::string& err) {
    std::vector<std::size_t> w;
    auto pos = err.find("witness:");
    if (pos == std::string::npos) return w;
    std::istringstream in(err.substr(pos + 8));
    std::size_t x;
    while (in >> x) w.push_back(x);
    return w;
}

}  // namespace

TEST_CASE("catalog listing and dumps") {
    auto r = cli("catalog");
    CHECK(r.code == 0);
    CHECK(r.out.find("I3") != std::string::npos);
    auto d = cli("catalog I3");
    REQUIRE(d.code == 0);
    auto j = json::parse(d.out);
    CHECK(j["n"] == 34);
    // dumped table validates again
    auto p = write("i3.json", d.out);
    CHECK(cli("validate " + q(p)).code == 0);
    CHECK(cli("catalog nosuch").code == 2);
}

TEST_CASE("invariants report has fixed lines") {
    auto r = cli("invariants catalog:I3");
    REQUIRE(r.code == 0);
    CHECK(r.out == "0-simplifying: true\nfundamental: true\nidempotents: 8\nd-classes: 4\n");
    auto c = cli("invariants catalog:chain3");
    REQUIRE(c.code == 0);
    CHECK(c.out.find("0-simplifying: false") != std::string::npos);
    auto z = cli("invariants catalog:zgroup2");
    CHECK(z.out.find("fundamental: false") != std::string::npos);
}

TEST_CASE("verification failures exit 1 with a witness") {
    auto r = cli("validate " + q(data("broken_assoc.json")));
    CHECK(r.code == 1);
    CHECK(r.err.find("NotAssociative") != std::string::npos);
    auto w = witness(r.err);
    REQUIRE(w.size() == 3);
    oracle::Table t{0, 0, 0, 0, 1, 2, 0, 1, 1};
    auto ab = oracle::at(t, 3, w[0], w[1]), bc = oracle::at(t, 3, w[1], w[2]);
    CHECK(oracle::at(t, 3, ab, w[2]) != oracle::at(t, 3, w[0], bc));

    auto b2 = cli("validate catalog:B2");
    CHECK(b2.code == 1);
    CHECK(b2.err.find("MissingJoin") != std::string::npos);

    auto m = cli("module " + q(data("i2_on_points.json")));
    CHECK(m.code == 1);
    CHECK(m.err.find("JoinMissing") != std::string::npos);
    CHECK(witness(m.err) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("malformed input exits 2") {
    auto bad = write("bad.json", "{\n  \"n\": 2,\n  \"mult\": [[0, 0], [0, 1]\n");
    auto r = cli("validate " + q(bad));
    CHECK(r.code == 2);
    CHECK(r.err.find("BadInput") != std::string::npos);
    CHECK(r.err.find(":4:") != std::string::npos);

    auto range = write("range.json", R"({"n": 2, "mult": [[0, 0], [0, 7]]})");
    auto o = cli("validate " + q(range));
    CHECK(o.code == 2);
    CHECK(o.err.find("OutOfRange") != std::string::npos);
    CHECK(o.err.find("row 1 column 1") != std::string::npos);

    CHECK(cli("validate").code == 2);
    CHECK(cli("frobnicate x").code == 2);
    CHECK(cli("validate " + q(tmp_dir() / "missing.json")).code == 2);
    CHECK(cli("--max-quadruples 10 enlarge " + q(data("running_bimodule.json"))).code == 2);
}

TEST_CASE("lcc size matches brute-force closed ideals") {
    for (int n = 1; n <= 3; ++n) {
        INFO(n);
        auto r = cli("lcc --quiet catalog:I" + std::to_string(n));
        REQUIRE(r.code == 0);
        auto j = json::parse(r.out);
        if (n <= 2) {
            auto t = oracle::symmetric_inverse_table(n);
            CHECK(j["size"] == oracle::closed_ideals(t, j["ground"].get<std::size_t>()).size());
        }
        CHECK(j["partial_units"].size() == j["ground"]);
    }
    auto r = cli("lcc catalog:I3 --max-size 100");
    CHECK(r.code == 2);
    CHECK(r.err.find("TooLarge") != std::string::npos);
}

TEST_CASE("module, sheaf and presentation commands") {
    CHECK(cli("module " + q(data("i2_on_subsets.json"))).code == 0);
    CHECK(cli("sheaf " + q(data("i2_on_subsets.json"))).code == 0);
    CHECK(cli("sheaf --self catalog:I2").code == 0);
    CHECK(cli("present --pseudogroup catalog:I2").code == 0);
    auto p = cli("present --quiet " + q(data("two_generators.json")));
    REQUIRE(p.code == 0);
    // x0 ∨ x1 = x2 leaves 0, x0, x1 and the top
    CHECK(json::parse(p.out)["size"] == 4);
}

TEST_CASE("certify the running bimodule") {
    auto r = cli("certify catalog:I1 catalog:I2 " + q(data("running_bimodule.json")));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Morita equivalent as pseudogroups: true") != std::string::npos);
    auto out = tmp_dir() / "cert.json";
    auto c = cli("--quiet certify catalog:I1 catalog:I2 " + q(data("running_bimodule.json")) + " --out " + q(out));
    REQUIRE(c.code == 0);
    CHECK(c.out.empty());
    auto j = json::parse(slurp(out));
    CHECK(j["u_size"] == 34);
    CHECK(j["x_size"] == 3);
    // ψ onto the extracted bimodule is a bijection of X
    auto psi = j["round_trip"].get<std::vector<std::size_t>>();
    std::sort(psi.begin(), psi.end());
    CHECK(psi == std::vector<std::size_t>{0, 1, 2});
    CHECK(j["morita_equivalent"] == true);
    CHECK(j["invariants"]["d_classes"]["s"] == 2);
    CHECK(j["invariants"]["d_classes"]["t"] == 3);
    CHECK(j["e1_witnesses"]["t"].size() == 7);
    // deterministic
    auto again = cli("--quiet certify catalog:I1 catalog:I2 " + q(data("running_bimodule.json")));
    CHECK(json::parse(again.out) == j);

    // S does not match the bimodule's left semigroup
    auto wrong = cli("certify catalog:I2 catalog:I2 " + q(data("running_bimodule.json")));
    CHECK(wrong.code != 0);
    CHECK_FALSE(wrong.err.empty());
}

TEST_CASE("extract then certify round trip") {
    auto b = tmp_dir() / "extracted.json";
    REQUIRE(cli("--quiet extract catalog:I3 --e 1 --f 28 --out " + q(b)).code == 0);
    auto j = json::parse(slurp(b));
    CHECK(j["x_size"] == 4);
    auto s = write("s.json", j["s"].dump());
    auto r = cli("--quiet certify " + q(s) + " catalog:I3 " + q(b));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["u_size"] == 209);
    // the zero corner is not an enlargement
    auto z = cli("extract catalog:I2 --e 0 --f 5");
    CHECK(z.code == 1);
    CHECK(z.err.find("E2Fails") != std::string::npos);
}
