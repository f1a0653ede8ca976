#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "zetakit/cli.hpp"
#include "zetakit/report.hpp"

using namespace zetakit;
using zetakit::test::data_path;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("validate: clean file, inhomogeneous equation, non-prime p") {
    Run ok = cli({"validate", data_path("elliptic_f5.var")});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["diagnostics"].empty());

    {
        std::ofstream f("bad_inhom.var");
        f << "p=5\na=1\nambient=projective\nn=2\nvars=x,z,y\ny^2*z - x^2\n";
    }
    Run inhom = cli({"validate", "bad_inhom.var"});
    CHECK(inhom.code == 2);
    json d = json::parse(inhom.out)["diagnostics"];
    REQUIRE(d.size() == 1);
    CHECK(d[0]["message"].get<std::string>().find("homogeneous") != std::string::npos);
    CHECK(d[0]["line"] == 6);

    {
        std::ofstream f("bad_p.var");
        f << "p=6\na=1\nambient=affine\nn=1\nvars=t\n";
    }
    Run notprime = cli({"validate", "bad_p.var"});
    CHECK(notprime.code == 2);
    CHECK(json::parse(notprime.out)["diagnostics"][0]["message"].get<std::string>().find("not prime") !=
          std::string::npos);
}

TEST_CASE("zeta subcommand reproduces the elliptic reconstruction") {
    Run r = cli({"zeta", data_path("elliptic_f5.var"), "--B", "6", "--guard", "2", "--bounds", "2,2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["rational"]["num"] == json::array({"1", "3", "5"}));
    CHECK(j["rational"]["den"] == json::array({"1", "-6", "5"}));
    CHECK(j["counts"][0] == 9);

    // reconstruction bounds too small: exit 4, honest no-match
    Run nomatch = cli({"zeta", data_path("elliptic_f5.var"), "--B", "4", "--guard", "2", "--bounds", "1,1"});
    CHECK(nomatch.code == 4);
    CHECK(json::parse(nomatch.out)["rational"].is_null());
}

TEST_CASE("exit codes: usage, input, budget") {
    CHECK(cli({"nonsense"}).code == 1);
    CHECK(cli({"zeta", "no_such_file.var"}).code == 2);
    CHECK(cli({"zeta", data_path("elliptic_f5.var"), "--B", "4", "--budget", "10"}).code == 3);
    CHECK(cli({"np", "--poly", "1,3,5", "--abs", "complex"}).code == 1);
}

TEST_CASE("np and split subcommands") {
    Run np = cli({"np", "--poly", "1,3,5", "--p", "5", "--abs", "p"});
    REQUIRE(np.code == 0);
    json j = json::parse(np.out);
    CHECK(j["polygon"]["segments"].size() == 2);
    CHECK(j["polygon"]["segments"][0]["slope"] == "0");
    CHECK(j["polygon"]["segments"][1]["slope"] == "1");

    Run sp = cli({"split", "--poly", "1,3,5", "--p", "5", "--m", "3"});
    REQUIRE(sp.code == 0);
    json js = json::parse(sp.out);
    REQUIRE(js["factors"].size() == 2);
    CHECK(js["factors"][0]["slope"] == "0");
}

TEST_CASE("cycles and poleprobe subcommands") {
    Run cy = cli({"cycles", "--divisors", "--n", "2", "--q", "2", "--dmax", "3", "--brute-dmax", "2"});
    REQUIRE(cy.code == 0);
    json j = json::parse(cy.out);
    // degree 3: M(3) = N(3) + N(1)N(2) + C(N(1)+2, 3) forces N(3) = 694,
    // and W(3) = 3 N(3) + N(1) = 2089
    CHECK(j["table"]["N"] == json::array({"7", "35", "694"}));
    CHECK(j["table"]["M"] == json::array({"7", "63", "1023"}));
    CHECK(j["table"]["W"] == json::array({"7", "77", "2089"}));
    CHECK(j["identities_verified"] == true);
    CHECK(j["brute_checked"] == json::array({7, 35}));

    Run pp = cli({"poleprobe", "--divisors", "--n", "2", "--q", "2", "--p", "2", "--m", "10", "--rhomax",
                  "2", "--dmax", "12"});
    REQUIRE(pp.code == 0);
    json jp = json::parse(pp.out);
    CHECK(jp["report"]["rho"] == 1);
    CHECK(jp["report"]["stabilized_value"] == "1023");
}

TEST_CASE("family subcommands at desk scale") {
    Run mom = cli({"moments", data_path("gm_const_f5.fam"), "--k", "2", "--B", "5", "--bounds", "1,1"});
    REQUIRE(mom.code == 0);
    json j = json::parse(mom.out);
    CHECK(j["rational"]["num"] == json::array({"1", "-125"}));
    CHECK(j["rational"]["den"] == json::array({"1", "-25"}));

    Run pure = cli({"purelfn", data_path("legendre_f5.fam"), "--k", "1", "--s", "0", "--B", "3", "--m", "1"});
    REQUIRE(pure.code == 0);
    CHECK(json::parse(pure.out)["series"]["ring"] == "mod 5^1");

    Run cong = cli({"congruence", data_path("legendre_f5.fam"), "--k", "1", "--B", "3", "--m", "1"});
    REQUIRE(cong.code == 0);
    CHECK(json::parse(cong.out)["ok"] == true);
    CHECK(json::parse(cong.out)["M"] == 4);

    Run unit = cli({"unitroot", data_path("legendre_f5.fam"), "--k", "1", "--B", "3", "--m", "1"});
    REQUIRE(unit.code == 0);
    CHECK(json::parse(unit.out)["ok"] == true);

    Run strat = cli({"stratify", data_path("legendre_f5.fam"), "--B-base", "1", "--csv", "strata.csv"});
    REQUIRE(strat.code == 0);
    CHECK(json::parse(strat.out)["report"]["entries"].size() == 3);
    std::string csv = slurp("strata.csv");
    CHECK(csv.find("point,slope,d,D") == 0);

    Run scan = cli({"ordinary-scan", "--poly", "y^2 - x^3 - x - 1", "--pmax", "20"});
    REQUIRE(scan.code == 0);
    json sj = json::parse(scan.out);
    CHECK(sj["report"]["envelope_equals_hp"] == true);
}

TEST_CASE("reports embed config and input hashes") {
    Run r = cli({"zeta", data_path("p1_f3.var"), "--B", "5", "--bounds", "0,2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.contains("config"));
    CHECK(j["config"]["B"] == 5);
    CHECK(j["input_hash"].get<std::string>().rfind("fnv1a:", 0) == 0);
}

TEST_CASE("worker count never changes report bytes") {
    for (int workers : {1, 8}) {
        std::string out = "det_w" + std::to_string(workers) + ".json";
        Run r = cli({"zeta", data_path("elliptic_f5.var"), "--B", "5", "--bounds", "2,2", "--guard", "1",
                     "--workers", std::to_string(workers), "--out", out});
        REQUIRE(r.code == 0);
    }
    CHECK(slurp("det_w1.json") == slurp("det_w8.json"));
}
