#include "kacmod/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace kacmod;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> a) {
    std::ostringstream o, e;
    const int c = cli::run(a, o, e);
    return {c, o.str(), e.str()};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("complex and label parsing") {
        CHECK(cli::parse_complex("0.37+1.13i") == cplx(0.37, 1.13));
        CHECK(cli::parse_complex("1.1i") == cplx(0, 1.1));
        CHECK(cli::parse_complex("-2") == cplx(-2, 0));
        CHECK(cli::parse_complex("-0.5-i") == cplx(-0.5, -1));
        CHECK(cli::parse_complex("1e-3+2e-2i") == cplx(1e-3, 2e-2));
        CHECK_THROWS(cli::parse_complex("abc"));
        CHECK(cli::parse_complex_list("0.1+0.2i,0.3") == std::vector<cplx>{{0.1, 0.2}, {0.3, 0}});
        CHECK(cli::parse_labels("1,0,2") == std::vector<int>{1, 0, 2});
        CHECK_THROWS(cli::parse_labels("1,-1"));
    }

    TEST_CASE("config parsing") {
        const auto c = cli::parse_config("# comment\ndepth = 5\ntol=1e-7\nformat=json\ntau = \"0.1+1.2i\"\n");
        CHECK(c.depth == 5);
        CHECK(c.tol == 1e-7);
        CHECK(c.format == cli::Format::Json);
        CHECK(c.tau == "0.1+1.2i");
        CHECK_THROWS(cli::parse_config("depth=0"));
        CHECK_THROWS(cli::parse_config("tol=2"));
        CHECK_THROWS(cli::parse_config("colour=blue"));
        CHECK_THROWS(cli::parse_config("depth"));
    }

    TEST_CASE("thread count from the environment") {
        setenv("KACMOD_THREADS", "3", 1);
        CHECK(cli::load_config("").threads == 3);
        setenv("KACMOD_THREADS", "x", 1);
        CHECK_THROWS(cli::load_config(""));
        unsetenv("KACMOD_THREADS");
        CHECK(cli::load_config("").threads == 1);
    }

    TEST_CASE("stable float formatting") {
        const auto j = cli::stable(nlohmann::json{{"x", 0.1 + 0.2}, {"v", {1.0 / 3.0}}});
        CHECK(j.dump() == R"({"v":[0.333333333333333],"x":0.3})");
    }

    TEST_CASE("usage errors exit with 2") {
        auto r = run({"roots", "--rank", "1", "--bogus"});
        CHECK(r.code == 2);
        CHECK(r.err.find("Usage") != std::string::npos);
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"weights", "--rank", "9", "--level", "2"}).code == 2);
        CHECK(run({"weights", "--rank", "2", "--level", "3"}).code == 2);
        CHECK(run({"char", "--rank", "1", "--labels", "1,0,0"}).code == 2);
        CHECK(run({"verify", "s-lemma", "--which", "sideways", "--rank", "1"}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("dumps") {
        auto r = run({"roots", "--rank", "2", "--json"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["labels"] == std::vector<int>{1, 2, 2});
        CHECK(j["simple_roots"]["I"].size() == 3);
        r = run({"weights", "--rank", "2", "--level", "2", "--json"});
        CHECK(nlohmann::json::parse(r.out)["count"] == 3);
        r = run({"char", "--rank", "1", "--labels", "1,0", "--depth", "2", "--csv"});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("q_degree,weight,coefficient\n", 0) == 0);
        r = run({"smatrix", "--kind", "aII", "--rank", "1", "--level", "2", "--json"});
        CHECK(nlohmann::json::parse(r.out)["entries"].size() == 2);
        r = run({"super", "osp", "--N", "3", "--json"});
        CHECK(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["dim"] == 7);
    }

    TEST_CASE("checks and verifiers") {
        CHECK(run({"check", "denominator", "--rank", "1", "--depth", "10"}).code == 0);
        CHECK(run({"check", "denominator", "--rank", "1", "--depth", "6", "--skip-factor", "2"}).code == 1);
        auto r = run({"verify", "s-lemma", "--which", "twisted-I", "--rank", "1", "--level", "2", "--labels", "1,0"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["pass"] == true);
        CHECK(j["metadata"]["theta_tol"] == 1e-10);
        CHECK(j["metadata"].contains("series_depth"));
        CHECK(run({"verify", "t-lemma", "--which", "plain-II", "--rank", "2", "--level", "2"}).code == 0);
        CHECK(run({"verify", "prop", "--which", "plain-II", "--rank", "1", "--level", "2", "--law", "T"}).code == 0);
        CHECK(run({"verify", "sl2", "--rank", "1", "--level", "2"}).code == 0);
        CHECK(run({"verify", "poisson", "--rank", "2", "--a", "0.3,0.1+0.2i", "--tau", "0.4+1.3i"}).code == 0);
        CHECK(run({"verify", "sinprod", "--N", "4"}).code == 0);
        CHECK(run({"super", "verify", "--rank", "1", "--level", "2", "--depth", "6"}).code == 0);
        // a bad sample point is reported as a failure, not a crash
        CHECK(run({"verify", "prop", "--which", "plain-I", "--rank", "1", "--level", "2", "--z", "0"}).code == 1);
    }

    TEST_CASE("deterministic output") {
        const std::vector<std::string> a{"verify", "s-lemma", "--which", "4.2", "--rank", "2", "--level", "2", "--json"};
        CHECK(run(a).out == run(a).out);
    }

    TEST_CASE("config file feeds defaults") {
        const std::string path = "kacmod_test_config.txt";
        {
            std::ofstream f(path);
            f << "tau = 0.2+1.4i\nz = 0.05+0.01i\nformat = json\n";
        }
        auto r = run({"--config", path, "verify", "s-zero", "--which", "plain-I", "--rank", "1"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["metadata"]["point"]["tau"][1] == 1.4);
        std::remove(path.c_str());
        CHECK(run({"--config", "/nonexistent/file", "roots", "--rank", "1"}).code == 2);
    }

    TEST_CASE("suite") {
        const std::string path = "kacmod_test_report.json";
        auto r = run({"suite", "--quick", "--report", path});
        CHECK(r.code == 0);
        std::ifstream f(path);
        const auto j = nlohmann::json::parse(f);
        CHECK(j["pass"] == true);
        CHECK(j["criteria"].size() == 12);
        std::remove(path.c_str());
        CHECK(run({"suite", "--criteria", "13"}).code == 2);
    }
}
