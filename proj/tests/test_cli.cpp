#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cli.hpp"
#include "loophom/page_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace loophom;

namespace {

struct Outcome {
    int status;
    std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "loop-cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "loop_cli_test_" + name; }

}  // namespace

TEST_CASE("compute prints the even-sphere table") {
    const auto r = run_cli({"compute", "s^n:even:2", "--max", "12"});
    CHECK(r.status == 0);
    CHECK(r.out.find("    -2  Z\n") != std::string::npos);
    CHECK(r.out.find("    -1  Z\n") != std::string::npos);
    CHECK(r.out.find("     0  Z + Z/2\n") != std::string::npos);
    CHECK(r.out.find("     1  Z\n") != std::string::npos);
    CHECK(r.out.find("d_2(y) = 2*x*y^2") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    // ordered from -dim upward
    CHECK(r.out.find("    -2  Z") < r.out.find("    12  Z"));
}

TEST_CASE("CP^1 and S^2 produce identical groups") {
    const auto a = run_cli({"compute", "cp^n:1", "--max", "12", "--format", "json"});
    const auto b = run_cli({"compute", "--space", "s^n:even:2", "--max", "12", "--format", "json"});
    REQUIRE(a.status == 0);
    REQUIRE(b.status == 0);
    CHECK(Json::parse(a.out)["groups"] == Json::parse(b.out)["groups"]);
}

TEST_CASE("the circle is answered in closed form") {
    const auto r = run_cli({"compute", "s1"});
    CHECK(r.status == 0);
    CHECK(r.out.find("Z[t,t^{-1}] (x) E(x)") != std::string::npos);
    CHECK(r.out.find("     0  Z[t,t^-1]") != std::string::npos);
    CHECK(run_cli({"verify", "s1"}).status == 0);
}

TEST_CASE("verify passes on the presets") {
    for (const auto& args : std::vector<std::vector<std::string>>{{"verify", "s^n:odd:3"},
                                                                  {"verify", "cp^n:3"},
                                                                  {"verify", "s^n:even:4", "--sign", "-"},
                                                                  {"verify", "s^n:even:6", "--coeff", "q"}}) {
        CAPTURE(args[1]);
        const auto r = run_cli(args);
        CHECK(r.status == 0);
        CHECK(r.out.find("FAIL") == std::string::npos);
        CHECK(r.out.find("[pass] sign independence") != std::string::npos);
    }
}

TEST_CASE("verify checks a candidate presentation file") {
    const std::string good = temp_path("good.txt"), bad = temp_path("bad.txt");
    {
        std::ofstream f(good);
        f << "# E(z) (x) Z[x,y] / (x^2, x z, 2 x y)\n"
          << "z (-2,1) exterior\nx (-2,0) polynomial\ny (0,2) polynomial\n"
          << "relation x^2\nrelation x*z\nrelation 2*x*y\n"
          << "assign z x*y\nassign x x\nassign y y^2\n";
    }
    {
        std::ofstream f(bad);
        f << "z (-2,1) exterior\nx (-2,0) polynomial\ny (0,2) polynomial\n"
          << "relation x^2\nrelation x*z\n"
          << "assign z x*y\nassign x x\nassign y y^2\n";
    }
    const auto ok = run_cli({"verify", "s^n:even:2", "--max", "16", "--presentation", good});
    CHECK(ok.status == 0);
    const auto fail = run_cli({"verify", "s^n:even:2", "--max", "16", "--presentation", bad});
    CHECK(fail.status == 1);
    CHECK(fail.out.find("[FAIL] candidate") != std::string::npos);
    CHECK(fail.out.find("rank mismatch") != std::string::npos);
    std::remove(good.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("pages renders arrows") {
    const auto even = run_cli({"pages", "s^n:even:2", "--page", "2", "--max", "6", "--format", "diagram"});
    CHECK(even.status == 0);
    CHECK(even.out.find("(0,1) -> (-2,2)  [[2]]") != std::string::npos);
    CHECK(even.out.find("(0,2) -> (-2,3)  [[0]]") != std::string::npos);

    const auto odd = run_cli({"pages", "s^n:odd:3", "--page", "3", "--max", "6", "--format", "diagram"});
    CHECK(odd.status == 0);
    CHECK(odd.out.find("->") == std::string::npos);

    const auto cp = run_cli({"pages", "cp^n:2", "--page", "4", "--max", "8", "--format", "diagram"});
    CHECK(cp.out.find("(0,1) -> (-4,4)  [[3]]  z |-> 3*x^2*y") != std::string::npos);
    CHECK(cp.out.find("z*y |-> 3*x^2*y^2") != std::string::npos);

    const auto later = run_cli({"pages", "s^n:even:2", "--page", "3", "--max", "6"});
    CHECK(later.out.find("(0,2)  Z/2") == std::string::npos);
    CHECK(later.out.find("(-2,2)  Z/2") != std::string::npos);

    CHECK(run_cli({"pages", "s^n:even:2", "--page", "1"}).status == 2);
}

TEST_CASE("universal traces the derivation") {
    for (const std::string n : {"2", "4"}) {
        CAPTURE(n);
        const auto r = run_cli({"universal", n});
        CHECK(r.status == 0);
        CHECK(r.out.find("step 4 [duality] d_" + n + "(y) = +-2*x*y^2 in the loop homology page") != std::string::npos);
        CHECK(r.out.find("Brown-Shih") != std::string::npos);
        CHECK(r.out.find("consistent\n") != std::string::npos);
        const auto j = Json::parse(run_cli({"universal", n, "--format", "json"}).out);
        CHECK(j["consistent"] == true);
        CHECK(j["solutions"] == 4);
    }
    CHECK(run_cli({"universal", "3"}).status == 2);
}

TEST_CASE("output is deterministic and json round-trips") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"compute", "cp^n:2", "--max", "10", "--format", "json"},
             {"verify", "s^n:even:2", "--max", "10", "--format", "json"},
             {"pages", "s^n:even:4", "--page", "4", "--max", "10", "--format", "json"},
             {"compute", "s1", "--format", "json"}}) {
        CAPTURE(args[1]);
        const auto a = run_cli(args), b = run_cli(args);
        CHECK(a.out == b.out);
        const Json j = Json::parse(a.out);
        CHECK(j.dump(2) + "\n" == a.out);
    }
    const Json j = Json::parse(run_cli({"compute", "s^n:even:2", "--max", "4", "--format", "json"}).out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"space", "max_total_degree", "coefficients", "sign", "differentials", "groups",
                                           "presentation", "checks", "einf"});
    CHECK(j["groups"][2] == Json{{"degree", 0}, {"free_rank", 1}, {"torsion", {2}}});
}

TEST_CASE("exit status contract") {
    const auto bad_space = run_cli({"compute", "t2"});
    CHECK(bad_space.status == 2);
    CHECK(bad_space.err.find("invalid space") != std::string::npos);
    CHECK(run_cli({"compute", "s^n:even:4", "--max", "-5"}).status == 2);
    CHECK(run_cli({"compute", "s^n:even:4", "--coeff", "r"}).status != 0);
    CHECK(run_cli({"compute"}).status == 2);

    const std::string path = temp_path("out.txt");
    const auto r = run_cli({"compute", "s^n:odd:5", "--max", "8", "--out", path});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == run_cli({"compute", "s^n:odd:5", "--max", "8"}).out);
    std::remove(path.c_str());
}
