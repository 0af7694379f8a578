#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#ifndef KHESS_CLI_PATH
#error "KHESS_CLI_PATH must point at the built binary"
#endif
#ifndef KHESS_TMP_DIR
#define KHESS_TMP_DIR "."
#endif

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(KHESS_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) { return std::string(KHESS_TMP_DIR) + "/" + name; }

}  // namespace

TEST_CASE("solve writes a profile CSV with the exact header") {
    const std::string out = tmp("solve.csv");
    const int code = run("solve --n 3 --k 3 --alpha 1 --beta 1 --a 1 --r-max 2 --output " + out);
    CHECK(code == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("r,v,dv\n", 0) == 0);
    CHECK(text.find("0,1,0\n") != std::string::npos);  // the r = 0 node
}

TEST_CASE("identical invocations are byte-identical") {
    const std::string args =
        "solve --n 3 --k 1 --alpha -1.5 --beta -0.5 --a 1 --r-max 3 --format json --output ";
    const std::string o1 = tmp("det1.json"), o2 = tmp("det2.json");
    CHECK(run(args + o1) == 0);
    CHECK(run(args + o2) == 0);
    const std::string t1 = slurp(o1), t2 = slurp(o2);
    CHECK_FALSE(t1.empty());
    CHECK(t1 == t2);

    const std::string vargs =
        "verify --family blowup --n 3 --k 2 --T 1 --a 1 --output ";
    const std::string v1 = tmp("vdet1.json"), v2 = tmp("vdet2.json");
    CHECK(run(vargs + v1) == 0);
    CHECK(run(vargs + v2) == 0);
    CHECK(slurp(v1) == slurp(v2));
    CHECK_FALSE(slurp(v1).empty());
}

TEST_CASE("kummer prints the series value") {
    const std::string out = tmp("kummer.txt");
    CHECK(run("kummer --a 2 --b 1 --z 1 --output " + out) == 0);
    const std::string text = slurp(out);
    // 2e = 5.43656365691809...
    CHECK(text.rfind("5.4365636569180", 0) == 0);
}

TEST_CASE("selfsimilar emits t,x,u samples") {
    const std::string out = tmp("self.csv");
    CHECK(run("selfsimilar --family heat --ansatz II --n 3 --m 0 --T 1 --t 0.5 "
              "--r-min 0 --r-max 2 --count 5 --output " +
              out) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("t,x,u\n", 0) == 0);
    int lines = 0;
    for (char c : text) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 6);  // header + 5 samples
}

TEST_CASE("explicit tabulates closed forms") {
    const std::string out = tmp("explicit.csv");
    CHECK(run("explicit --family barenblatt --ansatz II --n 3 --k 2 --a 1 --count 11 "
              "--output " +
              out) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("r,v,dv\n", 0) == 0);
}

TEST_CASE("mass prints a conserved value for the type I family") {
    const std::string o1 = tmp("mass1.txt"), o2 = tmp("mass2.txt");
    CHECK(run("mass --family barenblatt --ansatz I --n 3 --k 3 --a 1 --t 0.5 --output " + o1) ==
          0);
    CHECK(run("mass --family barenblatt --ansatz I --n 3 --k 3 --a 1 --t 2 --output " + o2) ==
          0);
    CHECK(slurp(o1) == slurp(o2));
}

TEST_CASE("domain errors exit with code 2") {
    CHECK(run("solve --n 3 --k 4 --alpha 1 --beta 1 --a 1") == 2);   // k > n
    CHECK(run("solve --n 4 --k 2 --alpha 0.3 --beta 0.1 --a 1") == 2);  // unsupported regime
    CHECK(run("solve --n 3 --k 1 --alpha 1 --beta 1 --a -1") == 2);  // a <= 0
    CHECK(run("kummer --a 1 --b 0 --z 1") == 2);                     // b non-positive integer
    CHECK(run("mass --family blowup --n 3 --k 3 --T 1 --a 1") == 2);  // growing profile
    CHECK(run("explicit --family nosuch --n 3 --k 2 --a 1") == 2);
    CHECK(run("bogus-subcommand") == 2);
}

TEST_CASE("numerical failures exit with code 3") {
    CHECK(run("kummer --a 2 --b 3 --z 30 --max-terms 5") == 3);  // series cap
}

TEST_CASE("verify emits a report whose checks reflect the family") {
    const std::string out = tmp("verify33.json");
    CHECK(run("verify --family barenblatt --ansatz I --n 3 --k 3 --a 1 --output " + out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"checks\":[") != std::string::npos);
    CHECK(text.find("\"passed\":false") == std::string::npos);  // k odd type I: all pass
}
