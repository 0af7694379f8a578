#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "khess/io.hpp"

using namespace khess;

TEST_CASE("format_double round-trips every double exactly") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        const std::string text = format_double(x);
        CHECK(std::strtod(text.c_str(), nullptr) == x);
    }
    for (double x : {0.0, -0.0, 1.0, -1.0, 1e-308, 5e-324, 1.7976931348623157e308}) {
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("profile CSV carries the exact header and one row per node") {
    Profile prof;
    prof.grid = {0.0, 0.5, 1.0};
    prof.values = {1.0, 0.75, 0.5};
    prof.derivs = {0.0, -0.5, -0.5};
    const std::string text = profile_csv(prof);
    CHECK(text == "r,v,dv\n0,1,0\n0.5,0.75,-0.5\n1,0.5,-0.5\n");
}

TEST_CASE("spacetime CSV header and length checks") {
    const std::vector<double> t = {1.0, 1.0}, x = {0.0, 0.5}, u = {2.0, 1.5};
    CHECK(spacetime_csv(t, x, u) == "t,x,u\n1,0,2\n1,0.5,1.5\n");
    const std::vector<double> short_u = {2.0};
    CHECK_THROWS_AS(spacetime_csv(t, x, short_u), std::invalid_argument);
}

TEST_CASE("result JSON carries all sections and escapes check names") {
    ProblemParams params(3, 2, 0.5, 0.25, 1.0);
    VerificationReport report;
    report.add("plain", 1e-9, 1e-6);
    report.add("with \"quotes\" and \\slash", 2.0, 1e-6);
    report.add_skipped("skipped one");
    const std::string text = report_json(params, report);
    CHECK(text.find("\"params\":{\"n\":3,\"k\":2,") != std::string::npos);
    CHECK(text.find("\"grid\":[]") != std::string::npos);
    CHECK(text.find("\"values\":[]") != std::string::npos);
    CHECK(text.find("\"derivs\":[]") != std::string::npos);
    CHECK(text.find("\"with \\\"quotes\\\" and \\\\slash\"") != std::string::npos);
    CHECK(text.find("\"passed\":false") != std::string::npos);
    CHECK(text.find("\"skipped\":true") != std::string::npos);
    CHECK(text.back() == '\n');
}
