#include "khess/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace khess {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string profile_csv(const Profile& prof) {
    std::string out = "r,v,dv\n";
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        out += format_double(prof.grid[i]);
        out += ',';
        out += format_double(prof.values[i]);
        out += ',';
        out += format_double(prof.derivs[i]);
        out += '\n';
    }
    return out;
}

std::string spacetime_csv(std::span<const double> t, std::span<const double> x,
                          std::span<const double> u) {
    if (t.size() != x.size() || t.size() != u.size()) {
        throw std::invalid_argument("spacetime_csv: column length mismatch");
    }
    std::string out = "t,x,u\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += format_double(t[i]);
        out += ',';
        out += format_double(x[i]);
        out += ',';
        out += format_double(u[i]);
        out += '\n';
    }
    return out;
}

namespace {

void append_array(std::string& out, const char* key, std::span<const double> xs) {
    out += '"';
    out += key;
    out += "\":[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) out += ',';
        out += format_double(xs[i]);
    }
    out += ']';
}

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
        } else {
            out += c;
        }
    }
    out += '"';
}

}  // namespace

std::string result_json(const ProblemParams& params, std::span<const double> grid,
                        std::span<const double> values, std::span<const double> derivs,
                        const VerificationReport& report) {
    std::string out = "{\"params\":{\"n\":";
    out += std::to_string(params.n);
    out += ",\"k\":";
    out += std::to_string(params.k);
    out += ",\"alpha\":";
    out += format_double(params.alpha);
    out += ",\"beta\":";
    out += format_double(params.beta);
    out += ",\"a\":";
    out += format_double(params.a);
    out += "},";
    append_array(out, "grid", grid);
    out += ',';
    append_array(out, "values", values);
    out += ',';
    append_array(out, "derivs", derivs);
    out += ",\"checks\":[";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const CheckResult& c = report.checks[i];
        if (i != 0) out += ',';
        out += "{\"name\":";
        append_escaped(out, c.name);
        out += ",\"measured\":";
        out += format_double(c.measured);
        out += ",\"tolerance\":";
        out += format_double(c.tolerance);
        out += ",\"passed\":";
        out += c.passed ? "true" : "false";
        out += ",\"skipped\":";
        out += c.skipped ? "true" : "false";
        out += '}';
    }
    out += "]}\n";
    return out;
}

std::string profile_json(const Profile& prof) {
    return result_json(prof.params, prof.grid, prof.values, prof.derivs, {});
}

std::string report_json(const ProblemParams& params, const VerificationReport& report) {
    return result_json(params, {}, {}, {}, report);
}

}  // namespace khess
