#pragma once

#include <span>
#include <string>

#include "khess/core_types.hpp"
#include "khess/profile_ode.hpp"

namespace khess {

/// shortest-17-significant-digit decimal form; round-trips a double exactly
std::string format_double(double x);

/// CSV with header exactly "r,v,dv"
std::string profile_csv(const Profile& prof);

/// CSV with header exactly "t,x,u"
std::string spacetime_csv(std::span<const double> t, std::span<const double> x,
                          std::span<const double> u);

/// {"params": {...}, "grid": [...], "values": [...], "derivs": [...], "checks": [...]}
/// with numbers at 17 significant digits. Any section may be empty.
std::string result_json(const ProblemParams& params, std::span<const double> grid,
                        std::span<const double> values, std::span<const double> derivs,
                        const VerificationReport& report);

std::string profile_json(const Profile& prof);

std::string report_json(const ProblemParams& params, const VerificationReport& report);

}  // namespace khess
