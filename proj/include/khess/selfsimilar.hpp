#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>

#include "khess/closed_forms.hpp"
#include "khess/core_types.hpp"
#include "khess/profile_ode.hpp"

namespace khess {

// A space-time solution u(t, x) assembled from a radial profile and an
// ansatz:
//   type I   u = t^{-alpha} v(x t^{-beta}),        t > 0
//   type II  u = (T-t)^{alpha} v(x (T-t)^{beta}),  0 <= t < T
//   type III u = e^{-alpha t} v(x e^{-beta t}),    all t
struct SelfSimilarSolution {
    std::variant<Profile, ClosedForm> profile;
    AnsatzKind kind;
    double T;  // horizon; type II only
    ProblemParams params;

    SelfSimilarSolution(Profile prof, AnsatzKind kind_, double T_ = 0.0);
    SelfSimilarSolution(ClosedForm form, AnsatzKind kind_, double T_ = 0.0);

    double profile_value(double r) const;
    long double profile_value_ld(long double r) const;
    std::optional<double> profile_support_radius() const;
    bool profile_integrable() const;
};

double evaluate(const SelfSimilarSolution& sol, double t, double x_norm);
long double evaluate_ld(const SelfSimilarSolution& sol, long double t, long double x_norm);

/// Total mass M(t) = int_{R^n} u(t, x) dx, by the profile integral
/// omega_{n-1} int v(xi) xi^{n-1} d(xi) and the ansatz scale factors.
/// Raises for profiles that grow or whose tabulated tail is not negligible.
double mass(const SelfSimilarSolution& sol, double t);

/// Checks the Dirac initial trace of a compact type I solution:
/// int u(t,.) phi -> M phi(0) as t -> 0, monotone along the given
/// decreasing times, with the final gap below tol * M phi(0).
VerificationReport dirac_trace_check(const SelfSimilarSolution& sol,
                                     const std::function<double(double)>& test_fn,
                                     std::span<const double> times, double tol);

/// Tracks u(t, radius) along times increasing toward T and checks each step
/// against the power-law ratio ((T-t_j)/(T-t_{j+1}))^{-alpha} within
/// ratio_tol. A report that fails means no blow-up at that radius.
VerificationReport blowup_diagnostic(const SelfSimilarSolution& sol, double radius,
                                     std::span<const double> times, double ratio_tol = 0.1);

}  // namespace khess
