#pragma once

#include <optional>

#include "khess/core_types.hpp"

namespace khess {

enum class ClosedFormTag {
    alpha_zero_plus,     // alpha = 0, beta > 0, k even: a - C+ r^{2k/(k-1)}, cut off at rbar
    alpha_zero_minus,    // alpha = 0, beta < 0:         a + C- r^{2k/(k-1)}
    barenblatt_compact,  // alpha = n beta != 0:         (C - gamma r^2)_+^{k/(k-1)}
    barenblatt_growing,  // alpha = n beta < 0:          (C + gamma r^2)^{k/(k-1)}
    heat_kummer,         // k = 1, alpha_m = -n/2 - m:   M(-alpha, n/2; r^2/4)
};

enum class BarenblattBranch { decreasing, increasing };

// An evaluable closed-form radial profile. Compact profiles are total
// functions, identically zero beyond the support radius.
struct ClosedForm {
    ClosedFormTag tag;
    ProblemParams params;
    int m = 0;  // heat_kummer family index, alpha_m = -n/2 - m

    double value(double r) const;
    double deriv(double r) const;

    // extended-precision evaluation for finite-difference oracles
    long double value_ld(long double r) const;
    long double deriv_ld(long double r) const;

    std::optional<double> support_radius() const;
    bool integrable() const;
    const char* tag_name() const;
};

ClosedForm make_alpha_zero(const ProblemParams& params);
ClosedForm make_barenblatt(const ProblemParams& params, BarenblattBranch branch);
ClosedForm make_heat_kummer(int n, int m, double a);

// --- profile evaluations -------------------------------------------------

/// alpha = 0 profiles; branch selected by sign(beta). beta > 0 requires k even.
double alpha_zero_profile(const ProblemParams& params, double r);

/// Coefficient C_+ (beta > 0) or C_- (beta < 0) of the alpha = 0 family:
///   ((k-1)/2k) ((k-1)|beta| / ((n(k-1)+2k) c_{n,k}))^{1/(k-1)}.
double alpha_zero_coefficient(const ProblemParams& params);

/// Support radius rbar = (a/C_+)^{(k-1)/2k} of the beta > 0 branch.
double alpha_zero_support_radius(const ProblemParams& params);

/// Barenblatt-type profile for alpha = n beta != 0, k >= 2. The decreasing
/// branch is the compact positive-part form (beta > 0 with k odd, or beta < 0
/// with k even); the increasing branch is the globally positive growing form
/// (alpha < 0).
double barenblatt_profile(const ProblemParams& params, BarenblattBranch branch, double r);

/// gamma = ((k-1)/2k) (|beta|/c_{n,k})^{1/k}
double barenblatt_gamma(int n, int k, double abs_beta);

/// r* = sqrt(a^{(k-1)/k} / gamma), where the compact bracket vanishes
double barenblatt_support_radius(const ProblemParams& params);

// --- space-time families -------------------------------------------------

/// U_C(t,x) = t^{-alpha} (C - gamma (|x|/t^beta)^2)_+^{k/(k-1)} with
/// alpha = n/(n(k-1)+2k), beta = 1/(n(k-1)+2k).
double barenblatt_selfsimilar(int n, int k, double C, double t, double x_norm);

/// Type II blow-up families with alpha = -n/(n(k-1)+2k), beta = -1/(n(k-1)+2k):
/// compact bracket for k even, globally positive growing form for k odd.
double blowup_family_k(const ProblemParams& params, double T, double t, double x_norm);

/// Heat-equation blow-up family
///   a (T-t)^{-(n+2m)/2} M(n/2+m, n/2; |x|^2/(4(T-t))).
double heat_blowup(int n, int m, double a, double T, double t, double x_norm);

}  // namespace khess
