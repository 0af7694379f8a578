#pragma once

#include <span>

#include "khess/core_types.hpp"

namespace khess {

// Confluent hypergeometric function of the first kind,
//   M(a, b; z) = sum_{s>=0} (a)_s/(b)_s z^s/s!,
// by direct series summation with controlled truncation.
struct KummerSpec {
    double a;
    double b;
    double rel_tol = 1e-14;
    int max_terms = 10000;

    KummerSpec(double a_, double b_);
    KummerSpec(double a_, double b_, double rel_tol_, int max_terms_);
};

struct KummerEval {
    double value = 0.0;
    int terms = 0;
    // |z| is large enough that direct summation may lose accuracy when the
    // series alternates (a < 0 non-integer); value is still returned.
    bool conditioning_warning = false;
};

/// Pochhammer symbol (a)_s = a (a+1) ... (a+s-1), (a)_0 = 1.
double pochhammer(double a, int s);

/// Series value with truncation metadata. Summation runs in long double with
/// Neumaier compensation; terms first grow before decaying when z is large.
KummerEval kummer_m_eval(const KummerSpec& spec, double z);

double kummer_m(const KummerSpec& spec, double z);

/// Extended-precision value for finite-difference oracles.
long double kummer_m_ld(const KummerSpec& spec, long double z);

/// Batch evaluation in double precision through the kernel layer.
void kummer_m_many(const KummerSpec& spec, std::span<const double> z, std::span<double> out);

/// Profile v(r) = M(-alpha, n/2; r^2/4) of the heat-equation blow-up family.
/// Requires k = 1, beta = -1/2 and alpha <= -n/2.
double kummer_profile(const ProblemParams& params, double r);

/// d/dr of kummer_profile via d/dz M(a,b;z) = (a/b) M(a+1,b+1;z).
double kummer_profile_deriv(const ProblemParams& params, double r);

}  // namespace khess
