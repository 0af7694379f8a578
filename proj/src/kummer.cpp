#include "khess/kummer.hpp"

#include <cmath>
#include <stdexcept>

#include "khess/errors.hpp"
#include "khess/kernels.hpp"

namespace khess {

namespace {

bool is_nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

// |z| beyond which a conditioning warning is attached to the result
constexpr double kWarnAbsZ = 50.0;

inline void accum_ld(long double& acc, long double& carry, long double x) {
    const long double t = acc + x;
    if (std::fabs(acc) >= std::fabs(x)) {
        carry += (acc - t) + x;
    } else {
        carry += (x - t) + acc;
    }
    acc = t;
}

}  // namespace

KummerSpec::KummerSpec(double a_, double b_) : a(a_), b(b_) {
    if (is_nonpositive_integer(b)) {
        throw std::domain_error("KummerSpec: b must not be zero or a negative integer");
    }
}

KummerSpec::KummerSpec(double a_, double b_, double rel_tol_, int max_terms_)
    : KummerSpec(a_, b_) {
    if (!(rel_tol_ > 0.0)) throw std::domain_error("KummerSpec: rel_tol must be > 0");
    if (max_terms_ < 1) throw std::domain_error("KummerSpec: max_terms must be >= 1");
    rel_tol = rel_tol_;
    max_terms = max_terms_;
}

double pochhammer(double a, int s) {
    if (s < 0) throw std::domain_error("pochhammer: s must be a non-negative integer");
    double p = 1.0;
    for (int i = 0; i < s; ++i) p *= a + i;
    return p;
}

long double kummer_m_ld(const KummerSpec& spec, long double z) {
    long double acc = 0.0L, carry = 0.0L, term = 1.0L;
    int consecutive_small = 0;
    for (int j = 0; j < spec.max_terms; ++j) {
        accum_ld(acc, carry, term);
        if (std::fabs(term) <= static_cast<long double>(spec.rel_tol) * std::fabs(acc + carry)) {
            if (++consecutive_small >= 2) return acc + carry;
        } else {
            consecutive_small = 0;
        }
        term *= z * ((spec.a + j) / ((spec.b + j) * (j + 1.0L)));
    }
    throw NumericalError("kummer_m: series did not converge within max_terms");
}

KummerEval kummer_m_eval(const KummerSpec& spec, double z) {
    long double acc = 0.0L, carry = 0.0L, term = 1.0L;
    int consecutive_small = 0;
    int used = spec.max_terms;
    bool converged = false;
    for (int j = 0; j < spec.max_terms; ++j) {
        accum_ld(acc, carry, term);
        if (std::fabs(term) <= static_cast<long double>(spec.rel_tol) * std::fabs(acc + carry)) {
            if (++consecutive_small >= 2) {
                used = j + 1;
                converged = true;
                break;
            }
        } else {
            consecutive_small = 0;
        }
        term *= static_cast<long double>(z) * ((spec.a + j) / ((spec.b + j) * (j + 1.0L)));
    }
    if (!converged) throw NumericalError("kummer_m: series did not converge within max_terms");
    return {static_cast<double>(acc + carry), used, std::fabs(z) > kWarnAbsZ};
}

double kummer_m(const KummerSpec& spec, double z) { return kummer_m_eval(spec, z).value; }

void kummer_m_many(const KummerSpec& spec, std::span<const double> z, std::span<double> out) {
    if (!kernels::kummer_series(spec.a, spec.b, z, out, spec.rel_tol, spec.max_terms)) {
        throw NumericalError("kummer_m_many: series did not converge within max_terms");
    }
}

namespace {

void check_profile_params(const ProblemParams& params) {
    if (params.k != 1) throw std::domain_error("kummer_profile: requires k = 1");
    if (params.beta != -0.5) throw std::domain_error("kummer_profile: requires beta = -1/2");
    if (params.alpha > -0.5 * params.n) {
        throw std::domain_error("kummer_profile: requires alpha <= -n/2");
    }
}

}  // namespace

// Normalized to v(0) = 1; families carrying the amplitude a multiply it on
// top (heat_blowup and friends).
double kummer_profile(const ProblemParams& params, double r) {
    check_profile_params(params);
    if (r < 0.0) throw std::domain_error("kummer_profile: r must be >= 0");
    const KummerSpec spec(-params.alpha, 0.5 * params.n);
    return kummer_m(spec, 0.25 * r * r);
}

double kummer_profile_deriv(const ProblemParams& params, double r) {
    check_profile_params(params);
    if (r < 0.0) throw std::domain_error("kummer_profile: r must be >= 0");
    const KummerSpec spec(-params.alpha + 1.0, 0.5 * params.n + 1.0);
    const double ab = -params.alpha / (0.5 * params.n);
    return ab * kummer_m(spec, 0.25 * r * r) * (0.5 * r);
}

}  // namespace khess
