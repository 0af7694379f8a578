#ifdef __FAST_MATH__
#error fast math would break the compensated accumulation in these kernels
#endif

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "khess/kernels.hpp"

namespace khess::kernels::scalar_impl {

namespace {

// Neumaier update: the carry collects what the plain add rounds away.
inline void accum(double& acc, double& carry, double x) {
    const double t = acc + x;
    if (std::fabs(acc) >= std::fabs(x)) {
        carry += (acc - t) + x;
    } else {
        carry += (x - t) + acc;
    }
    acc = t;
}

inline double powi(double x, int p) {
    if (p < 0) return 1.0 / powi(x, -p);
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

double sum(std::span<const double> x) {
    double acc = 0.0, carry = 0.0;
    for (double v : x) accum(acc, carry, v);
    return acc + carry;
}

double dot(std::span<const double> w, std::span<const double> f) {
    if (w.size() != f.size()) throw std::invalid_argument("dot: length mismatch");
    double acc = 0.0, carry = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) accum(acc, carry, w[i] * f[i]);
    return acc + carry;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

void scaled_power_combine(std::span<const double> s, std::span<const double> x,
                          std::span<const double> y, int p1, int p2, double c1, double c2,
                          std::span<double> out) {
    if (s.size() != x.size() || s.size() != y.size() || s.size() != out.size()) {
        throw std::invalid_argument("scaled_power_combine: length mismatch");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = c1 * powi(s[i], p1) * x[i] + c2 * powi(s[i], p2) * y[i];
    }
}

bool kummer_series(double a, double b, std::span<const double> z, std::span<double> out,
                   double rel_tol, int max_terms) {
    if (z.size() != out.size()) throw std::invalid_argument("kummer_series: length mismatch");
    bool ok = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double acc = 0.0, carry = 0.0, term = 1.0;
        int consecutive_small = 0;
        bool converged = false;
        for (int j = 0; j < max_terms; ++j) {
            accum(acc, carry, term);
            if (std::fabs(term) <= rel_tol * std::fabs(acc + carry)) {
                if (++consecutive_small >= 2) {
                    converged = true;
                    break;
                }
            } else {
                consecutive_small = 0;
            }
            term *= z[i] * ((a + j) / ((b + j) * (j + 1)));
        }
        out[i] = acc + carry;
        ok = ok && converged;
    }
    return ok;
}

}  // namespace khess::kernels::scalar_impl
