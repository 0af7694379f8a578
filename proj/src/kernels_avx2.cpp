#ifdef __FAST_MATH__
#error fast math would break the compensated accumulation in these kernels
#endif

// AVX2 variants of the kernels in kernels_scalar.cpp. Per-lane arithmetic
// mirrors the scalar ordering (plain mul/add, no FMA) so lanes reproduce the
// scalar results; only reductions associate differently.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "khess/kernels.hpp"

namespace khess::kernels::avx2_impl {

namespace {

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

// Neumaier update on four independent accumulators.
inline void accum(__m256d& acc, __m256d& carry, __m256d x) {
    const __m256d t = _mm256_add_pd(acc, x);
    const __m256d big = _mm256_cmp_pd(abs_pd(acc), abs_pd(x), _CMP_GE_OQ);
    const __m256d d_big = _mm256_add_pd(_mm256_sub_pd(acc, t), x);
    const __m256d d_small = _mm256_add_pd(_mm256_sub_pd(x, t), acc);
    carry = _mm256_add_pd(carry, _mm256_blendv_pd(d_small, d_big, big));
    acc = t;
}

inline void accum1(double& acc, double& carry, double x) {
    const double t = acc + x;
    if (std::fabs(acc) >= std::fabs(x)) {
        carry += (acc - t) + x;
    } else {
        carry += (x - t) + acc;
    }
    acc = t;
}

inline double reduce(__m256d acc, __m256d carry, double tail_acc, double tail_carry) {
    alignas(32) double a[4], c[4];
    _mm256_store_pd(a, acc);
    _mm256_store_pd(c, carry);
    double s = tail_acc, e = tail_carry;
    for (int i = 0; i < 4; ++i) accum1(s, e, a[i]);
    for (int i = 0; i < 4; ++i) e += c[i];
    return s + e;
}

inline __m256d powi_pd(__m256d x, int p) {
    const bool neg = p < 0;
    if (neg) p = -p;
    __m256d r = _mm256_set1_pd(1.0);
    for (int i = 0; i < p; ++i) r = _mm256_mul_pd(r, x);
    return neg ? _mm256_div_pd(_mm256_set1_pd(1.0), r) : r;
}

inline double powi1(double x, int p) {
    if (p < 0) return 1.0 / powi1(x, -p);
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

double sum(std::span<const double> x) {
    __m256d acc = _mm256_setzero_pd(), carry = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) accum(acc, carry, _mm256_loadu_pd(x.data() + i));
    double ta = 0.0, tc = 0.0;
    for (; i < x.size(); ++i) accum1(ta, tc, x[i]);
    return reduce(acc, carry, ta, tc);
}

double dot(std::span<const double> w, std::span<const double> f) {
    if (w.size() != f.size()) throw std::invalid_argument("dot: length mismatch");
    __m256d acc = _mm256_setzero_pd(), carry = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= w.size(); i += 4) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(f.data() + i));
        accum(acc, carry, p);
    }
    double ta = 0.0, tc = 0.0;
    for (; i < w.size(); ++i) accum1(ta, tc, w[i] * f[i]);
    return reduce(acc, carry, ta, tc);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
    __m256d mv = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= a.size(); i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        mv = _mm256_max_pd(mv, abs_pd(d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, mv);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

void scaled_power_combine(std::span<const double> s, std::span<const double> x,
                          std::span<const double> y, int p1, int p2, double c1, double c2,
                          std::span<double> out) {
    if (s.size() != x.size() || s.size() != y.size() || s.size() != out.size()) {
        throw std::invalid_argument("scaled_power_combine: length mismatch");
    }
    const __m256d c1v = _mm256_set1_pd(c1), c2v = _mm256_set1_pd(c2);
    std::size_t i = 0;
    for (; i + 4 <= s.size(); i += 4) {
        const __m256d sv = _mm256_loadu_pd(s.data() + i);
        const __m256d t1 = _mm256_mul_pd(_mm256_mul_pd(c1v, powi_pd(sv, p1)), _mm256_loadu_pd(x.data() + i));
        const __m256d t2 = _mm256_mul_pd(_mm256_mul_pd(c2v, powi_pd(sv, p2)), _mm256_loadu_pd(y.data() + i));
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(t1, t2));
    }
    for (; i < s.size(); ++i) {
        out[i] = c1 * powi1(s[i], p1) * x[i] + c2 * powi1(s[i], p2) * y[i];
    }
}

bool kummer_series(double a, double b, std::span<const double> z, std::span<double> out,
                   double rel_tol, int max_terms) {
    if (z.size() != out.size()) throw std::invalid_argument("kummer_series: length mismatch");
    const __m256d tol = _mm256_set1_pd(rel_tol);
    bool ok = true;
    std::size_t i = 0;
    for (; i + 4 <= z.size(); i += 4) {
        const __m256d zv = _mm256_loadu_pd(z.data() + i);
        __m256d acc = _mm256_setzero_pd(), carry = _mm256_setzero_pd();
        __m256d term = _mm256_set1_pd(1.0);
        __m256d prev_small = _mm256_setzero_pd();
        __m256d done = _mm256_setzero_pd();
        for (int j = 0; j < max_terms; ++j) {
            accum(acc, carry, term);
            const __m256d running = _mm256_add_pd(acc, carry);
            const __m256d small =
                _mm256_cmp_pd(abs_pd(term), _mm256_mul_pd(tol, abs_pd(running)), _CMP_LE_OQ);
            done = _mm256_or_pd(done, _mm256_and_pd(small, prev_small));
            prev_small = small;
            if (_mm256_movemask_pd(done) == 0xF) break;
            const double coef = (a + j) / ((b + j) * (j + 1));
            term = _mm256_mul_pd(term, _mm256_mul_pd(zv, _mm256_set1_pd(coef)));
            term = _mm256_andnot_pd(done, term);  // freeze converged lanes
        }
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(acc, carry));
        ok = ok && (_mm256_movemask_pd(done) == 0xF);
    }
    if (i < z.size()) {
        ok = scalar_impl::kummer_series(a, b, z.subspan(i), out.subspan(i), rel_tol, max_terms) && ok;
    }
    return ok;
}

}  // namespace khess::kernels::avx2_impl

#endif  // x86_64
