#include "khess/kernels.hpp"

#include <stdexcept>

namespace khess::kernels {

bool have_avx2() {
#if defined(KHESS_HAVE_AVX2_BUILD) && (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok;
#else
    return false;
#endif
}

Isa best_supported() { return have_avx2() ? Isa::avx2 : Isa::scalar; }

namespace {
Isa& active_ref() {
    static Isa isa = best_supported();
    return isa;
}
}  // namespace

Isa active() { return active_ref(); }

void force(Isa isa) {
    if (isa == Isa::avx2 && !have_avx2()) {
        throw std::domain_error("kernels: AVX2 not available on this machine");
    }
    active_ref() = isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(KHESS_HAVE_AVX2_BUILD) && (defined(__x86_64__) || defined(_M_X64))
#define KHESS_DISPATCH(fn, ...) \
    return active() == Isa::avx2 ? avx2_impl::fn(__VA_ARGS__) : scalar_impl::fn(__VA_ARGS__)
#else
#define KHESS_DISPATCH(fn, ...) return scalar_impl::fn(__VA_ARGS__)
#endif

#if !defined(KHESS_HAVE_AVX2_BUILD) || !(defined(__x86_64__) || defined(_M_X64))
// Stubs so callers can link on targets without the AVX2 translation unit.
namespace avx2_impl {
namespace {
[[noreturn]] void unavailable() { throw std::domain_error("kernels: AVX2 variant not built"); }
}  // namespace
double sum(std::span<const double>) { unavailable(); }
double dot(std::span<const double>, std::span<const double>) { unavailable(); }
double max_abs_diff(std::span<const double>, std::span<const double>) { unavailable(); }
void scaled_power_combine(std::span<const double>, std::span<const double>,
                          std::span<const double>, int, int, double, double, std::span<double>) {
    unavailable();
}
bool kummer_series(double, double, std::span<const double>, std::span<double>, double, int) {
    unavailable();
}
}  // namespace avx2_impl
#endif

double sum(std::span<const double> x) { KHESS_DISPATCH(sum, x); }

double dot(std::span<const double> w, std::span<const double> f) { KHESS_DISPATCH(dot, w, f); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    KHESS_DISPATCH(max_abs_diff, a, b);
}

void scaled_power_combine(std::span<const double> s, std::span<const double> x,
                          std::span<const double> y, int p1, int p2, double c1, double c2,
                          std::span<double> out) {
    KHESS_DISPATCH(scaled_power_combine, s, x, y, p1, p2, c1, c2, out);
}

bool kummer_series(double a, double b, std::span<const double> z, std::span<double> out,
                   double rel_tol, int max_terms) {
    KHESS_DISPATCH(kummer_series, a, b, z, out, rel_tol, max_terms);
}

}  // namespace khess::kernels
