#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant selected at runtime. The scalar kernels are the semantic
// ground truth; the SIMD variants are equivalence-tested against them.

namespace khess::kernels {

enum class Isa { scalar, avx2 };

/// true when the AVX2 variant was compiled in and the CPU supports it
bool have_avx2();

/// best ISA available on this machine
Isa best_supported();

/// ISA used by the dispatching entry points below
Isa active();

/// pin the dispatch to one ISA (tests); throws std::domain_error if unavailable
void force(Isa isa);

const char* isa_name(Isa isa);

/// Neumaier-compensated sum of x.
double sum(std::span<const double> x);

/// Neumaier-compensated dot(w, f). Spans must have equal length.
double dot(std::span<const double> w, std::span<const double> f);

/// max_i |a[i] - b[i]|. Spans must have equal length.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// out[i] = c1 * s[i]^p1 * x[i] + c2 * s[i]^p2 * y[i] with integer powers.
/// Negative powers require s[i] != 0.
void scaled_power_combine(std::span<const double> s, std::span<const double> x,
                          std::span<const double> y, int p1, int p2, double c1, double c2,
                          std::span<double> out);

/// Kummer series sum_{j>=0} (a)_j/(b)_j z^j/j! for a batch of arguments,
/// truncated per element once two consecutive terms fall below
/// rel_tol * |running sum|. Returns false if any element hits max_terms first.
bool kummer_series(double a, double b, std::span<const double> z, std::span<double> out,
                   double rel_tol, int max_terms);

namespace scalar_impl {
double sum(std::span<const double> x);
double dot(std::span<const double> w, std::span<const double> f);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
void scaled_power_combine(std::span<const double> s, std::span<const double> x,
                          std::span<const double> y, int p1, int p2, double c1, double c2,
                          std::span<double> out);
bool kummer_series(double a, double b, std::span<const double> z, std::span<double> out,
                   double rel_tol, int max_terms);
}  // namespace scalar_impl

namespace avx2_impl {
// Defined only when the AVX2 translation unit is built; guard calls with have_avx2().
double sum(std::span<const double> x);
double dot(std::span<const double> w, std::span<const double> f);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
void scaled_power_combine(std::span<const double> s, std::span<const double> x,
                          std::span<const double> y, int p1, int p2, double c1, double c2,
                          std::span<double> out);
bool kummer_series(double a, double b, std::span<const double> z, std::span<double> out,
                   double rel_tol, int max_terms);
}  // namespace avx2_impl

}  // namespace khess::kernels
