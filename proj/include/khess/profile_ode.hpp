#pragma once

#include <optional>
#include <vector>

#include "khess/core_types.hpp"

namespace khess {

enum class ProfileProvenance { numerical, closed_form };

// A tabulated radial profile. Between nodes, evaluation uses quintic Hermite
// interpolation when second derivatives are stored, cubic Hermite otherwise.
struct Profile {
    ProblemParams params{1, 1, 0.0, 0.0, 1.0};
    std::vector<double> grid;    // r_0 = 0 < r_1 < ...
    std::vector<double> values;  // v(r_i) > 0
    std::vector<double> derivs;  // v'(r_i)
    std::vector<double> curvs;   // v''(r_i); may be empty
    ProfileProvenance provenance = ProfileProvenance::numerical;
    // radius where positivity (or the leading coefficient) ended the solve;
    // unset when the solve reached its target radius
    std::optional<double> stop_radius;

    double r_max() const { return grid.back(); }
    double value(double r) const;
    double deriv(double r) const;
};

struct SolverConfig {
    double r_max = 10.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double h_init = 0.0;  // 0 = auto: 1e-6 * max(1, r_max)
    double picard_radius = 0.1;
    // |v'| below this makes the k > 1 leading coefficient degenerate
    double slope_floor = 1e-250;

    void validate() const;
};

// Existence regimes of the profile problem. local_only marks odd-k parameter
// points the integrator can attempt without a global-existence guarantee
// (local existence near 0 still holds for alpha, beta > 0).
enum class LemmaRegime {
    theorem1,            // k odd, beta > 0, alpha <= beta (n - 2k)/k: global, unique
    beta_zero,           // k odd, beta = 0, alpha < 0
    negative_exponents,  // k odd, 0 > n beta >= alpha
    alpha_zero,          // alpha = 0 (constant or the explicit odd-k branch)
    explicit_only,       // k even, served by closed forms
    local_only,
    unsupported,
};

LemmaRegime lemma_regime(const ProblemParams& p);
const char* regime_name(LemmaRegime regime);

/// L = lim_{r->0} v'(r)/r, from L^k = -alpha a / (n c_{n,k}).
/// For odd k this is the signed real root; for even k it requires
/// -alpha a >= 0 and returns the nonnegative root.
double initial_slope_limit(const ProblemParams& p);

/// v'' from the divergence form expanded at (r, v, w = v'):
///   v'' = [ -r^{k-1}(alpha v + beta r w)/c_{n,k} - (n-k) w^k / r ] / (k w^{k-1}).
double rhs_first_order(const ProblemParams& p, double r, double v, double w,
                       double slope_floor = 1e-250);

/// Integrate the profile ODE from the series start at r ~ 0 out to
/// cfg.r_max with an adaptive embedded Runge-Kutta 4(5) pair, stopping
/// early (stop_radius) if positivity fails. Odd k only.
Profile solve_profile(const ProblemParams& p, const SolverConfig& cfg);

struct PicardResult {
    Profile profile;
    double contraction_factor = 0.0;
    int iterations = 0;
    double final_update = 0.0;
};

/// Fixed-point iteration for the integral form of the problem (alpha, beta > 0):
///   v(r) = a - int_0^r G(F(v)(s)) ds,
///   G(s) = (alpha s / c_{n,k})^{1/k},
///   F(v)(s) = s^k [ (beta/alpha) v(s) + (1 - n beta/alpha) s^{-n} int_0^s tau^{n-1} v ].
/// The radius must satisfy the contraction bound
///   (C~ / 2A) (A alpha / c_{n,k})^{1/k} radius^2 < 1.
PicardResult picard_solve(const ProblemParams& p, double radius, int iters_max, double tol);

/// Convenience overload using cfg.picard_radius with the default iteration
/// cap (200) and a sup-norm tolerance of 1e-12.
PicardResult picard_solve(const ProblemParams& p, const SolverConfig& cfg);

}  // namespace khess
