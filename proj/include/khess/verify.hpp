#pragma once

#include <functional>
#include <span>
#include <vector>

#include "khess/core_types.hpp"
#include "khess/profile_ode.hpp"
#include "khess/selfsimilar.hpp"

namespace khess {

struct ResidualSample {
    double t = 0.0;
    double r = 0.0;
    double residual = 0.0;  // normalized: |du/dt - S_k| / scale
    double scale = 1.0;     // |du/dt| + |S_k| + 1
};

// Extended-precision radial function for finite-difference oracles.
using RadialFn = std::function<long double(long double)>;

/// Radial k-Hessian S_k(D^2 v)(r) = c_{n,k} r^{1-n} d/dr [ r^{n-k} (v')^k ]
/// by nested 4th-order central differences with step h_fd (0 = auto,
/// 1e-4 max(1, r)). Needs r > 4 h_fd. The value at step h_fd/2 is returned;
/// step_warning (if given) is set when it disagrees with the h_fd value by
/// more than 1e-4 relative.
double radial_k_hessian(const ProblemParams& p, const RadialFn& v, double r, double h_fd = 0.0,
                        bool* step_warning = nullptr);

/// |du/dt - S_k(D^2 u)| at (t, r), both by finite differences
/// (h_t, h_r = 0 selects 1e-5 max(1, t) and 1e-4 max(1, r)).
ResidualSample evolution_residual(const SelfSimilarSolution& sol, double t, double r,
                                  double h_t = 0.0, double h_r = 0.0);

/// Property suite over solver output: monotonicity of E(r) = r^2 v^{2 delta},
/// positivity of v + delta r v', the sign law of v', and the integrated-form
/// identity. Checks whose hypotheses fail for these parameters are reported
/// as skipped.
VerificationReport theorem1_suite(const Profile& profile);

/// Max over interior grid nodes of the normalized divergence-form residual,
/// with d/dr taken by 5-point finite-difference stencils on the (nonuniform)
/// solver grid.
double divergence_form_residual(const Profile& profile);

/// Finite-difference weights (Fornberg) for the given derivative order at x0
/// from arbitrary distinct nodes xs.
std::vector<double> fd_weights(double x0, std::span<const double> xs, int order);

}  // namespace khess
