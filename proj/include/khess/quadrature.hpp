#pragma once

#include <functional>

namespace khess {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

/// Adaptive Gauss(7)-Kronrod(15) integration of f over [lo, hi].
/// Panels are bisected until the local |K15 - G7| estimate, prorated by
/// panel width, meets abs_tol. Throws NumericalError past max_depth.
QuadResult integrate_gk(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth = 48);

}  // namespace khess
