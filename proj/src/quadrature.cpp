#include "khess/quadrature.hpp"

#include <array>
#include <cmath>
#include <span>

#include "khess/errors.hpp"
#include "khess/kernels.hpp"

namespace khess {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 values).
// Positive abscissae; even indices are the Kronrod-only points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double kronrod;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    // pair sums f(mid - h x_j) + f(mid + h x_j), center last
    std::array<double, 8> pair_sum{};
    for (int j = 0; j < 7; ++j) {
        pair_sum[j] = f(mid - half * kXgk[j]) + f(mid + half * kXgk[j]);
    }
    pair_sum[7] = f(mid);
    const double kron = half * kernels::dot(std::span<const double>(kWgk),
                                            std::span<const double>(pair_sum));
    // Gauss-7 uses the odd-index abscissae plus the center
    const std::array<double, 4> gvals = {pair_sum[1], pair_sum[3], pair_sum[5], pair_sum[7]};
    const double gauss =
        half * kernels::dot(std::span<const double>(kWg), std::span<const double>(gvals));
    return {kron, std::fabs(kron - gauss)};
}

void refine(const std::function<double(double)>& f, double lo, double hi, double tol, int depth,
            int max_depth, QuadResult& out) {
    const Panel panel = gk15(f, lo, hi);
    if (panel.error <= tol || hi - lo <= 1e-300) {
        out.value += panel.kronrod;
        out.error_estimate += panel.error;
        ++out.panels;
        return;
    }
    if (depth >= max_depth) {
        throw NumericalError("integrate_gk: refinement depth exhausted");
    }
    const double mid = 0.5 * (lo + hi);
    refine(f, lo, mid, 0.5 * tol, depth + 1, max_depth, out);
    refine(f, mid, hi, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth) {
    QuadResult out;
    if (lo == hi) return out;
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_gk: abs_tol must be > 0");
    refine(f, lo, hi, abs_tol, 0, max_depth, out);
    return out;
}

}  // namespace khess
