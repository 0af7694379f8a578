#include "khess/profile_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "khess/closed_forms.hpp"
#include "khess/errors.hpp"
#include "khess/kernels.hpp"

namespace khess {

namespace {

inline double powi(double x, int p) {
    if (p < 0) return 1.0 / powi(x, -p);
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

bool near(double x, double y, double tol = 1e-12) {
    return std::fabs(x - y) <= tol * (1.0 + std::fabs(x) + std::fabs(y));
}

}  // namespace

// --- Profile interpolation --------------------------------------------------

namespace {

struct Segment {
    std::size_t i;
    double h;
    double u;
};

Segment locate(const std::vector<double>& grid, double r) {
    auto it = std::upper_bound(grid.begin(), grid.end(), r);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i == 0) i = 1;
    if (i >= grid.size()) i = grid.size() - 1;
    --i;
    const double h = grid[i + 1] - grid[i];
    return {i, h, (r - grid[i]) / h};
}

}  // namespace

double Profile::value(double r) const {
    if (grid.size() < 2) throw std::domain_error("profile: needs at least two grid nodes");
    if (r < 0.0) throw std::domain_error("profile: r must be >= 0");
    const double back = grid.back();
    if (r > back * (1.0 + 1e-12) + 1e-300) {
        throw std::out_of_range("profile: r beyond the tabulated grid");
    }
    if (r >= back) return values.back();
    const auto [i, h, u] = locate(grid, r);
    const double y0 = values[i], y1 = values[i + 1];
    const double d0 = h * derivs[i], d1 = h * derivs[i + 1];
    if (curvs.empty()) {
        const double u2 = u * u, u3 = u2 * u;
        return y0 * (1 - 3 * u2 + 2 * u3) + y1 * (3 * u2 - 2 * u3) + d0 * (u - 2 * u2 + u3) +
               d1 * (u3 - u2);
    }
    const double s0 = 0.5 * h * h * curvs[i], s1 = 0.5 * h * h * curvs[i + 1];
    const double a1 = y1 - y0 - d0 - s0;
    const double a2 = d1 - d0 - 2.0 * s0;
    const double a3 = 2.0 * (s1 - s0);
    const double c3 = 10 * a1 - 4 * a2 + 0.5 * a3;
    const double c4 = -15 * a1 + 7 * a2 - a3;
    const double c5 = 6 * a1 - 3 * a2 + 0.5 * a3;
    return y0 + u * (d0 + u * (s0 + u * (c3 + u * (c4 + u * c5))));
}

double Profile::deriv(double r) const {
    if (grid.size() < 2) throw std::domain_error("profile: needs at least two grid nodes");
    if (r < 0.0) throw std::domain_error("profile: r must be >= 0");
    const double back = grid.back();
    if (r > back * (1.0 + 1e-12) + 1e-300) {
        throw std::out_of_range("profile: r beyond the tabulated grid");
    }
    if (r >= back) return derivs.back();
    const auto [i, h, u] = locate(grid, r);
    const double y0 = values[i], y1 = values[i + 1];
    const double d0 = h * derivs[i], d1 = h * derivs[i + 1];
    if (curvs.empty()) {
        const double u2 = u * u;
        return (y0 * (-6 * u + 6 * u2) + y1 * (6 * u - 6 * u2)) / h +
               derivs[i] * (1 - 4 * u + 3 * u2) + derivs[i + 1] * (3 * u2 - 2 * u);
    }
    const double s0 = 0.5 * h * h * curvs[i], s1 = 0.5 * h * h * curvs[i + 1];
    const double a1 = y1 - y0 - d0 - s0;
    const double a2 = d1 - d0 - 2.0 * s0;
    const double a3 = 2.0 * (s1 - s0);
    const double c3 = 10 * a1 - 4 * a2 + 0.5 * a3;
    const double c4 = -15 * a1 + 7 * a2 - a3;
    const double c5 = 6 * a1 - 3 * a2 + 0.5 * a3;
    return (d0 + u * (2 * s0 + u * (3 * c3 + u * (4 * c4 + u * 5 * c5)))) / h;
}

// --- parameter classification -------------------------------------------------

void SolverConfig::validate() const {
    if (!(r_max > 0.0)) throw std::domain_error("SolverConfig: r_max must be > 0");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw std::domain_error("SolverConfig: tolerances must be > 0");
    }
    if (h_init < 0.0 || h_init >= r_max) {
        throw std::domain_error("SolverConfig: h_init must lie in [0, r_max)");
    }
    if (!(picard_radius > 0.0) || !(picard_radius < r_max)) {
        throw std::domain_error("SolverConfig: requires 0 < picard_radius < r_max");
    }
    if (!(slope_floor >= 0.0)) throw std::domain_error("SolverConfig: slope_floor must be >= 0");
}

LemmaRegime lemma_regime(const ProblemParams& p) {
    const bool odd = p.k % 2 == 1;
    if (p.alpha == 0.0 && p.beta == 0.0) return LemmaRegime::alpha_zero;  // constant v = a
    if (odd) {
        if (p.beta > 0.0 && p.alpha <= p.beta * (p.n - 2.0 * p.k) / p.k) {
            return LemmaRegime::theorem1;
        }
        if (p.beta == 0.0 && p.alpha < 0.0) return LemmaRegime::beta_zero;
        if (p.n * p.beta < 0.0 && p.n * p.beta >= p.alpha) return LemmaRegime::negative_exponents;
        if (p.alpha == 0.0) return LemmaRegime::alpha_zero;
        return LemmaRegime::local_only;
    }
    if (p.alpha == 0.0) return LemmaRegime::explicit_only;  // the cut-off / growing pair
    if (near(p.alpha, p.n * p.beta)) return LemmaRegime::explicit_only;
    return LemmaRegime::unsupported;
}

const char* regime_name(LemmaRegime regime) {
    switch (regime) {
        case LemmaRegime::theorem1: return "theorem1";
        case LemmaRegime::beta_zero: return "beta_zero";
        case LemmaRegime::negative_exponents: return "negative_exponents";
        case LemmaRegime::alpha_zero: return "alpha_zero";
        case LemmaRegime::explicit_only: return "explicit_only";
        case LemmaRegime::local_only: return "local_only";
        default: return "unsupported";
    }
}

double initial_slope_limit(const ProblemParams& p) {
    if (p.alpha == 0.0) throw std::domain_error("initial_slope_limit: requires alpha != 0");
    const double q = -p.alpha * p.a / (p.n * p.cnk());  // lim (v'/r)^k
    if (p.k % 2 == 0 && q < 0.0) {
        throw std::domain_error(
            "initial_slope_limit: even k needs -alpha a >= 0 for a real k-th root");
    }
    const double mag = std::pow(std::fabs(q), 1.0 / p.k);
    return q < 0.0 ? -mag : mag;
}

double rhs_first_order(const ProblemParams& p, double r, double v, double w, double slope_floor) {
    if (!(r > 0.0)) throw std::domain_error("rhs_first_order: requires r > 0");
    const double c = p.cnk();
    if (p.k == 1) {
        return -(p.alpha * v + p.beta * r * w) / c - (p.n - 1) * w / r;
    }
    if (std::fabs(w) <= slope_floor) {
        throw NumericalError("rhs_first_order: degenerate leading coefficient (v' ~ 0, k > 1)");
    }
    const double wk1 = powi(w, p.k - 1);
    const double num =
        -powi(r, p.k - 1) * (p.alpha * v + p.beta * r * w) / c - (p.n - p.k) * wk1 * w / r;
    return num / (p.k * wk1);
}

// --- adaptive Runge-Kutta 4(5), Dormand-Prince pair ---------------------------

namespace {

struct State {
    double v;
    double w;
};

constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,       500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
// b5 - b4, applied to all seven stages for the error estimate
constexpr double kE[7] = {71.0 / 57600,       0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525,  -1.0 / 40};

class ProfileStepper {
public:
    ProfileStepper(const ProblemParams& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {}

    State derivs(double r, State y) const {
        return {y.w, rhs_first_order(p_, r, y.v, y.w, cfg_.slope_floor)};
    }

    // One attempted step of size h from (r, y) with stage-1 slope f1.
    // Returns the error norm; fills y_out and f_out (FSAL stage).
    double attempt(double r, State y, State f1, double h, State& y_out, State& f_out) const {
        State k[7];
        k[0] = f1;
        for (int s = 1; s < 7; ++s) {
            State acc{0.0, 0.0};
            for (int j = 0; j < s; ++j) {
                acc.v += kA[s][j] * k[j].v;
                acc.w += kA[s][j] * k[j].w;
            }
            const State ys{y.v + h * acc.v, y.w + h * acc.w};
            k[s] = derivs(r + kC[s] * h, ys);
        }
        State y5{y.v, y.w};
        for (int s = 0; s < 7; ++s) {
            y5.v += h * kB5[s] * k[s].v;
            y5.w += h * kB5[s] * k[s].w;
        }
        State err{0.0, 0.0};
        for (int s = 0; s < 7; ++s) {
            err.v += h * kE[s] * k[s].v;
            err.w += h * kE[s] * k[s].w;
        }
        y_out = y5;
        f_out = k[6];  // FSAL: stage 7 sits at (r + h, y5)
        const double sv = cfg_.abs_tol + cfg_.rel_tol * std::max(std::fabs(y.v), std::fabs(y5.v));
        const double sw = cfg_.abs_tol + cfg_.rel_tol * std::max(std::fabs(y.w), std::fabs(y5.w));
        const double ev = err.v / sv, ew = err.w / sw;
        return std::sqrt(0.5 * (ev * ev + ew * ew));
    }

private:
    const ProblemParams& p_;
    const SolverConfig& cfg_;
};

Profile constant_profile(const ProblemParams& p, double r_max) {
    Profile prof;
    prof.params = p;
    prof.provenance = ProfileProvenance::numerical;
    const int nodes = 17;
    for (int i = 0; i < nodes; ++i) {
        prof.grid.push_back(r_max * i / (nodes - 1.0));
        prof.values.push_back(p.a);
        prof.derivs.push_back(0.0);
        prof.curvs.push_back(0.0);
    }
    return prof;
}

}  // namespace

Profile solve_profile(const ProblemParams& p, const SolverConfig& cfg) {
    cfg.validate();
    if (p.k % 2 == 0) {
        throw std::domain_error(
            "solve_profile: even k is served by the closed-form families only");
    }
    const LemmaRegime regime = lemma_regime(p);
    const double eps_pos = 1e-12 * p.a;
    const double h0 = cfg.h_init > 0.0
                          ? cfg.h_init
                          : std::min(1e-6 * std::max(1.0, cfg.r_max), 0.25 * cfg.r_max);

    Profile prof;
    prof.params = p;
    prof.provenance = ProfileProvenance::numerical;

    // series start at r = h0
    double r = h0;
    State y{};
    double curv0 = 0.0;
    if (p.alpha == 0.0) {
        if (p.beta >= 0.0 || p.k == 1) {
            // v' = 0 is the only admissible branch: v = a everywhere
            return constant_profile(p, cfg.r_max);
        }
        // growing branch of the alpha = 0 family as the start expansion
        const double coef = alpha_zero_coefficient(p);
        const double pexp = 2.0 * p.k / (p.k - 1.0);
        y = {p.a + coef * std::pow(r, pexp), coef * pexp * std::pow(r, pexp - 1.0)};
        curv0 = 0.0;  // v'' ~ r^{2/(k-1)} -> 0
    } else {
        const double L = initial_slope_limit(p);
        y = {p.a + 0.5 * L * r * r, L * r};
        curv0 = L;
    }

    prof.grid.push_back(0.0);
    prof.values.push_back(p.a);
    prof.derivs.push_back(0.0);
    prof.curvs.push_back(curv0);

    ProfileStepper stepper(p, cfg);
    State f1 = stepper.derivs(r, y);
    prof.grid.push_back(r);
    prof.values.push_back(y.v);
    prof.derivs.push_back(y.w);
    prof.curvs.push_back(f1.w);

    double h = 16.0 * h0;
    const std::size_t max_nodes = 4u << 20;
    while (r < cfg.r_max) {
        h = std::min(h, cfg.r_max - r);
        if (h < 1e-15 * std::max(1.0, r)) {
            throw NumericalError("solve_profile: step size underflow at r = " + std::to_string(r));
        }
        State y_new, f_new;
        double err;
        try {
            err = stepper.attempt(r, y, f1, h, y_new, f_new);
        } catch (const NumericalError&) {
            // degenerate leading coefficient inside a stage: try a shorter step,
            // give up once the step floor is reached
            if (h > 64.0 * 1e-15 * std::max(1.0, r)) {
                h *= 0.5;
                continue;
            }
            if (regime == LemmaRegime::theorem1) {
                throw NumericalError(
                    "solve_profile: degenerate slope inside the global-existence regime");
            }
            prof.stop_radius = r;
            return prof;
        }
        if (!std::isfinite(err) || err > 1.0) {
            const double shrink = std::isfinite(err)
                                      ? std::max(0.1, 0.9 * std::pow(err, -0.2))
                                      : 0.1;
            h *= shrink;
            continue;
        }
        if (y_new.v <= eps_pos) {
            // positivity loss inside this step: shrink toward the boundary
            if (h > 64.0 * 1e-15 * std::max(1.0, r)) {
                h *= 0.5;
                continue;
            }
            if (regime == LemmaRegime::theorem1) {
                throw NumericalError(
                    "solve_profile: positivity lost inside the global-existence regime "
                    "(alpha <= beta(n-2k)/k, beta > 0 guarantees v > 0)");
            }
            prof.stop_radius = r;
            return prof;
        }
        r += h;
        y = y_new;
        f1 = f_new;
        prof.grid.push_back(r);
        prof.values.push_back(y.v);
        prof.derivs.push_back(y.w);
        prof.curvs.push_back(f1.w);
        if (prof.grid.size() > max_nodes) {
            throw NumericalError("solve_profile: node budget exceeded");
        }
        const double grow = err > 0.0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)))
                                      : 5.0;
        h *= grow;
    }
    return prof;
}

// --- Picard fixed point --------------------------------------------------------

PicardResult picard_solve(const ProblemParams& p, double radius, int iters_max, double tol) {
    if (!(p.alpha > 0.0 && p.beta > 0.0)) {
        throw std::domain_error("picard_solve: treats only alpha > 0 and beta > 0");
    }
    if (!(radius > 0.0)) throw std::domain_error("picard_solve: radius must be > 0");
    if (iters_max < 1) throw std::domain_error("picard_solve: iters_max must be >= 1");
    if (!(tol > 0.0)) throw std::domain_error("picard_solve: tol must be > 0");

    const double c = p.cnk();
    const double A = p.a < 1.0 ? p.a * p.a / (2.0 * p.n)
                               : (p.a == 1.0 ? 1.0 / (2.0 * p.n) : p.a / (2.0 * p.n));
    const double c_tilde = p.beta / p.alpha + std::fabs(1.0 / p.n - p.beta / p.alpha);
    const double factor =
        (c_tilde / (2.0 * A)) * std::pow(A * p.alpha / c, 1.0 / p.k) * radius * radius;
    if (!(factor < 1.0)) {
        throw NumericalError(
            "picard_solve: contraction bound violated, "
            "(C~/2A)(A alpha/c_{n,k})^{1/k} radius^2 must be < 1");
    }

    const int n_cells = 2048;
    const std::size_t n_pts = n_cells + 1;
    const double h = radius / n_cells;
    std::vector<double> s(n_pts), phi(n_pts, p.a), shifted(n_pts), inner(n_pts), cum(n_pts),
        fval(n_pts), gf(n_pts), phi_new(n_pts);
    for (std::size_t j = 0; j < n_pts; ++j) s[j] = h * static_cast<double>(j);

    const double delta_t = p.beta / p.alpha;
    const double c1 = delta_t;
    const double c2 = 1.0 - p.n * delta_t;

    PicardResult result;
    result.contraction_factor = factor;

    auto span_tail = [](std::vector<double>& v) { return std::span<double>(v).subspan(1); };
    auto cspan_tail = [](const std::vector<double>& v) {
        return std::span<const double>(v).subspan(1);
    };

    std::vector<double> zero(n_pts, 0.0);
    for (int it = 1; it <= iters_max; ++it) {
        // inner integral int_0^s tau^{n-1} phi: the phi(0) part in closed form,
        // the remainder (which vanishes like s^2 at 0) by cumulative trapezoid
        for (std::size_t j = 0; j < n_pts; ++j) shifted[j] = phi[j] - p.a;
        kernels::scaled_power_combine(cspan_tail(s), cspan_tail(shifted), cspan_tail(zero),
                                      p.n - 1, 0, 1.0, 0.0, span_tail(inner));
        inner[0] = 0.0;
        double running = 0.0;
        cum[0] = 0.0;
        for (std::size_t j = 1; j < n_pts; ++j) {
            running += 0.5 * h * (inner[j - 1] + inner[j]);
            cum[j] = p.a * powi(s[j], p.n) / p.n + running;
        }
        // F = c1 s^k phi + c2 s^{k-n} cum
        kernels::scaled_power_combine(cspan_tail(s), cspan_tail(phi), cspan_tail(cum), p.k,
                                      p.k - p.n, c1, c2, span_tail(fval));
        fval[0] = 0.0;
        for (std::size_t j = 1; j < n_pts; ++j) {
            if (fval[j] < 0.0) {
                throw NumericalError("picard_solve: integrand left the positive cone");
            }
        }
        // G(F) = (alpha F / c)^{1/k}
        if (p.k == 1) {
            const double scale = p.alpha / c;
            for (std::size_t j = 0; j < n_pts; ++j) gf[j] = scale * fval[j];
        } else {
            const double scale = p.alpha / c;
            for (std::size_t j = 0; j < n_pts; ++j) {
                gf[j] = std::pow(scale * fval[j], 1.0 / p.k);
            }
        }
        // phi_new = a - cumulative trapezoid of G(F)
        double acc = 0.0;
        phi_new[0] = p.a;
        for (std::size_t j = 1; j < n_pts; ++j) {
            acc += 0.5 * h * (gf[j - 1] + gf[j]);
            phi_new[j] = p.a - acc;
        }
        const double update = kernels::max_abs_diff(phi_new, phi);
        phi.swap(phi_new);
        result.iterations = it;
        result.final_update = update;
        if (update < tol) {
            Profile prof;
            prof.params = p;
            prof.provenance = ProfileProvenance::numerical;
            prof.grid = std::move(s);
            prof.values = std::move(phi);
            prof.derivs.resize(n_pts);
            for (std::size_t j = 0; j < n_pts; ++j) prof.derivs[j] = -gf[j];
            result.profile = std::move(prof);
            return result;
        }
    }
    throw NumericalError("picard_solve: no convergence within iters_max iterations");
}

PicardResult picard_solve(const ProblemParams& p, const SolverConfig& cfg) {
    cfg.validate();
    return picard_solve(p, cfg.picard_radius, 200, 1e-12);
}

}  // namespace khess
