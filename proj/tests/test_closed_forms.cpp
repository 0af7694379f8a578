#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "khess/closed_forms.hpp"
#include "khess/verify.hpp"

using namespace khess;

namespace {

// normalized residual of the divergence-form ODE at r, with S_k from the
// nested finite-difference oracle and v' analytic
double ode_residual(const ClosedForm& form, double r) {
    const ProblemParams& p = form.params;
    auto v = [&](long double x) { return form.value_ld(x); };
    const double sk = radial_k_hessian(p, v, r);
    const double lhs = sk + p.alpha * form.value(r) + p.beta * r * form.deriv(r);
    const double scale = std::fabs(sk) + std::fabs(p.alpha * form.value(r)) +
                         std::fabs(p.beta * r * form.deriv(r)) + 1e-300;
    return std::fabs(lhs) / scale;
}

// Newton divided differences on (z_i, y_i)
std::vector<double> newton_coeffs(const std::vector<double>& z, const std::vector<double>& y) {
    std::vector<double> c = y;
    for (std::size_t j = 1; j < z.size(); ++j) {
        for (std::size_t i = z.size() - 1; i >= j; --i) {
            c[i] = (c[i] - c[i - 1]) / (z[i] - z[i - j]);
        }
    }
    return c;
}

double newton_eval(const std::vector<double>& z, const std::vector<double>& c, double x) {
    double acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * (x - z[i]) + c[i];
    return acc;
}

}  // namespace

TEST_CASE("alpha-zero coefficients: n=2, k=2, beta=1") {
    const ProblemParams p(2, 2, 0.0, 1.0, 1.0);
    // C_+ = ((k-1)/2k) ((k-1) beta / ((n(k-1)+2k) c_{n,k}))^{1/(k-1)}
    //     = (1/4) * (1 / (6 * 1/2)) = 1/12
    CHECK(alpha_zero_coefficient(p) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(alpha_zero_support_radius(p) ==
          doctest::Approx(std::pow(12.0, 0.25)).epsilon(1e-15));
}

TEST_CASE("alpha-zero profile values and cutoff") {
    // beta < 0 branch: v(0) = a, grows like a + C_- r^{2k/(k-1)}
    {
        const ProblemParams p(3, 3, 0.0, -0.5, 2.0);
        const ClosedForm form = make_alpha_zero(p);
        CHECK(form.value(0.0) == 2.0);
        const double c_minus = alpha_zero_coefficient(p);
        CHECK(form.value(1.5) ==
              doctest::Approx(2.0 + c_minus * std::pow(1.5, 3.0)).epsilon(1e-14));
        CHECK_FALSE(form.integrable());
    }
    // beta > 0, k even: compact, continuous at rbar, zero beyond
    {
        const ProblemParams p(2, 2, 0.0, 1.0, 1.0);
        const ClosedForm form = make_alpha_zero(p);
        const double rbar = alpha_zero_support_radius(p);
        CHECK(form.value(rbar) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(form.value(rbar * (1.0 - 1e-6)) > 0.0);
        CHECK(form.value(rbar * 1.5) == 0.0);
        CHECK(form.deriv(rbar * 1.5) == 0.0);
        CHECK(form.support_radius().has_value());
        CHECK(form.integrable());
    }
}

TEST_CASE("alpha-zero profiles satisfy the ODE (finite-difference residual)") {
    for (const ProblemParams& p :
         {ProblemParams(2, 2, 0.0, 1.0, 1.0), ProblemParams(4, 2, 0.0, 2.0, 1.5),
          ProblemParams(3, 3, 0.0, -0.5, 1.0), ProblemParams(5, 4, 0.0, -1.0, 2.0)}) {
        const ClosedForm form = make_alpha_zero(p);
        for (double r : {0.1, 0.5}) {
            CAPTURE(p.n);
            CAPTURE(p.k);
            CAPTURE(r);
            CHECK(ode_residual(form, r) <= 1e-8);
        }
    }
}

TEST_CASE("every closed form passes the ODE residual at 20 interior radii") {
    struct Family {
        ClosedForm form;
        double hi;  // sampling range, inside the support where applicable
    };
    std::vector<Family> families;
    {
        ProblemParams p(2, 2, 0.0, 1.0, 1.0);
        families.push_back({make_alpha_zero(p), 0.95 * alpha_zero_support_radius(p)});
    }
    {
        ProblemParams p(3, 3, 0.0, -0.5, 1.0);
        families.push_back({make_alpha_zero(p), 2.0});
    }
    {
        ProblemParams p(3, 3, 0.25, 1.0 / 12.0, 1.0);
        families.push_back({make_barenblatt(p, BarenblattBranch::decreasing),
                            0.95 * barenblatt_support_radius(p)});
    }
    {
        ProblemParams p(3, 2, -3.0 / 7.0, -1.0 / 7.0, 1.0);
        families.push_back({make_barenblatt(p, BarenblattBranch::decreasing),
                            0.95 * barenblatt_support_radius(p)});
    }
    {
        ProblemParams p(3, 3, -0.25, -1.0 / 12.0, 1.0);
        families.push_back({make_barenblatt(p, BarenblattBranch::increasing), 3.0});
    }
    {
        families.push_back({make_heat_kummer(3, 0, 1.0), 3.0});
        families.push_back({make_heat_kummer(3, 2, 1.5), 3.0});
    }
    for (const Family& fam : families) {
        CAPTURE(fam.form.tag_name());
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double r = fam.hi * i / 21.0;
            worst = std::max(worst, ode_residual(fam.form, r));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("alpha-zero parameter gates") {
    CHECK_THROWS_AS(make_alpha_zero(ProblemParams(3, 3, 0.0, 1.0, 1.0)),
                    std::domain_error);  // beta > 0 needs k even
    CHECK_THROWS_AS(make_alpha_zero(ProblemParams(3, 1, 0.0, -1.0, 1.0)),
                    std::domain_error);  // k >= 2
    CHECK_THROWS_AS(make_alpha_zero(ProblemParams(3, 2, 0.1, 1.0, 1.0)),
                    std::domain_error);  // alpha != 0
    CHECK_THROWS_AS(make_alpha_zero(ProblemParams(3, 2, 0.0, 0.0, 1.0)),
                    std::domain_error);  // beta = 0
}

TEST_CASE("barenblatt profile basics") {
    // valid decreasing: beta > 0 with k odd (type I exponents)
    {
        const ProblemParams p(3, 3, 0.25, 1.0 / 12.0, 1.0);
        const ClosedForm form = make_barenblatt(p, BarenblattBranch::decreasing);
        CHECK(form.value(0.0) == doctest::Approx(1.0).epsilon(1e-14));
        const double r_star = barenblatt_support_radius(p);
        CHECK(form.value(r_star) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(form.value(r_star + 1.0) == 0.0);
    }
    // valid decreasing: beta < 0 with k even (type II exponents)
    {
        const ProblemParams p(3, 2, -3.0 / 7.0, -1.0 / 7.0, 1.0);
        const ClosedForm form = make_barenblatt(p, BarenblattBranch::decreasing);
        // gamma = (1/4) sqrt(1/7), r*^2 = 1/gamma = 4 sqrt(7)
        const double r_star = barenblatt_support_radius(p);
        CHECK(r_star * r_star == doctest::Approx(4.0 * std::sqrt(7.0)).epsilon(1e-14));
        CHECK(form.value(0.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(form.value(r_star) == doctest::Approx(0.0).epsilon(1e-12));
    }
    // increasing branch: alpha = n beta < 0, either parity
    {
        const ProblemParams p(3, 3, -0.25, -1.0 / 12.0, 1.0);
        const ClosedForm form = make_barenblatt(p, BarenblattBranch::increasing);
        CHECK(form.value(0.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(form.value(2.0) > 1.0);
        CHECK_FALSE(form.integrable());
    }
}

TEST_CASE("barenblatt branch gates") {
    // beta > 0 with k even cannot solve the separable form
    CHECK_THROWS_AS(
        make_barenblatt(ProblemParams(3, 2, 3.0 / 7.0, 1.0 / 7.0, 1.0),
                        BarenblattBranch::decreasing),
        std::domain_error);
    // increasing branch needs alpha < 0
    CHECK_THROWS_AS(
        make_barenblatt(ProblemParams(3, 3, 0.25, 1.0 / 12.0, 1.0),
                        BarenblattBranch::increasing),
        std::domain_error);
    // alpha must equal n beta
    CHECK_THROWS_AS(make_barenblatt(ProblemParams(3, 3, -0.3, -1.0 / 12.0, 1.0),
                                    BarenblattBranch::increasing),
                    std::domain_error);
}

TEST_CASE("barenblatt profiles satisfy the separable identity") {
    // c_{n,k} r^{n-k} (v')^k + beta r^n v = 0 inside the support
    for (auto [p, branch] : {
             std::pair{ProblemParams(3, 3, 0.25, 1.0 / 12.0, 1.0),
                       BarenblattBranch::decreasing},
             std::pair{ProblemParams(3, 2, -3.0 / 7.0, -1.0 / 7.0, 1.0),
                       BarenblattBranch::decreasing},
             std::pair{ProblemParams(3, 3, -0.25, -1.0 / 12.0, 1.0),
                       BarenblattBranch::increasing},
             std::pair{ProblemParams(5, 4, -5.0 / 23.0, -1.0 / 23.0, 2.0),
                       BarenblattBranch::increasing},
         }) {
        const ClosedForm form = make_barenblatt(p, branch);
        const double r_hi = form.support_radius().value_or(2.0);
        for (double frac : {0.2, 0.5, 0.8}) {
            const double r = frac * r_hi;
            const double lhs = p.cnk() * std::pow(r, p.n - p.k) *
                                   std::pow(form.deriv(r), p.k) +
                               p.beta * std::pow(r, p.n) * form.value(r);
            const double scale = std::fabs(p.beta) * std::pow(r, p.n) * form.value(r) + 1e-300;
            CAPTURE(p.k);
            CAPTURE(r);
            CHECK(std::fabs(lhs) / scale <= 1e-9);
        }
    }
}

TEST_CASE("barenblatt profiles satisfy the full ODE (finite differences)") {
    for (auto [p, branch] : {
             std::pair{ProblemParams(3, 3, 0.25, 1.0 / 12.0, 1.0),
                       BarenblattBranch::decreasing},
             std::pair{ProblemParams(3, 2, -3.0 / 7.0, -1.0 / 7.0, 1.0),
                       BarenblattBranch::decreasing},
             std::pair{ProblemParams(3, 3, -0.25, -1.0 / 12.0, 1.0),
                       BarenblattBranch::increasing},
         }) {
        const ClosedForm form = make_barenblatt(p, branch);
        const double r_hi = form.support_radius().value_or(2.0);
        for (double frac : {0.25, 0.6}) {
            CHECK(ode_residual(form, frac * r_hi) <= 1e-8);
        }
    }
}

TEST_CASE("the two gamma routes agree when alpha = n beta") {
    // the (|alpha|/(n c))^{1/k} and (|beta|/c)^{1/k} routes must coincide
    for (auto [n, k] : {std::pair{3, 3}, std::pair{3, 2}, std::pair{5, 4}, std::pair{9, 5}}) {
        const double denom = n * (k - 1.0) + 2.0 * k;
        const double abs_beta = 1.0 / denom;
        const double abs_alpha = n / denom;
        const double via_beta = barenblatt_gamma(n, k, abs_beta);
        const double via_alpha =
            ((k - 1.0) / (2.0 * k)) * std::pow(abs_alpha / (n * c_nk(n, k)), 1.0 / k);
        CHECK(via_beta == doctest::Approx(via_alpha).epsilon(1e-15));
    }
}

TEST_CASE("barenblatt_selfsimilar exponents and positive part") {
    // n=3, k=2: alpha=3/7, beta=1/7, gamma=(1/4) sqrt(1/7)
    const double g = barenblatt_gamma(3, 2, 1.0 / 7.0);
    CHECK(g == doctest::Approx(0.25 * std::sqrt(1.0 / 7.0)).epsilon(1e-15));
    const double C = 1.0;
    CHECK(barenblatt_selfsimilar(3, 2, C, 1.0, 0.0) == doctest::Approx(C * C).epsilon(1e-14));
    // far outside the bracket the positive part vanishes
    CHECK(barenblatt_selfsimilar(3, 2, C, 1.0, 100.0) == 0.0);
    // hand evaluation at an interior point
    const double x = 1.0, t = 2.0;
    const double beta = 1.0 / 7.0, alpha = 3.0 / 7.0;
    const double xi = x * std::pow(t, -beta);
    const double expect = std::pow(t, -alpha) * std::pow(C - g * xi * xi, 2.0);
    CHECK(barenblatt_selfsimilar(3, 2, C, t, x) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(barenblatt_selfsimilar(3, 2, 1.0, 0.0, 1.0), std::domain_error);  // t > 0
    CHECK_THROWS_AS(barenblatt_selfsimilar(1, 2, 1.0, 1.0, 1.0), std::domain_error);  // k > n
}

TEST_CASE("scaling-group invariance of the type I family") {
    // u is invariant under c u(s t, b x) exactly for b = s^beta, c = s^alpha,
    // and those parameters satisfy s = c^{k-1} b^{2k}
    for (auto [n, k] : {std::pair{3, 3}, std::pair{5, 3}, std::pair{4, 2}}) {
        const double denom = n * (k - 1.0) + 2.0 * k;
        const double alpha = n / denom, beta = 1.0 / denom;
        for (double s : {0.5, 2.0, 3.7}) {
            const double b = std::pow(s, beta), c = std::pow(s, alpha);
            CHECK(s == doctest::Approx(std::pow(c, k - 1.0) * std::pow(b, 2.0 * k))
                           .epsilon(1e-12));
            for (double t : {0.7, 1.3}) {
                for (double x : {0.0, 0.4, 1.1}) {
                    const double lhs = c * barenblatt_selfsimilar(n, k, 1.0, s * t, b * x);
                    const double rhs = barenblatt_selfsimilar(n, k, 1.0, t, x);
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("blowup_family_k values and divergence") {
    const double denom = 3.0 * 2.0 + 6.0;  // n=3, k=3
    const ProblemParams podd(3, 3, -3.0 / denom, -1.0 / denom, 1.0);
    const double T = 1.0;
    // at x = 0 the value is (T-t)^alpha a, diverging as t -> T
    const double u1 = blowup_family_k(podd, T, T - 1e-2, 0.0);
    const double u2 = blowup_family_k(podd, T, T - 1e-4, 0.0);
    CHECK(u1 == doctest::Approx(std::pow(1e-2, podd.alpha)).epsilon(1e-12));
    CHECK(u2 / u1 == doctest::Approx(std::pow(100.0, -podd.alpha)).epsilon(1e-10));

    // k even: compact support with radius T^{|beta|} r* at t = 0
    const double denom2 = 3.0 * 1.0 + 4.0;  // n=3, k=2
    const ProblemParams peven(3, 2, -3.0 / denom2, -1.0 / denom2, 1.0);
    const double r_star = barenblatt_support_radius(peven);
    const double support_t0 = std::pow(T, -peven.beta) * r_star;
    CHECK(blowup_family_k(peven, T, 0.0, 0.999 * support_t0) > 0.0);
    CHECK(blowup_family_k(peven, T, 0.0, 1.001 * support_t0) == 0.0);

    CHECK_THROWS_AS(blowup_family_k(ProblemParams(3, 3, -0.3, -1.0 / denom, 1.0), T, 0.5, 0.0),
                    std::domain_error);  // exponents must match the display
    CHECK_THROWS_AS(blowup_family_k(podd, T, T, 0.0), std::domain_error);  // t < T
}

TEST_CASE("heat_blowup closed forms for m = 0, 1") {
    const int n = 3;
    const double a = 2.0, T = 1.5;
    for (double t : {0.0, 0.7, 1.4}) {
        for (double x : {0.0, 0.5, 1.0, 2.0}) {
            const double tau = T - t;
            const double m0 = a * std::pow(tau, -1.5) * std::exp(x * x / (4.0 * tau));
            CHECK(heat_blowup(n, 0, a, T, t, x) == doctest::Approx(m0).epsilon(1e-13));
            const double m1 = a * std::pow(tau, -2.5) *
                              (1.0 + x * x / (2.0 * n * tau)) *
                              std::exp(x * x / (4.0 * tau));
            CHECK(heat_blowup(n, 1, a, T, t, x) == doctest::Approx(m1).epsilon(1e-13));
        }
    }
}

TEST_CASE("heat_blowup(m) / heat_blowup(0) is a degree-m polynomial in x^2/(T-t)") {
    const int n = 3;
    const double T = 2.0, t = 1.0;
    for (int m : {1, 2, 3}) {
        // sample the ratio at m+1 nodes in y = x^2/(4(T-t)), fit, test elsewhere
        std::vector<double> ynodes, ratio;
        for (int i = 0; i <= m; ++i) {
            const double x = 0.4 * (i + 1);
            ynodes.push_back(x * x / (4.0 * (T - t)));
            ratio.push_back(heat_blowup(n, m, 1.0, T, t, x) / heat_blowup(n, 0, 1.0, T, t, x));
        }
        const auto coeffs = newton_coeffs(ynodes, ratio);
        for (double x : {0.15, 1.1, 1.9}) {
            const double y = x * x / (4.0 * (T - t));
            const double predicted = newton_eval(ynodes, coeffs, y);
            const double actual =
                heat_blowup(n, m, 1.0, T, t, x) / heat_blowup(n, 0, 1.0, T, t, x);
            CHECK(std::fabs(predicted - actual) <= 1e-9 * std::fabs(actual));
        }
    }
}

TEST_CASE("heat_blowup parameter gates") {
    CHECK_THROWS_AS(heat_blowup(3, -1, 1.0, 1.0, 0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(heat_blowup(3, 0, 0.0, 1.0, 0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(heat_blowup(3, 0, 1.0, 1.0, 1.0, 0.0), std::domain_error);  // t < T
}
