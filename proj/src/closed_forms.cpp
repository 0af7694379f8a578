#include "khess/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

#include "khess/kummer.hpp"

namespace khess {

namespace {

bool near(double x, double y, double tol = 1e-12) {
    return std::fabs(x - y) <= tol * (1.0 + std::fabs(x) + std::fabs(y));
}

void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

long double alpha_zero_coefficient_ld(const ProblemParams& p) {
    const long double mag = std::fabs(static_cast<long double>(p.beta));
    const long double k = p.k;
    return ((k - 1.0L) / (2.0L * k)) *
           std::pow((k - 1.0L) * mag / ((p.n * (k - 1.0L) + 2.0L * k) * p.cnk()),
                    1.0L / (k - 1.0L));
}

long double barenblatt_gamma_ld(int n, int k, long double abs_beta) {
    const long double kk = k;
    return ((kk - 1.0L) / (2.0L * kk)) * std::pow(abs_beta / c_nk(n, k), 1.0L / kk);
}

void check_alpha_zero(const ProblemParams& p) {
    require(p.alpha == 0.0, "alpha_zero_profile: requires alpha = 0");
    require(p.beta != 0.0, "alpha_zero_profile: requires beta != 0");
    require(p.k >= 2, "alpha_zero_profile: requires k >= 2");
    if (p.beta > 0.0) {
        require(p.k % 2 == 0, "alpha_zero_profile: the beta > 0 branch requires k even");
    }
}

void check_barenblatt(const ProblemParams& p, BarenblattBranch branch) {
    require(p.k >= 2, "barenblatt_profile: requires k >= 2");
    require(p.beta != 0.0 && near(p.alpha, p.n * p.beta),
            "barenblatt_profile: requires alpha = n beta != 0");
    if (branch == BarenblattBranch::decreasing) {
        const bool ok = (p.beta > 0.0 && p.k % 2 == 1) || (p.beta < 0.0 && p.k % 2 == 0);
        require(ok, "barenblatt_profile: decreasing branch requires beta > 0 with k odd, "
                    "or beta < 0 with k even");
    } else {
        require(p.alpha < 0.0, "barenblatt_profile: increasing branch requires alpha < 0");
    }
}

}  // namespace

// --- ClosedForm ------------------------------------------------------------

long double ClosedForm::value_ld(long double r) const {
    const long double a = params.a;
    const long double k = params.k;
    switch (tag) {
        case ClosedFormTag::alpha_zero_plus: {
            const long double c = alpha_zero_coefficient_ld(params);
            const long double p = 2.0L * k / (k - 1.0L);
            const long double v = a - c * std::pow(r, p);
            return v > 0.0L ? v : 0.0L;
        }
        case ClosedFormTag::alpha_zero_minus: {
            const long double c = alpha_zero_coefficient_ld(params);
            return a + c * std::pow(r, 2.0L * k / (k - 1.0L));
        }
        case ClosedFormTag::barenblatt_compact: {
            const long double g = barenblatt_gamma_ld(params.n, params.k, std::fabs((long double)params.beta));
            const long double bracket = std::pow(a, (k - 1.0L) / k) - g * r * r;
            return bracket > 0.0L ? std::pow(bracket, k / (k - 1.0L)) : 0.0L;
        }
        case ClosedFormTag::barenblatt_growing: {
            const long double g = barenblatt_gamma_ld(params.n, params.k, std::fabs((long double)params.beta));
            return std::pow(std::pow(a, (k - 1.0L) / k) + g * r * r, k / (k - 1.0L));
        }
        case ClosedFormTag::heat_kummer:
        default: {
            const KummerSpec spec(-params.alpha, 0.5 * params.n);
            return a * kummer_m_ld(spec, 0.25L * r * r);
        }
    }
}

long double ClosedForm::deriv_ld(long double r) const {
    const long double a = params.a;
    const long double k = params.k;
    switch (tag) {
        case ClosedFormTag::alpha_zero_plus: {
            const long double c = alpha_zero_coefficient_ld(params);
            const long double p = 2.0L * k / (k - 1.0L);
            if (a - c * std::pow(r, p) <= 0.0L) return 0.0L;
            return -c * p * std::pow(r, p - 1.0L);
        }
        case ClosedFormTag::alpha_zero_minus: {
            const long double c = alpha_zero_coefficient_ld(params);
            const long double p = 2.0L * k / (k - 1.0L);
            return c * p * std::pow(r, p - 1.0L);
        }
        case ClosedFormTag::barenblatt_compact: {
            const long double g = barenblatt_gamma_ld(params.n, params.k, std::fabs((long double)params.beta));
            const long double bracket = std::pow(a, (k - 1.0L) / k) - g * r * r;
            if (bracket <= 0.0L) return 0.0L;
            return -2.0L * g * r * (k / (k - 1.0L)) * std::pow(bracket, 1.0L / (k - 1.0L));
        }
        case ClosedFormTag::barenblatt_growing: {
            const long double g = barenblatt_gamma_ld(params.n, params.k, std::fabs((long double)params.beta));
            const long double bracket = std::pow(a, (k - 1.0L) / k) + g * r * r;
            return 2.0L * g * r * (k / (k - 1.0L)) * std::pow(bracket, 1.0L / (k - 1.0L));
        }
        case ClosedFormTag::heat_kummer:
        default: {
            const KummerSpec spec(-params.alpha + 1.0, 0.5 * params.n + 1.0);
            const long double ab = -params.alpha / (0.5L * params.n);
            return a * ab * kummer_m_ld(spec, 0.25L * r * r) * (0.5L * r);
        }
    }
}

double ClosedForm::value(double r) const { return static_cast<double>(value_ld(r)); }

double ClosedForm::deriv(double r) const { return static_cast<double>(deriv_ld(r)); }

std::optional<double> ClosedForm::support_radius() const {
    switch (tag) {
        case ClosedFormTag::alpha_zero_plus:
            return alpha_zero_support_radius(params);
        case ClosedFormTag::barenblatt_compact:
            return barenblatt_support_radius(params);
        default:
            return std::nullopt;
    }
}

bool ClosedForm::integrable() const { return support_radius().has_value(); }

const char* ClosedForm::tag_name() const {
    switch (tag) {
        case ClosedFormTag::alpha_zero_plus: return "alpha_zero_plus";
        case ClosedFormTag::alpha_zero_minus: return "alpha_zero_minus";
        case ClosedFormTag::barenblatt_compact: return "barenblatt_compact";
        case ClosedFormTag::barenblatt_growing: return "barenblatt_growing";
        default: return "heat_kummer";
    }
}

ClosedForm make_alpha_zero(const ProblemParams& params) {
    check_alpha_zero(params);
    const auto tag = params.beta > 0.0 ? ClosedFormTag::alpha_zero_plus
                                       : ClosedFormTag::alpha_zero_minus;
    return {tag, params, 0};
}

ClosedForm make_barenblatt(const ProblemParams& params, BarenblattBranch branch) {
    check_barenblatt(params, branch);
    const auto tag = branch == BarenblattBranch::decreasing ? ClosedFormTag::barenblatt_compact
                                                            : ClosedFormTag::barenblatt_growing;
    return {tag, params, 0};
}

ClosedForm make_heat_kummer(int n, int m, double a) {
    if (m < 0) throw std::domain_error("make_heat_kummer: m must be >= 0");
    ProblemParams params(n, 1, -0.5 * n - m, -0.5, a);
    return {ClosedFormTag::heat_kummer, params, m};
}

// --- profile evaluations ----------------------------------------------------

double alpha_zero_coefficient(const ProblemParams& p) {
    check_alpha_zero(p);
    return static_cast<double>(alpha_zero_coefficient_ld(p));
}

double alpha_zero_support_radius(const ProblemParams& p) {
    check_alpha_zero(p);
    require(p.beta > 0.0, "alpha_zero_support_radius: only the beta > 0 branch has one");
    const double cp = static_cast<double>(alpha_zero_coefficient_ld(p));
    return std::pow(p.a / cp, (p.k - 1.0) / (2.0 * p.k));
}

double alpha_zero_profile(const ProblemParams& p, double r) {
    require(r >= 0.0, "alpha_zero_profile: r must be >= 0");
    return make_alpha_zero(p).value(r);
}

double barenblatt_gamma(int n, int k, double abs_beta) {
    require(k >= 2, "barenblatt_gamma: requires k >= 2");
    require(abs_beta > 0.0, "barenblatt_gamma: requires |beta| > 0");
    return static_cast<double>(barenblatt_gamma_ld(n, k, abs_beta));
}

double barenblatt_support_radius(const ProblemParams& p) {
    require(p.k >= 2, "barenblatt_support_radius: requires k >= 2");
    const double g = barenblatt_gamma(p.n, p.k, std::fabs(p.beta));
    return std::sqrt(std::pow(p.a, (p.k - 1.0) / p.k) / g);
}

double barenblatt_profile(const ProblemParams& p, BarenblattBranch branch, double r) {
    require(r >= 0.0, "barenblatt_profile: r must be >= 0");
    return make_barenblatt(p, branch).value(r);
}

// --- space-time families -----------------------------------------------------

double barenblatt_selfsimilar(int n, int k, double C, double t, double x_norm) {
    require(k >= 2, "barenblatt_selfsimilar: requires k >= 2");
    require(C > 0.0, "barenblatt_selfsimilar: requires C > 0");
    require(t > 0.0, "barenblatt_selfsimilar: requires t > 0");
    const double denom = n * (k - 1.0) + 2.0 * k;
    const double alpha = n / denom;
    const double beta = 1.0 / denom;
    const long double g = barenblatt_gamma_ld(n, k, beta);
    const long double xi = static_cast<long double>(x_norm) * std::pow((long double)t, (long double)-beta);
    const long double bracket = static_cast<long double>(C) - g * xi * xi;
    if (bracket <= 0.0L) return 0.0;
    return static_cast<double>(std::pow((long double)t, (long double)-alpha) *
                               std::pow(bracket, k / (k - 1.0L)));
}

double blowup_family_k(const ProblemParams& p, double T, double t, double x_norm) {
    require(p.k >= 2, "blowup_family_k: requires k >= 2");
    require(T > 0.0 && t >= 0.0 && t < T, "blowup_family_k: requires 0 <= t < T");
    const double denom = p.n * (p.k - 1.0) + 2.0 * p.k;
    require(near(p.alpha, -p.n / denom) && near(p.beta, -1.0 / denom),
            "blowup_family_k: exponents must be alpha = -n/(n(k-1)+2k), beta = -1/(n(k-1)+2k)");
    const auto branch =
        p.k % 2 == 0 ? BarenblattBranch::decreasing : BarenblattBranch::increasing;
    const ClosedForm profile = make_barenblatt(p, branch);
    const long double tau = static_cast<long double>(T) - t;
    const long double xi = static_cast<long double>(x_norm) * std::pow(tau, (long double)p.beta);
    return static_cast<double>(std::pow(tau, (long double)p.alpha) * profile.value_ld(xi));
}

double heat_blowup(int n, int m, double a, double T, double t, double x_norm) {
    require(m >= 0, "heat_blowup: m must be >= 0");
    require(a > 0.0, "heat_blowup: a must be > 0");
    require(T > 0.0 && t >= 0.0 && t < T, "heat_blowup: requires 0 <= t < T");
    const KummerSpec spec(0.5 * n + m, 0.5 * n);
    const long double tau = static_cast<long double>(T) - t;
    const long double z = 0.25L * x_norm * x_norm / tau;
    return static_cast<double>(a * std::pow(tau, -(n + 2.0L * m) / 2.0L) * kummer_m_ld(spec, z));
}

}  // namespace khess
