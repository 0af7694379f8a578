#include "khess/selfsimilar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "khess/errors.hpp"
#include "khess/quadrature.hpp"

namespace khess {

namespace {

void check_relation(const ProblemParams& p, const AnsatzKind& kind) {
    const double res = exponent_relation_residual(p, kind);
    if (std::fabs(res) > 1e-12) {
        throw std::domain_error(
            "SelfSimilarSolution: exponents must satisfy alpha(k-1) + 2k beta = rho "
            "for the chosen ansatz");
    }
}

struct AnsatzFactors {
    long double prefactor;  // u = prefactor * v(x * arg_scale)
    long double arg_scale;
};

AnsatzFactors factors(const SelfSimilarSolution& sol, long double t) {
    const long double alpha = sol.params.alpha;
    const long double beta = sol.params.beta;
    switch (sol.kind.type()) {
        case AnsatzType::type_i:
            if (!(t > 0.0L)) throw std::domain_error("evaluate: type I requires t > 0");
            return {std::pow(t, -alpha), std::pow(t, -beta)};
        case AnsatzType::type_ii: {
            if (!(t >= 0.0L && t < sol.T)) {
                throw std::domain_error("evaluate: type II requires 0 <= t < T");
            }
            const long double tau = static_cast<long double>(sol.T) - t;
            return {std::pow(tau, alpha), std::pow(tau, beta)};
        }
        case AnsatzType::type_iii:
        default:
            return {std::exp(-alpha * t), std::exp(-beta * t)};
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

SelfSimilarSolution::SelfSimilarSolution(Profile prof, AnsatzKind kind_, double T_)
    : profile(std::move(prof)), kind(kind_), T(T_), params(std::get<Profile>(profile).params) {
    check_relation(params, kind);
    if (kind.type() == AnsatzType::type_ii && !(T > 0.0)) {
        throw std::domain_error("SelfSimilarSolution: type II requires a horizon T > 0");
    }
}

SelfSimilarSolution::SelfSimilarSolution(ClosedForm form, AnsatzKind kind_, double T_)
    : profile(std::move(form)), kind(kind_), T(T_),
      params(std::get<ClosedForm>(profile).params) {
    check_relation(params, kind);
    if (kind.type() == AnsatzType::type_ii && !(T > 0.0)) {
        throw std::domain_error("SelfSimilarSolution: type II requires a horizon T > 0");
    }
}

double SelfSimilarSolution::profile_value(double r) const {
    if (const auto* numeric = std::get_if<Profile>(&profile)) return numeric->value(r);
    return std::get<ClosedForm>(profile).value(r);
}

long double SelfSimilarSolution::profile_value_ld(long double r) const {
    if (const auto* numeric = std::get_if<Profile>(&profile)) {
        return numeric->value(static_cast<double>(r));
    }
    return std::get<ClosedForm>(profile).value_ld(r);
}

std::optional<double> SelfSimilarSolution::profile_support_radius() const {
    if (std::holds_alternative<Profile>(profile)) return std::nullopt;
    return std::get<ClosedForm>(profile).support_radius();
}

bool SelfSimilarSolution::profile_integrable() const {
    if (std::holds_alternative<Profile>(profile)) return false;  // decided by the tail test
    return std::get<ClosedForm>(profile).integrable();
}

long double evaluate_ld(const SelfSimilarSolution& sol, long double t, long double x_norm) {
    if (x_norm < 0.0L) throw std::domain_error("evaluate: |x| must be >= 0");
    const AnsatzFactors fac = factors(sol, t);
    return fac.prefactor * sol.profile_value_ld(x_norm * fac.arg_scale);
}

double evaluate(const SelfSimilarSolution& sol, double t, double x_norm) {
    return static_cast<double>(evaluate_ld(sol, t, x_norm));
}

double mass(const SelfSimilarSolution& sol, double t) {
    const ProblemParams& p = sol.params;
    const AnsatzFactors fac = factors(sol, t);  // also validates t

    // adaptive quadrature at absolute tolerance 1e-10 (1 + |result|), with a
    // coarse pre-pass supplying the result scale
    auto integrate_scaled = [](const std::function<double(double)>& f, double hi) {
        const double rough = integrate_gk(f, 0.0, hi, 1e-4).value;
        return integrate_gk(f, 0.0, hi, 1e-10 * (1.0 + std::fabs(rough))).value;
    };

    double profile_integral = 0.0;
    if (const auto* form = std::get_if<ClosedForm>(&sol.profile)) {
        if (!form->integrable()) {
            throw std::domain_error(
                "mass: profile is not integrable on R^n (growing family); M(t) is undefined");
        }
        // the integrand kinks at the free boundary; stopping the domain there
        // keeps the panels clean
        const double r_star = *form->support_radius();
        auto integrand = [&](double xi) {
            return form->value(xi) * std::pow(xi, p.n - 1);
        };
        profile_integral = integrate_scaled(integrand, r_star);
    } else {
        const auto& numeric = std::get<Profile>(sol.profile);
        auto integrand = [&](double xi) {
            return numeric.value(xi) * std::pow(xi, p.n - 1);
        };
        const double r_end = numeric.r_max();
        profile_integral = integrate_scaled(integrand, r_end);
        // refuse rather than extrapolate a tail the grid does not cover
        const double tail_scale = integrand(r_end) * r_end;
        if (!(tail_scale <= 1e-9 * std::fabs(profile_integral))) {
            throw std::domain_error(
                "mass: tabulated profile tail is not negligible at the grid end; "
                "M(t) would require extrapolation");
        }
    }

    // int u r^{n-1} dr = prefactor * scale^{-n} * int v(xi) xi^{n-1} dxi
    const long double scale_pow = std::pow(fac.arg_scale, static_cast<long double>(-p.n));
    return static_cast<double>(unit_sphere_area(p.n) * fac.prefactor * scale_pow *
                               static_cast<long double>(profile_integral));
}

VerificationReport dirac_trace_check(const SelfSimilarSolution& sol,
                                     const std::function<double(double)>& test_fn,
                                     std::span<const double> times, double tol) {
    if (sol.kind.type() != AnsatzType::type_i) {
        throw std::domain_error("dirac_trace_check: requires a type I solution");
    }
    const auto r_star = sol.profile_support_radius();
    if (!r_star) {
        throw std::domain_error("dirac_trace_check: requires a compactly supported profile");
    }
    if (times.size() < 2) throw std::domain_error("dirac_trace_check: needs at least two times");
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] > times[i + 1])) {
            throw std::domain_error("dirac_trace_check: times must decrease");
        }
    }

    const ProblemParams& p = sol.params;
    const double m0 = mass(sol, times.front());
    const double phi0 = test_fn(0.0);
    const double denom = std::fabs(m0 * phi0);
    if (!(denom > 0.0)) throw std::domain_error("dirac_trace_check: requires phi(0) != 0");

    VerificationReport report;
    std::vector<double> gaps;
    for (const double t : times) {
        // support of u(t, .) in physical radius
        const double r_support = *r_star * std::pow(t, p.beta);
        auto integrand = [&](double r) {
            return evaluate(sol, t, r) * test_fn(r) * std::pow(r, p.n - 1);
        };
        const double integral =
            unit_sphere_area(p.n) * integrate_gk(integrand, 0.0, r_support, 1e-12 * denom).value;
        gaps.push_back(std::fabs(integral - m0 * phi0));
    }
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
        report.add("dirac gap decreases t=" + fmt(times[i]) + " -> t=" + fmt(times[i + 1]),
                   (gaps[i + 1] - gaps[i]) / denom, 1e-12);
    }
    report.add("dirac final gap at t=" + fmt(times.back()), gaps.back() / denom, tol);
    return report;
}

VerificationReport blowup_diagnostic(const SelfSimilarSolution& sol, double radius,
                                     std::span<const double> times, double ratio_tol) {
    if (sol.kind.type() != AnsatzType::type_ii) {
        throw std::domain_error("blowup_diagnostic: requires a type II solution");
    }
    if (radius < 0.0) throw std::domain_error("blowup_diagnostic: radius must be >= 0");
    if (times.size() < 2) throw std::domain_error("blowup_diagnostic: needs at least two times");
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] < times[i + 1])) {
            throw std::domain_error("blowup_diagnostic: times must increase toward T");
        }
    }

    VerificationReport report;
    std::vector<double> sup(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) sup[i] = evaluate(sol, times[i], radius);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double expected =
            std::pow((sol.T - times[i]) / (sol.T - times[i + 1]), -sol.params.alpha);
        const std::string name =
            "blow-up ratio t=" + fmt(times[i]) + " -> t=" + fmt(times[i + 1]);
        if (sup[i] > 0.0 && sup[i + 1] > 0.0) {
            report.add(name, std::fabs(sup[i + 1] / sup[i] / expected - 1.0), ratio_tol);
        } else {
            report.add(name + " (no growth observed)", 1.0, ratio_tol);
        }
    }
    return report;
}

}  // namespace khess
