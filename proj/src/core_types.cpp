#include "khess/core_types.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace khess {

double c_nk(int n, int k) {
    if (n < 1) throw std::domain_error("c_nk: dimension n must be >= 1");
    if (k < 1 || k > n) throw std::domain_error("c_nk: requires 1 <= k <= n");
    // binomial by the multiplicative rule; every intermediate product
    // binom(n, 0..j) is an integer, so the division is exact.
    std::uint64_t binom = 1;
    for (int j = 1; j <= k; ++j) {
        const auto factor = static_cast<std::uint64_t>(n - k + j);
        if (binom > UINT64_MAX / factor) {
            throw std::domain_error("c_nk: binomial exceeds the exact integer range");
        }
        binom = binom * factor / static_cast<std::uint64_t>(j);
    }
    return static_cast<double>(binom) / static_cast<double>(n);
}

double unit_sphere_area(int n) {
    if (n < 1) throw std::domain_error("unit_sphere_area: n must be >= 1");
    // Gamma(n/2) by the recurrence from Gamma(1) = 1, Gamma(1/2) = sqrt(pi).
    const long double pi = 3.14159265358979323846264338327950288L;
    long double g = (n % 2 == 0) ? 1.0L : std::sqrt(pi);
    for (long double x = (n % 2 == 0) ? 1.0L : 0.5L; x < n / 2.0L - 0.25L; x += 1.0L) {
        g *= x;
    }
    return static_cast<double>(2.0L * std::pow(pi, n / 2.0L) / g);
}

ProblemParams::ProblemParams(int n_, int k_, double alpha_, double beta_, double a_)
    : n(n_), k(k_), alpha(alpha_), beta(beta_), a(a_), cnk_(c_nk(n_, k_)) {
    if (!(a > 0.0)) throw std::domain_error("ProblemParams: initial value a must be > 0");
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::domain_error("ProblemParams: exponents must be finite");
    }
}

double ProblemParams::delta() const {
    if (alpha == 0.0) throw std::domain_error("delta = beta/alpha is undefined for alpha = 0");
    return beta / alpha;
}

const char* AnsatzKind::name() const {
    switch (type_) {
        case AnsatzType::type_i: return "I";
        case AnsatzType::type_ii: return "II";
        default: return "III";
    }
}

void VerificationReport::add(std::string name, double measured, double tolerance) {
    checks.push_back({std::move(name), measured, tolerance, measured <= tolerance, false});
}

void VerificationReport::add_skipped(std::string name) {
    checks.push_back({std::move(name), 0.0, 0.0, true, true});
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.skipped && !c.passed) return false;
    }
    return true;
}

double exponent_relation_residual(const ProblemParams& p, const AnsatzKind& kind) {
    return p.alpha * (p.k - 1) + 2.0 * p.k * p.beta - kind.rho();
}

ExponentPair solve_free_exponent(const AnsatzKind& kind, int k,
                                 ExponentComponent fixed_component, double fixed_value) {
    if (k < 1) throw std::domain_error("solve_free_exponent: k must be >= 1");
    const double rho = kind.rho();
    if (fixed_component == ExponentComponent::alpha) {
        // beta = (rho - alpha (k-1)) / (2k), always solvable
        return {fixed_value, (rho - fixed_value * (k - 1)) / (2.0 * k)};
    }
    if (k == 1) {
        throw std::domain_error(
            "solve_free_exponent: for k = 1 the relation fixes beta alone and leaves alpha free");
    }
    return {(rho - 2.0 * k * fixed_value) / (k - 1), fixed_value};
}

}  // namespace khess
