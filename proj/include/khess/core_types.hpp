#pragma once

#include <string>
#include <vector>

namespace khess {

/// (1/n) * binomial(n, k), the constant of the radial k-Hessian reduction
///   S_k(D^2 v) = c_{n,k} r^{1-n} (r^{n-k} (v')^k)'.
/// Exact for every 1 <= k <= n that fits a 64-bit binomial.
double c_nk(int n, int k);

/// Surface area of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

// Parameters of the radial profile problem
//   c_{n,k} r^{1-n} (r^{n-k} (v')^k)' + alpha v + beta r v' = 0,
//   v(0) = a > 0, v'(0) = 0.
struct ProblemParams {
    int n;
    int k;
    double alpha;
    double beta;
    double a;

    ProblemParams(int n_, int k_, double alpha_, double beta_, double a_);

    double cnk() const { return cnk_; }

    // delta = beta/alpha, defined only when alpha != 0.
    double delta() const;

private:
    double cnk_;
};

enum class AnsatzType { type_i, type_ii, type_iii };

// Self-similar ansatz together with the right-hand side rho of the exponent
// relation alpha (k-1) + 2 k beta = rho. rho is stored, not recomputed, so
// type I and type II cannot be confused by a sign slip.
class AnsatzKind {
public:
    static AnsatzKind type_i() { return {AnsatzType::type_i, 1}; }
    static AnsatzKind type_ii() { return {AnsatzType::type_ii, -1}; }
    static AnsatzKind type_iii() { return {AnsatzType::type_iii, 0}; }

    AnsatzType type() const { return type_; }
    int rho() const { return rho_; }
    const char* name() const;

private:
    AnsatzKind(AnsatzType t, int r) : type_(t), rho_(r) {}
    AnsatzType type_;
    int rho_;
};

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool skipped = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    // passed is derived: measured <= tolerance.
    void add(std::string name, double measured, double tolerance);
    // hypothesis of the check does not apply to these parameters
    void add_skipped(std::string name);
    bool all_passed() const;
};

/// alpha (k-1) + 2 k beta - rho; zero iff (alpha, beta) are admissible
/// self-similar exponents for the given ansatz.
double exponent_relation_residual(const ProblemParams& p, const AnsatzKind& kind);

enum class ExponentComponent { alpha, beta };

struct ExponentPair {
    double alpha;
    double beta;
};

/// Solve alpha (k-1) + 2 k beta = rho with one component held fixed.
/// For k = 1 the relation reads 2 beta = rho independently of alpha, so
/// fixing beta leaves alpha undetermined and is rejected.
ExponentPair solve_free_exponent(const AnsatzKind& kind, int k,
                                 ExponentComponent fixed_component, double fixed_value);

}  // namespace khess
