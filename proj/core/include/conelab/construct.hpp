#pragma once

#include <optional>
#include <string>

#include "conelab/polynomials.hpp"

namespace conelab {

/// Inputs of the inductive construction: prescribed exponent targets
/// mu_1 <= ... <= mu_n, the Gelfond-step exponent chi, and search budgets.
struct ConstructionParams {
    int n = 3;
    std::vector<mpq_class> targets;
    mpq_class chi;                       // > G(n)
    mpz_class g_cap;                     // per-step prime ceiling (2^40)
    mpz_class hard_cap;                  // absolute ceiling for retries (2^48)
    long candidate_budget = 2'000'000;   // (c, g) pairs examined per step
    int enlarge_retries = 2;             // g_cap multiplications by 16 on empty window

    std::vector<mpq_class> lambda;       // lambda_ell = n (mu_ell - delta_ell)
    std::vector<std::string> warnings;

    /// delta_ell = 1 - n (ell - 1) / ell.
    static mpq_class delta(int n, int ell);
    /// G(n) = 2n^3 + 2n^2 + 2n + 1.
    static mpz_class gelfond_G(int n);

    /// Validates, derives lambda, collects threshold warnings (the
    /// "sufficiently large" conditions warn rather than reject).
    static ConstructionParams make(int n, std::vector<mpq_class> targets,
                                   std::optional<mpq_class> chi = std::nullopt);

    int ell_of(long j) const { return static_cast<int>((j - 1) % n) + 1; }
    const mpq_class& nu_of(long j) const { return lambda[ell_of(j) - 1]; }
    mpq_class target_of(int ell) const { return targets[ell - 1]; }
};

/// One accepted step of the construction.
struct ConstructionStep {
    long j = 0;
    int ell = 0;
    mpz_class c;
    mpz_class g;
    ZPoly P;                    // minimal polynomial of gamma_j
    ZPoly Q;                    // P(g X - c): minimal polynomial of xi_j
    mpq_class gamma_lo, gamma_hi;
    mpq_class xi_lo, xi_hi;
    mpz_class HQ;               // height of Q
    mpq_class nu;               // nu_j = lambda_{ell(j)}
};

struct ConstructionState {
    ConstructionParams params;
    std::vector<ConstructionStep> steps;

    /// Certified enclosure of xi_j, refined to roughly `bits` of width.
    Interval xi_enclosure(long j, int bits) const;
    /// Refined rational root bracket for gamma_j.
    std::pair<mpq_class, mpq_class> gamma_refined(long j, int bits) const;
};

ConstructionState construction_begin(ConstructionParams params);

/// Appends step j = steps.size() + 1: picks (c_j, g_j) in increasing-c,
/// increasing-prime order subject to
///   2^(2n+2) c <= g <= 2^(2n+3) c,
///   g prime,  g does not divide Norm(c + gamma) = +-P(-c),
///   xi_j inside (2^(-2n-4), 2^(-2n)) and, for j >= 2, inside
///   (xi_{j-1} - g_{j-1}^(-nu)/2, xi_{j-1} + 3 g_{j-1}^(-nu)/4).
/// Throws SearchExhausted when no admissible pair exists within the budget
/// (the g bound is enlarged `enlarge_retries` times first).
void next_step(ConstructionState& state);

/// Is the u64 value prime? Deterministic Miller-Rabin base set.
bool is_prime_u64(unsigned long long v);

struct StepAudit {
    long j = 0;
    int ell = 0;
    bool resolved = false;
    double log_qval = 0;       // log |Q_j(xi_J)|
    double log_height = 0;     // log H(Q_j)
    double log_ratio = 0;      // -log|Q_j(xi_J)| / log H(Q_j)
    double target = 0;         // delta_ell + lambda_ell / n = mu_ell
    double deviation = 0;      // log_ratio - target
};

/// Evaluates |Q_j| at the newest xi enclosure. Meaningful for j < J
/// (Q_J vanishes at its own root); an unresolvable straddle reports
/// resolved = false.
StepAudit audit_step(const ConstructionState& state, long j, int bits = 768);

struct LowerBoundAudit {
    int degree_cap = 0;
    long height_cap = 0;
    double lambda_hat_log2 = 0;   // min over Q of log2(|Q(xi_J)| H(Q)^{mu_1})
    bool positive = false;        // every scanned |Q(xi_J)| certified > 0
    long scanned = 0;
    long skipped_proportional = 0;
    long unresolved = 0;
    ZPoly argmin;
};

/// Scans all primitive integer polynomials of degree <= degree_cap and
/// height <= height_cap, excluding (rational multiples of) the Q_j, and
/// certifies |Q(xi_J)| > 0, reporting the worst margin against
/// H(Q)^(-mu_1).
LowerBoundAudit audit_lower_bound(const ConstructionState& state, int degree_cap,
                                  long height_cap, int bits = 320);

}  // namespace conelab
