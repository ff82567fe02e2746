#pragma once

#include "conelab/estimators.hpp"

namespace conelab {

/// ell * w_hat / (w_hat - n + ell); requires w_hat > n - ell.
double bound_eq5(double w_hat, int n, int ell);
mpq_class bound_eq5_exact(const mpq_class& w_hat, int n, int ell);

/// w_hat - 1 + w_hat / w; requires w >= w_hat > 1.
double bound_thurnheer(double w_hat, double w);

/// (n - 1 + sqrt(n^2 + 2n - 3)) / 2 for n >= 2.
double bound_golden(int n);
Interval bound_golden_interval(int n, int bits = 128);

/// 2 ell - ell (2 ell - 1) / (n - 1 + ell) for 1 <= ell < n.
double bound_veronese(int n, int ell);
mpq_class bound_veronese_exact(int n, int ell);

/// eta with (ell eta + n - ell)/eta = mu + eps, i.e.
/// eta = (n - ell) / (mu + eps - ell); requires mu + eps > ell.
double eta_for(double mu, int ell, int n, double eps);
mpq_class eta_for_exact(const mpq_class& mu, int ell, int n, const mpq_class& eps);

/// Convex body: |x_i| <= N^eta for i <= ell, |x_i| <= N for ell < i <= n,
/// |x . alpha + x_0| <= N^(-ell eta - n + ell). Volume is 2^(n+1) exactly,
/// so a nonzero integer point always exists.
struct BodySpec {
    RealVector alpha;
    long N = 1;
    mpq_class eta = 1;
    int ell = 1;

    /// The exponent identity behind the exact volume: the N-powers cancel.
    mpq_class volume_exponent() const;
    mpq_class form_exponent() const { return -(mpq_class(ell) * eta + n() - ell); }
    int n() const { return alpha.n(); }
};

struct BodyPoint {
    mpz_class x0;
    IntVector x;
    Interval form_value;    // certified |x . alpha + x0|
    mpz_class head_bound;   // floor(N^eta), recorded
};

/// Returns a certified nonzero integer point of the body. Failure to find
/// one within the exhaustive budget is a bug by Minkowski's theorem and
/// throws SearchBudgetExceeded.
BodyPoint minkowski_body_search(const BodySpec& spec);

/// Joins the truncated estimators with the closed-form calculators.
struct BoundsReport {
    int n = 0;
    int ell = 0;
    long n_max = 0;
    double w_hat_estimate = 0;
    double w_estimate = 0;
    double mu_estimate = 0;        // cone ell
    double mu_full_estimate = 0;   // ell = n (same as w)
    double eq5_at_estimates = 0;
    double thurnheer_at_estimates = 0;
    double golden = 0;
    std::vector<double> veronese;  // ell = 1 .. n-1
    bool tautology_violated = false;  // mu_ell > mu_n beyond certified bounds
    std::vector<std::string> notes;
};
BoundsReport bounds_report(const RealVector& alpha, int ell, long n_max,
                           long burn_in = 10);

}  // namespace conelab
