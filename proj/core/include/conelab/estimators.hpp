#pragma once

#include "conelab/scan.hpp"

namespace conelab {

/// Geometric grid X = 2, 4, 8, ... capped at n_max (the finite proxy for
/// "every X > 1" in the uniform exponent).
std::vector<long> default_uniform_grid(long n_max);

/// estimate = max over records with h >= burn_in of -log(err)/log(h).
/// Throws NoRecords when nothing survives the burn-in.
ExponentReport estimate_mu(std::vector<ConeRecord> records, long burn_in, int n, int ell,
                           long n_max, long unresolved_count = 0);

/// Convenience: record_scan then estimate_mu.
ExponentReport estimate_mu(const RealVector& alpha, const ConeSpec& spec, long n_max,
                           long burn_in = 10, const EscalationPolicy& pol = {});

/// Classical exponent: the vacuous cone (ell = n).
ExponentReport estimate_w(const RealVector& alpha, long n_max, long burn_in = 10,
                          const EscalationPolicy& pol = {});

/// Uniform exponent at truncation: for each grid X, bestErr(X) is the least
/// positive error at height <= X (unrestricted); the estimate is the minimum
/// of -log bestErr(X) / log X over the grid. The Dirichlet pigeonhole bound
/// bestErr(X) < ((X+1)^n - 1)^(-1) is enforced for every grid point not
/// shadowed by an exact-zero prune.
ExponentReport estimate_w_hat(const RealVector& alpha, long n_max,
                              std::vector<long> grid = {},
                              const EscalationPolicy& pol = {});

/// Auxiliary exponent (ell head coordinates plus one tail coordinate at a
/// time); estimate as in estimate_mu.
ExponentReport estimate_nu_tilde(const RealVector& alpha, int ell, long n_max,
                                 long burn_in = 10, const EscalationPolicy& pol = {});

/// True iff the least positive ||x . alpha|| over head-only vectors
/// (tails zero, 0 < max|x_i| <= N) is strictly below ((N+1)^ell - 1)^(-1).
/// Vacuously true when no positive value exists at all.
bool dirichlet_floor_check(const RealVector& alpha, const ConeSpec& spec, long N,
                           const EscalationPolicy& pol = {});

}  // namespace conelab
