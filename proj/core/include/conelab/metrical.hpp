#pragma once

#include <cstdint>

#include "conelab/metrical_psi.hpp"
#include "conelab/rng.hpp"
#include "conelab/scan.hpp"

namespace conelab {

/// One Monte Carlo batch: fraction of sampled points admitting a cone
/// solution of quality psi below the truncation height.
struct TrialReport {
    int n = 0;
    int ell = 0;
    ApproxFunction psi;
    long n_max = 0;
    long trials = 0;
    uint64_t seed = 0;

    long hits = 0;
    double hit_fraction = 0.0;
    double stderr_binomial = 0.0;
    long precision_exhausted_trials = 0;

    std::vector<long> per_trial_witness_count;  // qualifying shells per trial
    std::vector<long> per_trial_first_hit;      // height of first hit, -1 if none

    // Dyadic windows [2^k, 2^(k+1)) intersected with [2, n_max]:
    // how many trials have a hit inside each window.
    std::vector<long> window_lo;
    std::vector<long> window_hi;
    std::vector<long> window_hit_trials;

    // Fixed tail windows used by the trend checks.
    long tail_half_hit_trials = 0;     // hit with h in (n_max/2, n_max]
    long tail_quarter_hit_trials = 0;  // hit with h in (n_max/4, n_max/2]
};

/// A trial draws alpha uniform in [0,1]^n (exact dyadic, 128 bits) from the
/// documented substream of `seed` and asks whether some cone vector with
/// 2 <= H(x) <= n_max has 0 < ||x . alpha|| <= psi(H(x)). All decisions are
/// exact integer comparisons for dyadic alpha and rational psi. Trials are
/// independent; with threads > 1 they fan out and are merged back in trial
/// order, so the report is identical for any thread count.
TrialReport sample_experiment(int n, int ell, const ApproxFunction& psi, long n_max,
                              long trials, uint64_t seed, int threads = 1);

/// Hausdorff dimension of the exact-order set at exponent mu >= n:
/// n - 1 + (n+1)/(mu+1).
double dim_exact_order(int n, double mu);

/// Dimension for the auxiliary exponent at nu >= ell+1:
/// ell - 1 + (ell+2)/(nu+1).
double dim_aux(int ell, double nu);

/// Fixture with a prescribed approximation ladder on the first coordinate:
/// alpha_1 = sum 2^(-a_k), a_1 = 1, a_{k+1} = ceil((w_target+1) a_k), other
/// coordinates seeded uniform. The axis ratio at q = 2^(a_k) tends to
/// w_target.
RealVector gap_series_vector(int n, const mpq_class& w_target, uint64_t seed,
                             int bits = 192);

}  // namespace conelab
