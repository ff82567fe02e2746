#pragma once

#include "conelab/fixed_point.hpp"
#include "conelab/records.hpp"

namespace conelab {

/// Record-setting cone vectors up to height n_max, heights ascending.
/// x is a record iff its certified error strictly beats every cone vector of
/// smaller height; at equal height the minimal error wins, ties resolved to
/// the lexicographically smallest entry vector. Exact zeros are skipped.
/// Fast shell drivers cover n <= 3 with C <= 1; other shapes take the
/// generic enumerator. Must agree exactly with brute_force_oracle.
std::vector<ConeRecord> record_scan(const RealVector& alpha, const ConeSpec& spec,
                                    long n_max, ScanStats* stats = nullptr,
                                    const EscalationPolicy& pol = {});

/// Same contract as record_scan via naive full enumeration of |x_i| <= N;
/// the independent reference path for tests. Throws CapExceeded beyond the
/// configured cap (default 200 in dimension <= 3).
std::vector<ConeRecord> brute_force_oracle(const RealVector& alpha, const ConeSpec& spec,
                                           long N, ScanStats* stats = nullptr,
                                           long cap = 200,
                                           const EscalationPolicy& pol = {});

/// Records of the sub-scan along the coordinate axis `axis` (1-based):
/// x = q e_axis, 1 <= q <= n_max. These vectors lie in every cone with
/// ell >= axis, so the resulting estimate is a lower-bound scan.
std::vector<ConeRecord> axis_record_scan(const RealVector& alpha, int axis,
                                         long n_max, ScanStats* stats = nullptr,
                                         const EscalationPolicy& pol = {});

/// Minimum positive error over head-only vectors (x_{ell+1} = ... = x_n = 0,
/// 0 < max |x_i| <= N).
struct BestError {
    bool found = false;
    FormValue value;
    IntVector witness;
};
BestError head_best_error(const RealVector& alpha, int ell, long N,
                          ScanStats* stats = nullptr,
                          const EscalationPolicy& pol = {});

/// Records for the auxiliary exponent: error is the minimum over
/// 1 <= i <= n-ell of ||x_1 a_1 + ... + x_ell a_ell + x_{ell+i} a_{ell+i}||,
/// subject to max head > max tail.
std::vector<ConeRecord> nu_tilde_scan(const RealVector& alpha, int ell,
                                      long n_max, ScanStats* stats = nullptr,
                                      const EscalationPolicy& pol = {});

/// Per-shell minimum positive cone error in 2^-128 units (C=1 strict cone).
/// slack = certified error bound of d in units; had_zero marks shells where
/// an exact zero was pruned. Exact when all coordinates are dyadic.
struct ShellMin {
    u128 d = 0;
    long slack = 0;
    bool any = false;      // false: shell has no positive value at all
    bool had_zero = false;
};
std::vector<ShellMin> shell_min_scan(const RealVector& alpha, const ConeSpec& spec,
                                     long n_max);

}  // namespace conelab
