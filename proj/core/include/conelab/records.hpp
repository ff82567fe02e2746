#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conelab/linear_form.hpp"
#include "conelab/vectors.hpp"

namespace conelab {

/// A best-approximation record: a cone vector whose error beats every cone
/// vector of smaller height.
struct ConeRecord {
    IntVector x;
    long h = 0;
    Interval err;                          // certified, err > 0
    std::optional<mpq_class> exact_err;    // exact rational path
    std::optional<double> ratio;           // -log(err)/log(h); none at h == 1
    double ratio_lo = 0.0;                 // certified bounds when defined
    double ratio_hi = 0.0;
};

enum class ExponentKind { mu, w, w_hat, nu_tilde };

const char* exponent_kind_name(ExponentKind k);

/// Truncated exponent estimate plus everything needed to audit it.
struct ExponentReport {
    ExponentKind kind = ExponentKind::mu;
    int n = 0;
    int ell = 0;
    double estimate = 0.0;
    long burn_in_height = 0;
    long truncation_height = 0;
    long unresolved_count = 0;
    std::vector<ConeRecord> records;

    struct GridPoint {
        long X = 0;
        double best_err_lo = 0.0;
        double best_err_hi = 0.0;
        double ratio = 0.0;
        bool dirichlet_ok = true;
    };
    std::vector<GridPoint> grid_points;    // w_hat only
};

/// Side counters every scan reports; nothing is dropped silently.
struct ScanStats {
    long unresolved = 0;
    long exact_zero_skips = 0;
    long certified_evals = 0;
    long first_zero_height = -1;        // -1: no exact zero seen
    long first_unresolved_height = -1;  // -1: nothing dropped at the cap

    void note_zero(long h) {
        ++exact_zero_skips;
        if (first_zero_height < 0 || h < first_zero_height) first_zero_height = h;
    }
    void note_unresolved(long h) {
        ++unresolved;
        if (first_unresolved_height < 0 || h < first_unresolved_height)
            first_unresolved_height = h;
    }
    /// Heights at or beyond which the minimum may have been pruned.
    bool shadowed_at(long h) const {
        return (first_zero_height >= 0 && first_zero_height <= h) ||
               (first_unresolved_height >= 0 && first_unresolved_height <= h);
    }
};

}  // namespace conelab
