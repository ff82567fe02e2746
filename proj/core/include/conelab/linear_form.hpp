#pragma once

#include <optional>

#include "conelab/vectors.hpp"

namespace conelab {

/// Precision escalation: double the working precision until a comparison is
/// certified, up to `cap_bits`; beyond the cap the question is surrendered
/// as PrecisionExhausted (callers count such candidates as UNRESOLVED).
struct EscalationPolicy {
    int start_bits = 0;   // 0: use the vector's precision
    int cap_bits = 4096;
};

/// Certified value of ||x_1 a_1 + ... + x_n a_n||.
struct FormValue {
    enum class Kind { positive, exact_zero };
    Kind kind = Kind::positive;
    Interval dist;                        // meaningful for kind == positive
    std::optional<mpq_class> exact_dist;  // set on the exact rational path
    int bits_used = 0;

    bool is_zero() const { return kind == Kind::exact_zero; }
};

/// ||r||: distance from r to the nearest integer, as a derived PrecisionReal
/// in [0, 1/2]. Throws PrecisionExhausted when the width contract cannot be
/// met below the cap.
PrecisionReal dist_to_nearest_int(const PrecisionReal& r,
                                  const EscalationPolicy& pol = {});

/// ||x . alpha|| with certified positivity or a proof of exact zero.
/// Exactness is decided exactly whenever every coordinate carries an exact
/// rational value; otherwise precision escalates per policy.
FormValue linear_form_error(const RealVector& alpha, const IntVector& x,
                            const EscalationPolicy& pol = {});

/// Enclosure of x . alpha (no mod-1 reduction) at the given precision.
Interval linear_form_enclosure(const RealVector& alpha, const IntVector& x,
                               int bits);

}  // namespace conelab
