#pragma once

#include <gmpxx.h>

#include <optional>

#include "conelab/interval.hpp"

namespace conelab {

/// Approximation quality function psi(h) = h^(-w) * (log h)^log_exp for
/// h >= 2, with psi(1) = 1. Non-increasing from `monotone_from` on
/// (== 2 unless log_exp > 0); the threshold is recorded and enforced by
/// consumers that assume monotonicity.
struct ApproxFunction {
    mpq_class w;
    mpq_class log_exp = 0;
    long monotone_from = 2;

    static ApproxFunction power(const mpq_class& w);
    static ApproxFunction power_log(const mpq_class& w, const mpq_class& log_exp);

    /// Certified enclosure of psi(h).
    Interval eval(long h, int bits = 96) const;
    /// Exact value when w is a nonnegative integer and log_exp == 0.
    std::optional<mpq_class> eval_exact(long h) const;
    double eval_double(long h) const;
};

}  // namespace conelab
