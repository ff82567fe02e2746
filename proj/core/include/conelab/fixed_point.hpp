#pragma once

#include <cstdint>
#include <vector>

#include "conelab/vectors.hpp"

namespace conelab {

using u128 = unsigned __int128;

/// Coordinates reduced mod 1 in 128-bit fixed point (units of 2^-128).
///
/// Shell scans run entirely in wrap-around integer arithmetic: the position
/// of x is sum x_i * unit_i mod 2^128, and the true fractional position
/// differs from it by at most sum |x_i| * slack_i units. Comparisons decided
/// outside that slack are certified; the rest fall back to interval
/// arithmetic on the original coordinates.
struct FixedPointAlpha {
    int n = 0;
    std::vector<u128> units;    // approximate frac(alpha_i) * 2^128
    std::vector<int> slack;     // per-coordinate error bound in units (0 or 1)

    static FixedPointAlpha build(const RealVector& alpha);

    /// Position of x mod 2^128 plus the accumulated slack in units.
    u128 position(const std::vector<long>& x) const;
    long slack_units(const std::vector<long>& x) const;

    /// min(p, 2^128 - p): distance to the nearest wrap point in units.
    static u128 wrap_dist(u128 p) { return p <= (~p + 1) ? p : (~p + 1); }
};

/// Sorted positions of k * unit mod 2^128 for k = 0, +-1, ..., +-bound,
/// grown incrementally one |k| at a time.
class PositionLadder {
public:
    explicit PositionLadder(u128 unit, long reserve_bound = 0);

    long bound() const { return bound_; }
    void extend_to(long m);

    /// Emits ladder entries in non-decreasing circular distance from a
    /// target, each exactly once (two-pointer merge around the circle).
    class Walker {
    public:
        bool next(long& k, u128& d);

    private:
        friend class PositionLadder;
        const PositionLadder* lad_ = nullptr;
        u128 target_ = 0;
        size_t fwd_ = 0;
        size_t bwd_ = 0;
        size_t emitted_ = 0;
    };
    Walker walk(u128 target) const;

private:
    struct Entry {
        u128 pos;
        long k;
    };
    std::vector<Entry> sorted_;
    u128 unit_;
    long bound_ = -1;

    void insert(u128 pos, long k);
    size_t lower_bound_pos(u128 p) const;
};

}  // namespace conelab
