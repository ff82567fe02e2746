#include "conelab/vectors.hpp"

#include <algorithm>

#include "conelab/errors.hpp"

namespace conelab {

IntVector IntVector::from_longs(const std::vector<long>& e) {
    IntVector v;
    v.entries.reserve(e.size());
    for (long x : e) v.entries.emplace_back(x);
    return v;
}

bool IntVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const mpz_class& z) { return z == 0; });
}

bool IntVector::lex_less(const IntVector& o) const {
    return std::lexicographical_compare(entries.begin(), entries.end(),
                                        o.entries.begin(), o.entries.end());
}

mpz_class height(const IntVector& x) {
    mpz_class h = 0;
    for (const auto& e : x.entries) {
        mpz_class a = ::abs(e);
        if (a > h) h = a;
    }
    return h;
}

bool in_cone(const IntVector& x, const ConeSpec& spec) {
    int n = x.n();
    if (spec.ell < 1 || spec.ell > n) throw DomainError("cone ell out of range");
    if (spec.constant_C <= 0) throw DomainError("cone constant must be positive");
    if (spec.ell == n) return true;
    mpz_class head = 0, tail = 0;
    for (int i = 0; i < spec.ell; ++i) {
        mpz_class a = ::abs(x.entries[i]);
        if (a > head) head = a;
    }
    for (int i = spec.ell; i < n; ++i) {
        mpz_class a = ::abs(x.entries[i]);
        if (a > tail) tail = a;
    }
    mpq_class lhs(tail), rhs = spec.constant_C * mpq_class(head);
    return spec.strict ? lhs < rhs : lhs <= rhs;
}

bool in_counting_cone(const IntVector& x, int ell) {
    int n = x.n();
    if (ell < 1 || ell >= n) throw DomainError("counting cone needs 1 <= ell < n");
    mpz_class head = 0, tail = 0;
    for (int i = 0; i < ell; ++i) {
        mpz_class a = ::abs(x.entries[i]);
        if (a > head) head = a;
    }
    for (int i = ell; i < n; ++i) {
        mpz_class a = ::abs(x.entries[i]);
        if (a > tail) tail = a;
    }
    return 2 * tail <= head;
}

RealVector::RealVector(std::vector<PrecisionReal> c) : coords(std::move(c)) {
    if (coords.empty()) throw ValidationError("RealVector needs n >= 1");
}

int RealVector::precision_bits() const {
    int b = coords.front().precision_bits();
    for (const auto& c : coords) b = std::min(b, c.precision_bits());
    return b;
}

bool RealVector::all_exact() const {
    return std::all_of(coords.begin(), coords.end(),
                       [](const PrecisionReal& c) { return c.exact_value() != nullptr; });
}

RealVector RealVector::at_precision(int bits) const {
    std::vector<PrecisionReal> c;
    c.reserve(coords.size());
    for (const auto& x : coords) c.push_back(x.at_precision(bits));
    return RealVector(std::move(c));
}

}  // namespace conelab
