#pragma once

#include <gmpxx.h>

#include <vector>

#include "conelab/interval.hpp"

namespace conelab {

/// Dense integer polynomial, constant term first.
using ZPoly = std::vector<mpz_class>;

int zp_degree(const ZPoly& p);            // -1 for the zero polynomial
void zp_normalize(ZPoly& p);              // strip leading zeros
mpz_class zp_height(const ZPoly& p);      // max |coefficient|
mpz_class zp_content(const ZPoly& p);
ZPoly zp_primitive_part(const ZPoly& p);
ZPoly zp_neg(const ZPoly& p);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_pow(const ZPoly& a, unsigned long e);
ZPoly zp_derivative(const ZPoly& p);
/// p(a X + b)
ZPoly zp_compose_linear(const ZPoly& p, const mpz_class& a, const mpz_class& b);
bool zp_equal_up_to_sign(const ZPoly& a, const ZPoly& b);
/// a == r * b for some rational r (proportional as polynomials)?
bool zp_proportional(const ZPoly& a, const ZPoly& b);

mpz_class zp_eval_z(const ZPoly& p, const mpz_class& x);
int zp_sign_at(const ZPoly& p, const mpq_class& x);
mpq_class zp_eval_q(const ZPoly& p, const mpq_class& x);
Interval zp_eval_interval(const ZPoly& p, const Interval& x);

/// gcd(p, p') is constant.
bool zp_squarefree(const ZPoly& p);

/// Cauchy bound: every real root lies in (-B, B).
mpq_class zp_root_bound(const ZPoly& p);

/// Number of distinct real roots in (a, b] via the Sturm chain.
struct SturmChain {
    std::vector<ZPoly> seq;
    static SturmChain build(const ZPoly& p);
    long count_in(const mpq_class& a, const mpq_class& b) const;
    long variations_at(const mpq_class& x) const;
};

/// Isolating intervals (lo, hi] for all distinct real roots, ascending.
std::vector<std::pair<mpq_class, mpq_class>> isolate_all_roots(const ZPoly& p);

/// Isolating interval of width <= radius around the real root nearest to
/// `target`. Throws NoRootInWindow when p has no real root and
/// MultipleRootsUnresolved when p is not squarefree.
std::pair<mpq_class, mpq_class> isolate_root_near(const ZPoly& p, const mpq_class& target,
                                                  const mpq_class& radius);

/// p divides all non-leading coefficients, p does not divide the leading
/// one, p^2 does not divide the constant term.
bool is_eisenstein(const ZPoly& p, const mpz_class& prime);

/// The construction's polynomial family:
///   ell < n:  X^n - 2 ([g^((n-ell)/ell)] X - 1)^ell
///   ell == n: X^n - 2 g^n
ZPoly poly_family(int n, int ell, const mpz_class& g);

/// a = [g^((n-ell)/ell)]: integer part of the real power, exact.
mpz_class family_stretch(int n, int ell, const mpz_class& g);

}  // namespace conelab
