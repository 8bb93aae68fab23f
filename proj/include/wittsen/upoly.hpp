#pragma once

#include <gmpxx.h>

#include <vector>

#include "wittsen/errors.hpp"
#include "wittsen/padic.hpp"

namespace wittsen {

/// Dense polynomial in u over Z/p^N.  Coefficient i is the coefficient of
/// u^i, reduced into [0, p^N).  Internal plumbing shared by the quotient
/// rings and the symbolic delta layer; elements carry their own precision.
struct UPoly {
    unsigned long p = 0;
    int N = 0;
    std::vector<mpz_class> c;

    UPoly() = default;
    UPoly(unsigned long p_, int N_) : p(p_), N(N_) {}
    UPoly(unsigned long p_, int N_, std::vector<mpz_class> coeffs);

    static UPoly monomial(unsigned long p, int N, int deg, const mpz_class& a = 1);

    mpz_class modulus() const;
    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return degree() < 0; }
    mpz_class coeff(int i) const { return i < (int)c.size() ? c[i] : mpz_class(0); }

    void normalize();  // reduce mod p^N, strip trailing zeros

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly neg() const;

    UPoly derivative() const;
    // f(u) -> f(u^k): spread exponents by k.
    UPoly subst_upow(unsigned long k) const;
    UPoly pow_u(unsigned long e) const;

    // Exact coefficientwise division by p^k; lowers precision by k.
    UPoly div_ppow(int k) const;
    UPoly mul_ppow(int k) const;
    // Minimum coefficient valuation (N if zero).
    int min_val() const;

    bool same_value(const UPoly& o) const;
};

// Quotient and remainder by a monic divisor; exact over Z/p^N.
void upoly_divmod(const UPoly& a, const UPoly& monic, UPoly& q, UPoly& r);

}  // namespace wittsen
