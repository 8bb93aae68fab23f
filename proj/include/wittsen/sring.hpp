#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "wittsen/padic.hpp"
#include "wittsen/upoly.hpp"

namespace wittsen {

/**
 * Monic Eisenstein polynomial E(u) = u^e + a_{e-1} u^{e-1} + ... + a_0 over
 * Z_p: p divides every lower coefficient and p exactly divides a_0.
 * Coefficients are stored as exact integers.  The unramified case is
 * E = u - p.
 */
struct Eisenstein {
    unsigned long p = 0;
    int e = 0;
    std::vector<mpz_class> a;  // a[0..e], a[e] == 1

    Eisenstein() = default;
    Eisenstein(unsigned long p_, std::vector<mpz_class> coeffs);
    static Eisenstein unramified(unsigned long p);  // u - p

    UPoly poly(int N) const;
    UPoly deriv_poly(int N) const;
    bool operator==(const Eisenstein& o) const { return p == o.p && a == o.a; }
    std::string str() const;
};

/// Ring descriptor for S_m = Z_p[u]/(E(u)^m, p^N), a free Z/p^N-module of
/// rank e*m on the basis 1, u, ..., u^{em-1}.
struct SRing {
    Eisenstein E;
    int m = 0;  // E-adic truncation order
    int N = 0;  // p-adic working precision
    UPoly Em;   // E^m at precision N, monic of degree e*m

    SRing(Eisenstein E_, int m_, int N_);
    int rank() const { return E.e * m; }
    bool operator==(const SRing& o) const { return E == o.E && m == o.m && N == o.N; }
};

using SRingPtr = std::shared_ptr<const SRing>;

SRingPtr make_sring(Eisenstein E, int m, int N);

/// Element of S_m, stored as its unique reduced representative of degree
/// < e*m.  Carries its own effective precision Neff <= ring->N (exact
/// divisions by p lower it).
class SRingElem {
public:
    SRingElem() = default;
    SRingElem(SRingPtr ring, UPoly rep);
    static SRingElem zero(SRingPtr ring);
    static SRingElem one(SRingPtr ring);
    static SRingElem from_int(SRingPtr ring, const mpz_class& v);
    static SRingElem u(SRingPtr ring);       // image of u
    static SRingElem e_image(SRingPtr ring); // image of E(u)
    static SRingElem lambda(SRingPtr ring);  // u - p (the uniformizer in the unramified case)

    const SRingPtr& ring() const { return ring_; }
    const UPoly& rep() const { return rep_; }
    int prec() const { return rep_.N; }
    unsigned long prime() const { return ring_->E.p; }
    bool is_zero() const { return rep_.is_zero(); }

    SRingElem operator+(const SRingElem& o) const;
    SRingElem operator-(const SRingElem& o) const;
    SRingElem operator*(const SRingElem& o) const;
    SRingElem operator-() const;
    SRingElem pow_u(const mpz_class& e) const;

    // Minimum p-valuation across coordinates; the basis is free over Z/p^N,
    // so the element is divisible by p^k iff every coordinate is.
    int min_val() const { return rep_.min_val(); }
    SRingElem div_ppow(int k) const;
    SRingElem mul_ppow(int k) const;

    // Inverse of a unit (nonzero constant coordinate mod (p, u)), computed by
    // inverting mod (p, u^{em}) and Newton-lifting the p-precision.
    SRingElem inv() const;
    bool is_unit() const;

    SRingElem derivative() const;

    bool same_value(const SRingElem& o) const;
    SRingElem zero_like() const { return zero(ring_); }
    SRingElem one_like() const { return one(ring_); }
    SRingElem truncated(int N2) const;

    // Coordinates in the E-adic basis: rep = sum_j r_j(u) E^j with
    // deg r_j < e.  Returns the r_j as degree-<e polynomials.
    std::vector<UPoly> eadic_digits() const;

    std::string str() const;

private:
    SRingPtr ring_;
    UPoly rep_;
    void check_ring(const SRingElem& o) const;
    void reduce();
};

/// The lift of Frobenius determined by u -> u^p (identity on Z_p).
SRingElem frobenius_lift(const SRingElem& a);

/// h_n as a polynomial: p*h_n = phi^n(E) - E^{p^n} exactly.  Throws
/// InsufficientValuation if the divisibility fails (an internal assertion
/// for a valid Eisenstein input).
UPoly compute_h_poly(const Eisenstein& E, int n, int N);
/// t_n as a polynomial: p^n*t_n = h_n' exactly.
UPoly compute_t_poly(const Eisenstein& E, int n, int N);

SRingElem compute_h_n(const Eisenstein& E, int n, SRingPtr ring);
SRingElem compute_t_n(const Eisenstein& E, int n, SRingPtr ring);

SRingElem sring_from_poly(SRingPtr ring, const UPoly& f);

}  // namespace wittsen
