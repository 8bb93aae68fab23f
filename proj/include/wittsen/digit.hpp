#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "wittsen/sring.hpp"

namespace wittsen {

/// Ring descriptor for S[[E/p]]/((E/p)^nord, p^N) in base-(E/p) digit form.
struct DigitRing {
    Eisenstein E;
    int nord = 0;  // nilpotency order of E/p
    int N = 0;

    DigitRing(Eisenstein E_, int nord_, int N_) : E(std::move(E_)), nord(nord_), N(N_) {
        if (nord < 1) throw BadInput("DigitRing: order must be >= 1");
        if (N < 1) throw BadInput("DigitRing: precision must be >= 1");
    }
    bool operator==(const DigitRing& o) const {
        return E == o.E && nord == o.nord && N == o.N;
    }
};

using DigitRingPtr = std::shared_ptr<const DigitRing>;

DigitRingPtr make_digit_ring(Eisenstein E, int nord, int N);

/**
 * Element of S[[E/p]]/((E/p)^nord, p^N).  Digit j is the coefficient of
 * (E/p)^j, a reduced polynomial of degree < e over Z/p^N.  Multiplication
 * obeys the p-weighted carry law: when a digit product reduces as r + q*E,
 * the carry into the next position is p*q, because E*(E/p)^j = p*(E/p)^{j+1}.
 * Carries out of position nord-1 are discarded.
 */
class DigitElem {
public:
    DigitElem() = default;
    DigitElem(DigitRingPtr ring, std::vector<UPoly> digits);

    static DigitElem zero(DigitRingPtr ring);
    static DigitElem one(DigitRingPtr ring);
    static DigitElem from_int(DigitRingPtr ring, const mpz_class& v);
    static DigitElem e_over_p(DigitRingPtr ring);  // the digit generator E/p
    /// Canonical image of a polynomial f in S: expand f = sum r_j E^j and
    /// place p^j r_j at digit j.
    static DigitElem from_poly(DigitRingPtr ring, const UPoly& f);
    static DigitElem u(DigitRingPtr ring);

    const DigitRingPtr& ring() const { return ring_; }
    const std::vector<UPoly>& digits() const { return d_; }
    int prec() const { return Neff_; }
    unsigned long prime() const { return ring_->E.p; }
    bool is_zero() const;

    DigitElem operator+(const DigitElem& o) const;
    DigitElem operator-(const DigitElem& o) const;
    DigitElem operator*(const DigitElem& o) const;
    DigitElem operator-() const;
    DigitElem pow_u(const mpz_class& e) const;

    /// Multiplication by (E/p)^k: shift digits up by k.
    DigitElem shift(int k) const;

    int min_val() const;
    DigitElem div_ppow(int k) const;
    DigitElem mul_ppow(int k) const;

    /// Inverse of a unit: digit 0 must be a unit in O_K = Z_p[u]/E; computed
    /// by inverting digit 0 and a finite geometric series in the nilpotent
    /// remainder.
    DigitElem inv() const;
    bool is_unit() const;

    bool same_value(const DigitElem& o) const;
    DigitElem zero_like() const { return zero(ring_); }
    DigitElem one_like() const { return one(ring_); }
    DigitElem truncated(int N2) const;

    std::string str() const;

private:
    DigitRingPtr ring_;
    int Neff_ = 0;
    std::vector<UPoly> d_;  // size nord, each reduced mod E with degree < e
    void check_ring(const DigitElem& o) const;
    void renormalize();
};

}  // namespace wittsen
