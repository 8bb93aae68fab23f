#pragma once

#include <gmpxx.h>

#include <algorithm>

#include "wittsen/errors.hpp"

namespace wittsen {

/**
 * Dual-number extension R[eps]/eps^2 over a base ring type R.  Products of
 * two pure-eps elements vanish, and the Frobenius lift of the base kills the
 * eps part (eps^p = 0 together with delta(eps) = 0).
 */
template <class R>
struct Dual {
    R a;  // base part
    R b;  // eps part

    Dual() = default;
    Dual(R base, R eps) : a(std::move(base)), b(std::move(eps)) {}
    explicit Dual(R base) : a(base), b(base.zero_like()) {}

    static Dual pure_eps(R eps) {
        R z = eps.zero_like();
        return Dual(std::move(z), std::move(eps));
    }

    unsigned long prime() const { return a.prime(); }
    int prec() const { return std::min(a.prec(), b.prec()); }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    Dual operator+(const Dual& o) const { return Dual(a + o.a, b + o.b); }
    Dual operator-(const Dual& o) const { return Dual(a - o.a, b - o.b); }
    Dual operator-() const { return Dual(-a, -b); }
    Dual operator*(const Dual& o) const {
        return Dual(a * o.a, a * o.b + b * o.a);
    }

    // (a + eps b)^e = a^e + eps e a^{e-1} b
    Dual pow_u(const mpz_class& e) const {
        if (e == 0) return Dual(a.one_like(), b.zero_like());
        R ae = a.pow_u(e);
        R ae1 = a.pow_u(e - 1);
        R scale = a.one_like();
        {
            // e as a ring scalar
            R acc = a.zero_like();
            // cheap path: multiply the unit by the integer e via repeated
            // doubling on the scalar level
            mpz_class k = e;
            R base = a.one_like();
            while (k > 0) {
                if (mpz_odd_p(k.get_mpz_t())) acc = acc + base;
                k >>= 1;
                if (k > 0) base = base + base;
            }
            scale = acc;
        }
        return Dual(ae, ae1 * b * scale);
    }

    int min_val() const { return std::min(a.min_val(), b.min_val()); }
    Dual div_ppow(int k) const { return Dual(a.div_ppow(k), b.div_ppow(k)); }
    Dual mul_ppow(int k) const { return Dual(a.mul_ppow(k), b.mul_ppow(k)); }

    bool same_value(const Dual& o) const {
        return a.same_value(o.a) && b.same_value(o.b);
    }
    Dual zero_like() const { return Dual(a.zero_like(), b.zero_like()); }
    Dual one_like() const { return Dual(a.one_like(), b.zero_like()); }
    Dual truncated(int N2) const { return Dual(a.truncated(N2), b.truncated(N2)); }

    std::string str() const { return a.str() + " + eps*" + b.str(); }
};

}  // namespace wittsen
