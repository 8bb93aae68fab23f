#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <vector>

#include "wittsen/witt.hpp"

namespace wittsen {

/**
 * Universal Witt sum/product polynomials over Z, used as an independent
 * oracle for the ghost-backend arithmetic.  The polynomials grow doubly
 * exponentially; lengths are capped at 4.
 */
constexpr int kUniversalLengthCap = 4;

struct UniMono {
    // exponents of x_0..x_{L-1}, y_0..y_{L-1}, padded to 2*cap
    std::array<unsigned short, 2 * kUniversalLengthCap> e{};
    bool operator<(const UniMono& o) const { return e < o.e; }
};

using UniPoly = std::map<UniMono, mpz_class>;

/// P_m with w_m(P_0..P_m) = w_m(x) * w_m(y) (op = mul) or w_m(x) + w_m(y)
/// (op = add), for m < L.
std::vector<UniPoly> universal_witt_polys(unsigned long p, int L, WittOp op);

/// Evaluate the universal multiplication polynomials on components of x, y.
template <class R>
WittVec<R> witt_universal_mul(const WittVec<R>& x, const WittVec<R>& y) {
    const int L = x.length();
    if (L > kUniversalLengthCap) throw LengthCap("witt_universal_mul: L > 4");
    if (y.length() != L) throw RingMismatch("witt_universal_mul: lengths differ");
    auto polys = universal_witt_polys(x.prime(), L, WittOp::mul);
    WittVec<R> out;
    for (int m = 0; m < L; ++m) {
        R acc = x.c[0].zero_like();
        for (const auto& [mono, coef] : polys[m]) {
            R term = x.c[0].one_like();
            for (int i = 0; i < L; ++i) {
                if (mono.e[i]) term = term * x.c[i].pow_u(mpz_class(mono.e[i]));
                if (mono.e[kUniversalLengthCap + i])
                    term = term * y.c[i].pow_u(mpz_class(mono.e[kUniversalLengthCap + i]));
            }
            // coefficient as a ring scalar
            R cacc = x.c[0].zero_like();
            mpz_class k = coef >= 0 ? coef : mpz_class(-coef);
            R base = term;
            while (k > 0) {
                if (mpz_odd_p(k.get_mpz_t())) cacc = cacc + base;
                k >>= 1;
                if (k > 0) base = base + base;
            }
            acc = coef >= 0 ? acc + cacc : acc - cacc;
        }
        out.c.push_back(acc);
    }
    return out;
}

template <class R>
WittVec<R> witt_universal_add(const WittVec<R>& x, const WittVec<R>& y) {
    const int L = x.length();
    if (L > kUniversalLengthCap) throw LengthCap("witt_universal_add: L > 4");
    if (y.length() != L) throw RingMismatch("witt_universal_add: lengths differ");
    auto polys = universal_witt_polys(x.prime(), L, WittOp::add);
    WittVec<R> out;
    for (int m = 0; m < L; ++m) {
        R acc = x.c[0].zero_like();
        for (const auto& [mono, coef] : polys[m]) {
            R term = x.c[0].one_like();
            for (int i = 0; i < L; ++i) {
                if (mono.e[i]) term = term * x.c[i].pow_u(mpz_class(mono.e[i]));
                if (mono.e[kUniversalLengthCap + i])
                    term = term * y.c[i].pow_u(mpz_class(mono.e[kUniversalLengthCap + i]));
            }
            R cacc = x.c[0].zero_like();
            mpz_class k = coef >= 0 ? coef : mpz_class(-coef);
            R base = term;
            while (k > 0) {
                if (mpz_odd_p(k.get_mpz_t())) cacc = cacc + base;
                k >>= 1;
                if (k > 0) base = base + base;
            }
            acc = coef >= 0 ? acc + cacc : acc - cacc;
        }
        out.c.push_back(acc);
    }
    return out;
}

}  // namespace wittsen
