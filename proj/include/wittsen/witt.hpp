#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "wittsen/errors.hpp"

namespace wittsen {

/**
 * Truncated Witt vector over a base ring type R (PAdic, SRingElem,
 * DigitElem, or their dual-number extensions).  The default arithmetic
 * backend goes through the ghost map, which is valid over the p-torsion-free
 * bases used here; the universal-polynomial backend (witt_universal.hpp) is
 * kept as an independent oracle.
 */
template <class R>
struct WittVec {
    std::vector<R> c;

    WittVec() = default;
    explicit WittVec(std::vector<R> comps) : c(std::move(comps)) {}

    int length() const { return static_cast<int>(c.size()); }
    unsigned long prime() const { return c.at(0).prime(); }

    bool same_value(const WittVec& o) const {
        if (c.size() != o.c.size()) return false;
        for (size_t i = 0; i < c.size(); ++i)
            if (!c[i].same_value(o.c[i])) return false;
        return true;
    }
};

namespace detail {
inline mpz_class pow_mpz(unsigned long b, int e) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), b, static_cast<unsigned long>(e));
    return m;
}
}  // namespace detail

/// Ghost components w_m(x) = sum_{i<=m} p^i x_i^{p^{m-i}} for m < length.
/// The p^i factor is applied as an exact p-power shift, so components known
/// mod p^{N-i} still yield ghosts known mod p^N.
template <class R>
std::vector<R> ghost(const WittVec<R>& x) {
    std::vector<R> w;
    const int L = x.length();
    unsigned long p = x.prime();
    for (int m = 0; m < L; ++m) {
        R acc = x.c[0].pow_u(detail::pow_mpz(p, m));
        for (int i = 1; i <= m; ++i) {
            R term = x.c[i].pow_u(detail::pow_mpz(p, m - i)).mul_ppow(i);
            acc = acc + term;
        }
        w.push_back(acc);
    }
    return w;
}

/// Inverse of the ghost recursion: x_m = (w_m - sum_{i<m} p^i x_i^{p^{m-i}})
/// / p^m.  Throws InsufficientValuation naming the first index where the
/// divisibility fails; this is the primary detector for false construction
/// claims.
template <class R>
WittVec<R> unghost(const std::vector<R>& w) {
    WittVec<R> x;
    const int L = static_cast<int>(w.size());
    if (L == 0) return x;
    unsigned long p = w[0].prime();
    x.c.push_back(w[0]);
    for (int m = 1; m < L; ++m) {
        R acc = w[m] - x.c[0].pow_u(detail::pow_mpz(p, m));
        for (int i = 1; i < m; ++i) {
            R term = x.c[i].pow_u(detail::pow_mpz(p, m - i)).mul_ppow(i);
            acc = acc - term;
        }
        try {
            x.c.push_back(acc.div_ppow(m));
        } catch (const InsufficientValuation& e) {
            throw InsufficientValuation("unghost at index " + std::to_string(m) +
                                        " (" + e.locus + ")");
        }
    }
    return x;
}

enum class WittOp { add, sub, mul };

template <class R>
WittVec<R> witt_arith(const WittVec<R>& x, const WittVec<R>& y, WittOp op) {
    if (x.length() != y.length()) throw RingMismatch("witt_arith: lengths differ");
    std::vector<R> wx = ghost(x), wy = ghost(y), wz;
    wz.reserve(wx.size());
    for (size_t i = 0; i < wx.size(); ++i) {
        switch (op) {
            case WittOp::add: wz.push_back(wx[i] + wy[i]); break;
            case WittOp::sub: wz.push_back(wx[i] - wy[i]); break;
            case WittOp::mul: wz.push_back(wx[i] * wy[i]); break;
        }
    }
    return unghost(wz);
}

template <class R>
WittVec<R> witt_add(const WittVec<R>& x, const WittVec<R>& y) {
    return witt_arith(x, y, WittOp::add);
}
template <class R>
WittVec<R> witt_sub(const WittVec<R>& x, const WittVec<R>& y) {
    return witt_arith(x, y, WittOp::sub);
}
template <class R>
WittVec<R> witt_mul(const WittVec<R>& x, const WittVec<R>& y) {
    return witt_arith(x, y, WittOp::mul);
}

/// Multiplication by an integer scalar, through the ghost side.
template <class R>
WittVec<R> witt_scale(const mpz_class& n, const WittVec<R>& x) {
    std::vector<R> w = ghost(x);
    for (auto& v : w) {
        R acc = v.zero_like();
        mpz_class k = n >= 0 ? n : -n;
        R base = v;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) acc = acc + base;
            k >>= 1;
            if (k > 0) base = base + base;
        }
        v = n >= 0 ? acc : -acc;
    }
    return unghost(w);
}

/// Teichmüller lift [a] = (a, 0, 0, ...).
template <class R>
WittVec<R> teichmuller(const R& a, int L) {
    WittVec<R> x;
    x.c.push_back(a);
    for (int i = 1; i < L; ++i) x.c.push_back(a.zero_like());
    return x;
}

/// Frobenius: w_m(F(x)) = w_{m+1}(x); shortens the length by one.
template <class R>
WittVec<R> witt_F(const WittVec<R>& x) {
    if (x.length() < 2) throw LengthCap("witt_F needs length >= 2");
    std::vector<R> w = ghost(x);
    return unghost(std::vector<R>(w.begin() + 1, w.end()));
}

/// Verschiebung: componentwise shift, length grows by one.
template <class R>
WittVec<R> witt_V(const WittVec<R>& x) {
    WittVec<R> y;
    y.c.push_back(x.c.at(0).zero_like());
    for (const auto& v : x.c) y.c.push_back(v);
    return y;
}

/// delta with w_m(delta(x)) = (w_{m+1}(x) - w_m(x)^p)/p; length drops by one.
template <class R>
WittVec<R> witt_delta(const WittVec<R>& x) {
    if (x.length() < 2) throw LengthCap("witt_delta needs length >= 2");
    std::vector<R> w = ghost(x), wd;
    unsigned long p = x.prime();
    for (size_t m = 0; m + 1 < w.size(); ++m) {
        R t = w[m + 1] - w[m].pow_u(mpz_class(p));
        wd.push_back(t.div_ppow(1));
    }
    return unghost(wd);
}

/// Witt-vector Frobenius lift phi = F on the truncated ring; satisfies
/// phi(x) = x^p + p*delta(x).
template <class R>
WittVec<R> witt_phi(const WittVec<R>& x) {
    return witt_F(x);
}

/// x^k through the ghost backend.
template <class R>
WittVec<R> witt_pow(const WittVec<R>& x, unsigned long k) {
    std::vector<R> w = ghost(x);
    for (auto& v : w) v = v.pow_u(mpz_class(k));
    return unghost(w);
}

}  // namespace wittsen
