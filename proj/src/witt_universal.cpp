#include "wittsen/witt_universal.hpp"

#include <mutex>
#include <tuple>

namespace wittsen {

namespace {

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    UniPoly out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            UniMono m;
            for (size_t i = 0; i < m.e.size(); ++i)
                m.e[i] = static_cast<unsigned short>(ma.e[i] + mb.e[i]);
            out[m] += ca * cb;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) it = out.erase(it);
        else ++it;
    }
    return out;
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
    UniPoly out = a;
    for (const auto& [m, c] : b) {
        out[m] += c;
        if (out[m] == 0) out.erase(m);
    }
    return out;
}

UniPoly uni_scale(const UniPoly& a, const mpz_class& s) {
    UniPoly out;
    if (s == 0) return out;
    for (const auto& [m, c] : a) out[m] = c * s;
    return out;
}

UniPoly uni_pow(const UniPoly& a, unsigned long e) {
    UniPoly acc;
    UniMono one{};
    acc[one] = 1;
    UniPoly base = a;
    while (e > 0) {
        if (e & 1ul) acc = uni_mul(acc, base);
        e >>= 1;
        if (e > 0) base = uni_mul(base, base);
    }
    return acc;
}

UniPoly uni_div_exact(const UniPoly& a, const mpz_class& d) {
    UniPoly out;
    for (const auto& [m, c] : a) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw InexactDivision("universal Witt polynomial recursion");
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        out[m] = q;
    }
    return out;
}

// Ghost polynomial w_m in the x- or y-block (offset 0 or cap).
UniPoly ghost_poly(unsigned long p, int m, int offset) {
    UniPoly w;
    mpz_class pi = 1;
    for (int i = 0; i <= m; ++i) {
        UniMono mono{};
        mpz_class pmi;
        mpz_ui_pow_ui(pmi.get_mpz_t(), p, static_cast<unsigned long>(m - i));
        mono.e[offset + i] = static_cast<unsigned short>(pmi.get_ui());
        w[mono] += pi;
        pi *= p;
    }
    return w;
}

}  // namespace

std::vector<UniPoly> universal_witt_polys(unsigned long p, int L, WittOp op) {
    if (L > kUniversalLengthCap) throw LengthCap("universal_witt_polys");
    static std::mutex mtx;
    static std::map<std::tuple<unsigned long, int, int>, std::vector<UniPoly>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(p, L, static_cast<int>(op));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // Solve w_m(P_0..P_m) = w_m(x) op w_m(y) for P_m, dividing by p^m exactly.
    std::vector<UniPoly> P;
    mpz_class pm = 1;
    for (int m = 0; m < L; ++m) {
        UniPoly target;
        {
            UniPoly wx = ghost_poly(p, m, 0);
            UniPoly wy = ghost_poly(p, m, kUniversalLengthCap);
            target = (op == WittOp::mul) ? uni_mul(wx, wy)
                     : (op == WittOp::add) ? uni_add(wx, wy)
                                           : uni_add(wx, uni_scale(wy, mpz_class(-1)));
        }
        mpz_class pi = 1;
        for (int i = 0; i < m; ++i) {
            mpz_class pmi;
            mpz_ui_pow_ui(pmi.get_mpz_t(), p, static_cast<unsigned long>(m - i));
            target = uni_add(target, uni_scale(uni_pow(P[i], pmi.get_ui()), -pi));
            pi *= p;
        }
        P.push_back(uni_div_exact(target, pm));
        pm *= p;
    }
    cache[key] = P;
    return P;
}

}  // namespace wittsen
