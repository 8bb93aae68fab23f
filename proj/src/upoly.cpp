#include "wittsen/upoly.hpp"

#include <algorithm>

namespace wittsen {

UPoly::UPoly(unsigned long p_, int N_, std::vector<mpz_class> coeffs)
    : p(p_), N(N_), c(std::move(coeffs)) {
    normalize();
}

UPoly UPoly::monomial(unsigned long p, int N, int deg, const mpz_class& a) {
    UPoly f(p, N);
    f.c.assign(deg + 1, mpz_class(0));
    f.c[deg] = a;
    f.normalize();
    return f;
}

mpz_class UPoly::modulus() const {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(N));
    return m;
}

int UPoly::degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (c[i] != 0) return i;
    return -1;
}

void UPoly::normalize() {
    mpz_class mod = modulus();
    for (auto& a : c) mpz_mod(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    while (!c.empty() && c.back() == 0) c.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    if (p != o.p) throw RingMismatch("UPoly add");
    UPoly out(p, std::min(N, o.N));
    out.c.resize(std::max(c.size(), o.c.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) out.c[i] = c[i];
    for (size_t i = 0; i < o.c.size(); ++i) out.c[i] += o.c[i];
    out.normalize();
    return out;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o.neg(); }

UPoly UPoly::neg() const {
    UPoly out(p, N);
    out.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) out.c[i] = -c[i];
    out.normalize();
    return out;
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (p != o.p) throw RingMismatch("UPoly mul");
    UPoly out(p, std::min(N, o.N));
    if (c.empty() || o.c.empty()) return out;
    out.c.assign(c.size() + o.c.size() - 1, mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) {
            if (o.c[j] == 0) continue;
            out.c[i + j] += c[i] * o.c[j];
        }
    }
    out.normalize();
    return out;
}

UPoly UPoly::derivative() const {
    UPoly out(p, N);
    if (c.size() <= 1) return out;
    out.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) out.c[i - 1] = mpz_class(i) * c[i];
    out.normalize();
    return out;
}

UPoly UPoly::subst_upow(unsigned long k) const {
    UPoly out(p, N);
    if (c.empty()) return out;
    out.c.assign((c.size() - 1) * k + 1, mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) out.c[i * k] = c[i];
    out.normalize();
    return out;
}

UPoly UPoly::pow_u(unsigned long e) const {
    UPoly acc(p, N);
    acc.c = {mpz_class(1)};
    UPoly base = *this;
    while (e > 0) {
        if (e & 1ul) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

UPoly UPoly::div_ppow(int k) const {
    if (k == 0) return *this;
    if (N - k < 1) throw PrecisionExhausted("UPoly::div_ppow");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
    UPoly out(p, N - k);
    out.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        if (!mpz_divisible_p(c[i].get_mpz_t(), pk.get_mpz_t()))
            throw InsufficientValuation("UPoly::div_ppow at degree " + std::to_string(i));
        mpz_divexact(out.c[i].get_mpz_t(), c[i].get_mpz_t(), pk.get_mpz_t());
    }
    out.normalize();
    return out;
}

UPoly UPoly::mul_ppow(int k) const {
    if (k == 0) return *this;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
    UPoly out(p, N + k);
    out.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) out.c[i] = c[i] * pk;
    out.normalize();
    return out;
}

int UPoly::min_val() const {
    int best = N;
    for (const auto& a : c) best = std::min(best, int_val(a, p, N));
    return best;
}

bool UPoly::same_value(const UPoly& o) const {
    if (p != o.p) throw RingMismatch("UPoly::same_value");
    int Nm = std::min(N, o.N);
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, static_cast<unsigned long>(Nm));
    size_t n = std::max(c.size(), o.c.size());
    for (size_t i = 0; i < n; ++i) {
        mpz_class a = i < c.size() ? c[i] : mpz_class(0);
        mpz_class b = i < o.c.size() ? o.c[i] : mpz_class(0);
        mpz_mod(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
        mpz_mod(b.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t());
        if (a != b) return false;
    }
    return true;
}

void upoly_divmod(const UPoly& a, const UPoly& monic, UPoly& q, UPoly& r) {
    if (a.p != monic.p) throw RingMismatch("upoly_divmod");
    int dm = monic.degree();
    if (dm < 0 || monic.c[dm] != 1) throw BadInput("upoly_divmod: divisor must be monic");
    int Nm = std::min(a.N, monic.N);
    r = a;
    r.N = Nm;
    r.normalize();
    q = UPoly(a.p, Nm);
    int da = r.degree();
    if (da < dm) return;
    q.c.assign(da - dm + 1, mpz_class(0));
    mpz_class mod = q.modulus();
    // Standard long division; the divisor is monic so no coefficient
    // inversions are needed and the result is exact over Z/p^N.
    std::vector<mpz_class> rc = r.c;
    rc.resize(da + 1, mpz_class(0));
    for (int i = da; i >= dm; --i) {
        mpz_class t = rc[i];
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
        if (t == 0) continue;
        q.c[i - dm] = t;
        for (int j = 0; j <= dm; ++j) {
            rc[i - dm + j] -= t * monic.c[j];
        }
    }
    r.c = rc;
    r.normalize();
    q.normalize();
}

}  // namespace wittsen
