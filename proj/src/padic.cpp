#include "wittsen/padic.hpp"

#include <algorithm>

namespace wittsen {

int int_val(const mpz_class& n, unsigned long p, int cap) {
    if (n == 0) return cap;
    mpz_class rest;
    mpz_class pz(static_cast<unsigned long>(p));
    unsigned long v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    return std::min<int>(static_cast<int>(v), cap);
}

void PAdic::recompute_val() { val_ = int_val(r_, p_, N_); }

PAdic PAdic::p_power(unsigned long p, int N, int k) {
    PAdic x(p, N);
    if (k < N) {
        mpz_ui_pow_ui(x.r_.get_mpz_t(), p, static_cast<unsigned long>(k));
        x.val_ = k;
    }
    return x;
}

PAdic PAdic::operator+(const PAdic& o) const {
    check_same(o);
    PAdic out(p_, std::min(N_, o.N_));
    mpz_class mod = out.modulus();
    out.r_ = r_ + o.r_;
    mpz_mod(out.r_.get_mpz_t(), out.r_.get_mpz_t(), mod.get_mpz_t());
    out.recompute_val();
    return out;
}

PAdic PAdic::operator-(const PAdic& o) const {
    check_same(o);
    PAdic out(p_, std::min(N_, o.N_));
    mpz_class mod = out.modulus();
    out.r_ = r_ - o.r_;
    mpz_mod(out.r_.get_mpz_t(), out.r_.get_mpz_t(), mod.get_mpz_t());
    out.recompute_val();
    return out;
}

PAdic PAdic::operator*(const PAdic& o) const {
    check_same(o);
    PAdic out(p_, std::min(N_, o.N_));
    mpz_class mod = out.modulus();
    out.r_ = r_ * o.r_;
    mpz_mod(out.r_.get_mpz_t(), out.r_.get_mpz_t(), mod.get_mpz_t());
    out.recompute_val();
    return out;
}

PAdic PAdic::operator-() const {
    PAdic out(p_, N_);
    if (r_ != 0) {
        out.r_ = modulus() - r_;
        out.val_ = val_;
    }
    return out;
}

PAdic PAdic::pow_u(unsigned long e) const { return pow_u(mpz_class(e)); }

PAdic PAdic::pow_u(const mpz_class& e) const {
    PAdic out(p_, N_);
    mpz_class mod = modulus();
    mpz_powm(out.r_.get_mpz_t(), r_.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    out.recompute_val();
    return out;
}

PAdic PAdic::div_ppow(int k) const {
    if (k < 0) throw BadInput("div_ppow: negative exponent");
    if (k == 0) return *this;
    if (val_ < k)
        throw InsufficientValuation("div_ppow: val " + std::to_string(val_) +
                                    " < " + std::to_string(k));
    if (N_ - k < 1)
        throw PrecisionExhausted("div_ppow: precision " + std::to_string(N_) +
                                 " - " + std::to_string(k) + " < 1");
    PAdic out(p_, N_ - k);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p_, static_cast<unsigned long>(k));
    mpz_divexact(out.r_.get_mpz_t(), r_.get_mpz_t(), pk.get_mpz_t());
    out.recompute_val();
    return out;
}

PAdic PAdic::mul_ppow(int k) const {
    if (k < 0) throw BadInput("mul_ppow: negative exponent");
    if (k == 0) return *this;
    PAdic out(p_, N_ + k);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p_, static_cast<unsigned long>(k));
    out.r_ = r_ * pk;
    out.val_ = std::min(val_ + k, N_ + k);
    return out;
}

PAdic PAdic::inv() const {
    if (val_ != 0) throw NotAUnit("PAdic::inv: valuation " + std::to_string(val_));
    // x <- x(2 - a x) doubles the number of correct p-adic digits.
    mpz_class pz(p_);
    mpz_class x;
    if (!mpz_invert(x.get_mpz_t(), r_.get_mpz_t(), pz.get_mpz_t()))
        throw NotAUnit("PAdic::inv: no inverse mod p");
    int have = 1;
    while (have < N_) {
        have = std::min(2 * have, N_);
        mpz_class mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), p_, static_cast<unsigned long>(have));
        x = x * (2 - r_ * x);
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    }
    PAdic out(p_, N_);
    out.r_ = x;
    out.val_ = 0;
    return out;
}

PAdic PAdic::truncated(int N2) const {
    if (N2 > N_) throw BadInput("truncated: cannot raise precision");
    PAdic out(p_, N2);
    mpz_class mod = out.modulus();
    mpz_mod(out.r_.get_mpz_t(), out.r_.get_mpz_t(), mod.get_mpz_t());
    out.r_ = r_;
    mpz_mod(out.r_.get_mpz_t(), out.r_.get_mpz_t(), mod.get_mpz_t());
    out.recompute_val();
    return out;
}

bool PAdic::same_value(const PAdic& o) const {
    check_same(o);
    int N = std::min(N_, o.N_);
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p_, static_cast<unsigned long>(N));
    mpz_class a = r_ % mod, b = o.r_ % mod;
    return a == b;
}

mpz_class PAdic::signed_residue() const {
    mpz_class mod = modulus();
    if (2 * r_ > mod) return r_ - mod;
    return r_;
}

}  // namespace wittsen
