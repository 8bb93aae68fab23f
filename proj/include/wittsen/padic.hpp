#pragma once

#include <gmpxx.h>

#include <string>

#include "wittsen/errors.hpp"

namespace wittsen {

/**
 * Residue class modulo p^N with tracked valuation.
 *
 * The precision model is capped-absolute: a PAdic at precision N is a residue
 * in [0, p^N), and every exact division by p^k debits k from N.  Mixing
 * precisions in +,-,* truncates to the smaller N.  Multiplication by an exact
 * power of p (mul_ppow) is the one precision-gaining operation: p^k * a is
 * determined mod p^{N+k} by a mod p^N.
 *
 * val() is the exact p-adic valuation of the stored residue, or N when the
 * residue is zero (meaning "valuation at least N").
 */
class PAdic {
public:
    PAdic() : p_(0), N_(0), val_(0) {}
    PAdic(unsigned long p, int N) : p_(p), N_(N), r_(0), val_(N) { check_desc(); }
    PAdic(unsigned long p, int N, const mpz_class& v) : p_(p), N_(N) {
        check_desc();
        mpz_class mod = pow_p(N_);
        mpz_mod(r_.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
        recompute_val();
    }
    PAdic(unsigned long p, int N, long v) : PAdic(p, N, mpz_class(v)) {}

    static PAdic p_power(unsigned long p, int N, int k);

    unsigned long prime() const { return p_; }
    int prec() const { return N_; }
    const mpz_class& residue() const { return r_; }
    int val() const { return val_; }
    int min_val() const { return val_; }
    bool is_zero() const { return r_ == 0; }
    bool is_unit() const { return val_ == 0; }
    mpz_class modulus() const { return pow_p(N_); }

    PAdic operator+(const PAdic& o) const;
    PAdic operator-(const PAdic& o) const;
    PAdic operator*(const PAdic& o) const;
    PAdic operator-() const;

    PAdic pow_u(unsigned long e) const;
    PAdic pow_u(const mpz_class& e) const;

    // Exact division by p^k; precondition val() >= k.
    PAdic div_ppow(int k) const;
    // Multiplication by p^k; raises the precision by k.
    PAdic mul_ppow(int k) const;
    // Inverse of a unit, by lifting the mod-p inverse with Newton iteration.
    PAdic inv() const;
    // View at a lower precision N2 <= N.
    PAdic truncated(int N2) const;

    // Equality of the represented classes at the smaller of the precisions.
    bool same_value(const PAdic& o) const;

    std::string str() const { return r_.get_str(); }

    PAdic zero_like() const { return PAdic(p_, N_); }
    PAdic one_like() const { return PAdic(p_, N_, 1); }

    // Signed integer representative in (-p^N/2, p^N/2]; display helper.
    mpz_class signed_residue() const;

private:
    unsigned long p_;
    int N_;
    mpz_class r_;
    int val_;

    void check_desc() const {
        if (p_ < 2) throw BadInput("PAdic prime must be >= 2");
        if (N_ < 1) throw PrecisionExhausted("PAdic precision must be >= 1");
    }
    void check_same(const PAdic& o) const {
        if (p_ != o.p_) throw RingMismatch("PAdic primes differ");
    }
    mpz_class pow_p(int k) const {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), p_, static_cast<unsigned long>(k));
        return m;
    }
    void recompute_val();
};

// Exact p-adic valuation of an integer; returns cap for n == 0.
int int_val(const mpz_class& n, unsigned long p, int cap);

}  // namespace wittsen
