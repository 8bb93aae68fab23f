#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wittsen/sring.hpp"
#include "wittsen/upoly.hpp"

namespace wittsen {

constexpr int kDeltaGenCap = 8;

/// Dual-number coefficient f(u) + eps g(u) over Z/p^N, with no E-reduction:
/// the coefficient ring of the truncated free delta-polynomial ring.
struct CPoly {
    UPoly re, eps;

    CPoly() = default;
    CPoly(UPoly r, UPoly e) : re(std::move(r)), eps(std::move(e)) {}
    static CPoly zero(unsigned long p, int N) { return {UPoly(p, N), UPoly(p, N)}; }
    static CPoly one(unsigned long p, int N) {
        return {UPoly(p, N, {mpz_class(1)}), UPoly(p, N)};
    }

    bool is_zero() const { return re.is_zero() && eps.is_zero(); }
    CPoly operator+(const CPoly& o) const { return {re + o.re, eps + o.eps}; }
    CPoly operator-(const CPoly& o) const { return {re - o.re, eps - o.eps}; }
    CPoly operator*(const CPoly& o) const {
        return {re * o.re, re * o.eps + eps * o.re};
    }
    CPoly neg() const { return {re.neg(), eps.neg()}; }
    CPoly div_ppow(int k) const { return {re.div_ppow(k), eps.div_ppow(k)}; }
    bool same_value(const CPoly& o) const {
        return re.same_value(o.re) && eps.same_value(o.eps);
    }
    // Frobenius on coefficients: u -> u^p, eps killed.
    CPoly phi(unsigned long p) const { return {re.subst_upow(p), UPoly(re.p, re.N)}; }
    // The substitution u -> u + eps E(u): f + eps g -> f + eps (E f' + g).
    CPoly eta(const UPoly& E) const { return {re, E * re.derivative() + eps}; }
    std::string str() const;
};

struct DeltaMono {
    std::array<uint16_t, kDeltaGenCap> e{};
    int total() const {
        int t = 0;
        for (auto x : e) t += x;
        return t;
    }
    bool operator<(const DeltaMono& o) const { return e < o.e; }
    bool operator==(const DeltaMono& o) const { return e == o.e; }
};

/// Caps for the truncated free delta-polynomial ring S{t}: generators
/// t, delta(t), ..., delta^{gen_cap-1}(t), input monomials of total degree
/// <= deg_cap, intermediates up to hard_deg_cap.
struct DeltaRing {
    Eisenstein E;
    int N = 0;
    int gen_cap = 4;
    int deg_cap = 0;       // defaults to 3p
    int hard_deg_cap = 0;  // defaults to max(3p*p, 40)

    DeltaRing(Eisenstein E_, int N_, int gen_cap_ = 4, int deg_cap_ = 0, int hard_cap_ = 0);
    bool operator==(const DeltaRing& o) const {
        return E == o.E && N == o.N && gen_cap == o.gen_cap;
    }
};

using DeltaRingPtr = std::shared_ptr<const DeltaRing>;
DeltaRingPtr make_delta_ring(Eisenstein E, int N, int gen_cap = 4, int deg_cap = 0,
                             int hard_cap = 0);

/// Sparse polynomial in the generators delta^i(t) with CPoly coefficients.
class DeltaPoly {
public:
    DeltaPoly() = default;
    explicit DeltaPoly(DeltaRingPtr ring) : ring_(std::move(ring)) {}

    static DeltaPoly zero(DeltaRingPtr ring) { return DeltaPoly(std::move(ring)); }
    static DeltaPoly one(DeltaRingPtr ring);
    static DeltaPoly from_coeff(DeltaRingPtr ring, CPoly c);
    static DeltaPoly gen(DeltaRingPtr ring, int i);  // delta^i(t)

    const DeltaRingPtr& ring() const { return ring_; }
    const std::map<DeltaMono, CPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_total_degree() const;

    DeltaPoly operator+(const DeltaPoly& o) const;
    DeltaPoly operator-(const DeltaPoly& o) const;
    DeltaPoly operator*(const DeltaPoly& o) const;
    DeltaPoly neg() const;
    DeltaPoly pow_u(unsigned long e) const;
    DeltaPoly div_ppow(int k) const;

    /// eps-coefficient extracted as a pure polynomial; eps part zeroed.
    DeltaPoly eps_part() const;
    DeltaPoly re_part() const;

    bool same_value(const DeltaPoly& o) const;
    std::string str() const;

    void add_term(const DeltaMono& m, CPoly c);

private:
    DeltaRingPtr ring_;
    std::map<DeltaMono, CPoly> terms_;
    void prune();
    friend DeltaPoly phi_apply(const DeltaPoly&);
};

/// The multiplicative Frobenius lift: u -> u^p on coefficients, eps -> 0,
/// delta^i(t) -> (delta^i t)^p + p delta^{i+1}(t).
DeltaPoly phi_apply(const DeltaPoly& x);

/// delta(x) = (phi(x) - x^p)/p; the division must be exact (InexactDivision
/// signals a modeling bug, CapExceeded a cap overflow).
DeltaPoly delta_apply(const DeltaPoly& x);

/**
 * The substitution eta: u -> u + eps E(u), t -> t (1 - eps E'(u)), extended
 * to delta^i(t) by delta-commutation eta(delta^i t) = delta(eta(delta^{i-1} t)).
 * Generator images are computed once per ring and cached.
 */
class EtaMap {
public:
    explicit EtaMap(DeltaRingPtr ring);
    const DeltaPoly& gen_image(int i) const;  // eta(delta^i t)
    DeltaPoly apply(const DeltaPoly& x) const;

private:
    DeltaRingPtr ring_;
    std::vector<DeltaPoly> images_;
};

/// Closed-form eta(delta^i t) = delta^i t + (-1)^{i-1}
/// (prod_{j<i} delta^j t)^{p-1} t E'(u) eps, for i >= 1.
DeltaPoly eta_closed_form(const DeltaRingPtr& ring, int i);

struct DeltaVerifyEntry {
    std::string family;  // "delta^i(t)" or "lambda^k"
    int i = 0;
    bool pass = false;
    std::string diff;  // differing monomials on failure
};

struct DeltaVerifyReport {
    bool ok = true;
    std::vector<DeltaVerifyEntry> entries;
};

/// Computes eta(delta^i t) two ways (delta-commutation vs closed formula)
/// and compares, for 1 <= i <= i_max.
DeltaVerifyReport verify_eta_on_delta_powers(const DeltaRingPtr& ring, int i_max);

/// In the unramified normalization (E = u - p): checks the Sen action
/// Theta = eps-part of eta on the envelope generators,
///   Theta(delta^i t) = (-1)^{i-1} (prod_{j<i} delta^j t)^{p-1} t  (i >= 0)
/// and Theta(lambda^k) = k lambda^k for k <= k_max.
DeltaVerifyReport theta_on_envelope_generators(unsigned long p, int N, int i_max, int k_max,
                                               int gen_cap = 4);

}  // namespace wittsen
