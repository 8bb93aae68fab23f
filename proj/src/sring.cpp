#include "wittsen/sring.hpp"

#include <algorithm>
#include <sstream>

namespace wittsen {

Eisenstein::Eisenstein(unsigned long p_, std::vector<mpz_class> coeffs)
    : p(p_), a(std::move(coeffs)) {
    if (p < 2) throw BadInput("Eisenstein: prime must be >= 2");
    if (a.size() < 2) throw BadInput("Eisenstein: degree must be >= 1");
    e = static_cast<int>(a.size()) - 1;
    if (a[e] != 1) throw BadInput("Eisenstein: leading coefficient must be 1");
    const int cap = 64;
    for (int i = 0; i < e; ++i)
        if (a[i] != 0 && int_val(a[i], p, cap) < 1)
            throw BadInput("Eisenstein: p must divide coefficient " + std::to_string(i));
    if (a[0] == 0 || int_val(a[0], p, cap) != 1)
        throw BadInput("Eisenstein: p must exactly divide the constant term");
}

Eisenstein Eisenstein::unramified(unsigned long p) {
    return Eisenstein(p, {mpz_class(-static_cast<long>(p)), mpz_class(1)});
}

UPoly Eisenstein::poly(int N) const {
    return UPoly(p, N, a);
}

UPoly Eisenstein::deriv_poly(int N) const {
    return poly(N).derivative();
}

std::string Eisenstein::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) os << ",";
        os << a[i].get_str();
    }
    os << "]";
    return os.str();
}

SRing::SRing(Eisenstein E_, int m_, int N_) : E(std::move(E_)), m(m_), N(N_) {
    if (m < 1) throw BadInput("SRing: truncation order must be >= 1");
    if (N < 1) throw BadInput("SRing: precision must be >= 1");
    Em = E.poly(N).pow_u(static_cast<unsigned long>(m));
}

SRingPtr make_sring(Eisenstein E, int m, int N) {
    return std::make_shared<const SRing>(std::move(E), m, N);
}

SRingElem::SRingElem(SRingPtr ring, UPoly rep) : ring_(std::move(ring)), rep_(std::move(rep)) {
    if (rep_.p != ring_->E.p) throw RingMismatch("SRingElem: prime");
    reduce();
}

void SRingElem::reduce() {
    if (rep_.N > ring_->N) {
        rep_.N = ring_->N;
        rep_.normalize();
    }
    if (rep_.degree() >= ring_->Em.degree()) {
        UPoly q, r;
        upoly_divmod(rep_, ring_->Em, q, r);
        rep_ = r;
    }
}

SRingElem SRingElem::zero(SRingPtr ring) {
    unsigned long p = ring->E.p;
    int N = ring->N;
    return SRingElem(std::move(ring), UPoly(p, N));
}

SRingElem SRingElem::one(SRingPtr ring) {
    return from_int(std::move(ring), 1);
}

SRingElem SRingElem::from_int(SRingPtr ring, const mpz_class& v) {
    unsigned long p = ring->E.p;
    int N = ring->N;
    return SRingElem(std::move(ring), UPoly(p, N, {v}));
}

SRingElem SRingElem::u(SRingPtr ring) {
    unsigned long p = ring->E.p;
    int N = ring->N;
    return SRingElem(std::move(ring), UPoly::monomial(p, N, 1));
}

SRingElem SRingElem::e_image(SRingPtr ring) {
    UPoly f = ring->E.poly(ring->N);
    return SRingElem(std::move(ring), f);
}

SRingElem SRingElem::lambda(SRingPtr ring) {
    unsigned long p = ring->E.p;
    int N = ring->N;
    UPoly f(p, N, {mpz_class(-static_cast<long>(p)), mpz_class(1)});
    return SRingElem(std::move(ring), f);
}

void SRingElem::check_ring(const SRingElem& o) const {
    if (!(*ring_ == *o.ring_)) throw RingMismatch("SRingElem ring descriptors differ");
}

SRingElem SRingElem::operator+(const SRingElem& o) const {
    check_ring(o);
    return SRingElem(ring_, rep_ + o.rep_);
}

SRingElem SRingElem::operator-(const SRingElem& o) const {
    check_ring(o);
    return SRingElem(ring_, rep_ - o.rep_);
}

SRingElem SRingElem::operator*(const SRingElem& o) const {
    check_ring(o);
    return SRingElem(ring_, rep_ * o.rep_);
}

SRingElem SRingElem::operator-() const { return SRingElem(ring_, rep_.neg()); }

SRingElem SRingElem::pow_u(const mpz_class& e) const {
    SRingElem acc = one(ring_);
    acc = acc.truncated(prec());
    SRingElem base = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

SRingElem SRingElem::div_ppow(int k) const {
    if (k == 0) return *this;
    if (min_val() < k)
        throw InsufficientValuation("SRingElem::div_ppow: min coordinate val " +
                                    std::to_string(min_val()) + " < " + std::to_string(k));
    return SRingElem(ring_, rep_.div_ppow(k));
}

SRingElem SRingElem::mul_ppow(int k) const {
    // The gain is capped at the ring's ambient precision by the constructor.
    return SRingElem(ring_, rep_.mul_ppow(k));
}

bool SRingElem::is_unit() const {
    // Unit iff nonzero constant coordinate mod (p, u).
    mpz_class c0 = rep_.coeff(0);
    return int_val(c0, prime(), 1) == 0;
}

SRingElem SRingElem::inv() const {
    if (!is_unit()) throw NotAUnit("SRingElem::inv");
    // Invert mod (p, u^{em}) by a geometric series against the u-part, then
    // Newton-lift the p-adic precision: x <- x(2 - f x).
    int D = ring_->Em.degree();
    unsigned long p = prime();
    int Nf = prec();
    mpz_class c0 = rep_.coeff(0);
    mpz_class pz(p), c0inv;
    mpz_invert(c0inv.get_mpz_t(), c0.get_mpz_t(), pz.get_mpz_t());
    // x0 = c0^{-1} * sum_j (-c0^{-1} * (f - c0))^j  mod (p, u^D)
    UPoly f1 = rep_;
    f1.N = 1;
    f1.normalize();
    UPoly rest = f1;
    if (!rest.c.empty()) rest.c[0] = 0;
    rest.normalize();
    UPoly x(p, 1, {c0inv});
    UPoly term(p, 1, {mpz_class(1)});
    for (int j = 1; j <= D; ++j) {
        term = term * rest * UPoly(p, 1, {pz - c0inv});  // times -c0inv
        if (term.degree() >= D) {
            UPoly q, r;
            upoly_divmod(term, ring_->Em, q, r);
            term = r;
        }
        if (term.is_zero()) break;
        x = x + term * UPoly(p, 1, {c0inv});
    }
    // Newton lift to the element's precision.
    int have = 1;
    SRingElem xi(ring_, x);
    xi = xi.truncated(1);
    SRingElem self = *this;
    while (have < Nf) {
        have = std::min(2 * have, Nf);
        UPoly xr = xi.rep_;
        xr.N = have;
        xr.normalize();
        SRingElem xl(ring_, xr);
        SRingElem two = from_int(ring_, 2).truncated(have);
        xi = xl * (two - self.truncated(have) * xl);
    }
    return xi;
}

SRingElem SRingElem::derivative() const {
    return SRingElem(ring_, rep_.derivative());
}

bool SRingElem::same_value(const SRingElem& o) const {
    check_ring(o);
    return rep_.same_value(o.rep_);
}

SRingElem SRingElem::truncated(int N2) const {
    UPoly f = rep_;
    if (N2 < f.N) {
        f.N = N2;
        f.normalize();
    }
    return SRingElem(ring_, f);
}

std::vector<UPoly> SRingElem::eadic_digits() const {
    std::vector<UPoly> out;
    UPoly E = ring_->E.poly(prec());
    UPoly cur = rep_;
    for (int j = 0; j < ring_->m; ++j) {
        UPoly q, r;
        upoly_divmod(cur, E, q, r);
        out.push_back(r);
        cur = q;
    }
    return out;
}

std::string SRingElem::str() const {
    std::ostringstream os;
    os << "[";
    int D = ring_->Em.degree();
    for (int i = 0; i < D; ++i) {
        if (i) os << ",";
        os << rep_.coeff(i).get_str();
    }
    os << "]";
    return os.str();
}

SRingElem frobenius_lift(const SRingElem& a) {
    UPoly f = a.rep().subst_upow(a.prime());
    return SRingElem(a.ring(), f);
}

UPoly compute_h_poly(const Eisenstein& E, int n, int N) {
    if (n < 1) throw BadInput("compute_h_poly: n must be >= 1");
    UPoly Ep = E.poly(N + 1);
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), E.p, static_cast<unsigned long>(n));
    UPoly A = Ep.subst_upow(pn.get_ui());          // phi^n(E)
    UPoly B = Ep.pow_u(pn.get_ui());               // E^{p^n}
    UPoly h = (A - B).div_ppow(1);                 // exact, precision N
    // h_n is a unit: nonzero constant coordinate mod (p, u).
    if (int_val(h.coeff(0), E.p, 1) != 0)
        throw InsufficientValuation("compute_h_poly: h_" + std::to_string(n) +
                                    " not a unit mod (p,u)");
    return h;
}

UPoly compute_t_poly(const Eisenstein& E, int n, int N) {
    UPoly h = compute_h_poly(E, n, N + n);
    return h.derivative().div_ppow(n);  // p^n t_n = h_n'
}

SRingElem compute_h_n(const Eisenstein& E, int n, SRingPtr ring) {
    int N = ring->N;
    return sring_from_poly(std::move(ring), compute_h_poly(E, n, N));
}

SRingElem compute_t_n(const Eisenstein& E, int n, SRingPtr ring) {
    int N = ring->N;
    return sring_from_poly(std::move(ring), compute_t_poly(E, n, N));
}

SRingElem sring_from_poly(SRingPtr ring, const UPoly& f) {
    return SRingElem(std::move(ring), f);
}

}  // namespace wittsen
