#include "wittsen/digit.hpp"

#include <algorithm>
#include <sstream>

namespace wittsen {

DigitRingPtr make_digit_ring(Eisenstein E, int nord, int N) {
    return std::make_shared<const DigitRing>(std::move(E), nord, N);
}

DigitElem::DigitElem(DigitRingPtr ring, std::vector<UPoly> digits)
    : ring_(std::move(ring)), d_(std::move(digits)) {
    if ((int)d_.size() != ring_->nord) throw BadInput("DigitElem: digit count");
    Neff_ = ring_->N;
    for (auto& f : d_) {
        if (f.p != ring_->E.p) throw RingMismatch("DigitElem: prime");
        Neff_ = std::min(Neff_, f.N);
    }
    renormalize();
}

void DigitElem::renormalize() {
    UPoly E = ring_->E.poly(Neff_);
    for (int j = 0; j < ring_->nord; ++j) {
        d_[j].N = Neff_;
        d_[j].normalize();
        if (d_[j].degree() >= ring_->E.e) {
            UPoly q, r;
            upoly_divmod(d_[j], E, q, r);
            d_[j] = r;
            if (j + 1 < ring_->nord && !q.is_zero()) {
                // E = p*(E/p): a reduction overflow carries p*q upward.
                UPoly carry = q.mul_ppow(1);
                carry.N = Neff_;
                carry.normalize();
                d_[j + 1] = d_[j + 1] + carry;
            }
        }
    }
}

DigitElem DigitElem::zero(DigitRingPtr ring) {
    std::vector<UPoly> d(ring->nord, UPoly(ring->E.p, ring->N));
    return DigitElem(std::move(ring), std::move(d));
}

DigitElem DigitElem::one(DigitRingPtr ring) { return from_int(std::move(ring), 1); }

DigitElem DigitElem::from_int(DigitRingPtr ring, const mpz_class& v) {
    std::vector<UPoly> d(ring->nord, UPoly(ring->E.p, ring->N));
    d[0] = UPoly(ring->E.p, ring->N, {v});
    return DigitElem(std::move(ring), std::move(d));
}

DigitElem DigitElem::e_over_p(DigitRingPtr ring) {
    std::vector<UPoly> d(ring->nord, UPoly(ring->E.p, ring->N));
    if (ring->nord > 1) d[1] = UPoly(ring->E.p, ring->N, {mpz_class(1)});
    return DigitElem(std::move(ring), std::move(d));
}

DigitElem DigitElem::from_poly(DigitRingPtr ring, const UPoly& f) {
    std::vector<UPoly> d(ring->nord, UPoly(ring->E.p, f.N));
    UPoly E = ring->E.poly(f.N);
    UPoly cur = f;
    for (int j = 0; j < ring->nord && !cur.is_zero(); ++j) {
        UPoly q, r;
        upoly_divmod(cur, E, q, r);
        d[j] = r.mul_ppow(j);  // E^j = p^j (E/p)^j
        d[j].N = f.N;
        d[j].normalize();
        cur = q;
    }
    // Digits beyond nord-1 vanish: E^nord = p^nord (E/p)^nord = 0 there.
    return DigitElem(std::move(ring), std::move(d));
}

DigitElem DigitElem::u(DigitRingPtr ring) {
    UPoly f = UPoly::monomial(ring->E.p, ring->N, 1);
    return from_poly(std::move(ring), f);
}

bool DigitElem::is_zero() const {
    for (const auto& f : d_)
        if (!f.is_zero()) return false;
    return true;
}

void DigitElem::check_ring(const DigitElem& o) const {
    if (!(*ring_ == *o.ring_)) throw RingMismatch("DigitElem ring descriptors differ");
}

DigitElem DigitElem::operator+(const DigitElem& o) const {
    check_ring(o);
    std::vector<UPoly> d(ring_->nord, UPoly(prime(), std::min(Neff_, o.Neff_)));
    for (int j = 0; j < ring_->nord; ++j) d[j] = d_[j] + o.d_[j];
    return DigitElem(ring_, std::move(d));
}

DigitElem DigitElem::operator-(const DigitElem& o) const { return *this + (-o); }

DigitElem DigitElem::operator-() const {
    std::vector<UPoly> d(ring_->nord, UPoly(prime(), Neff_));
    for (int j = 0; j < ring_->nord; ++j) d[j] = d_[j].neg();
    return DigitElem(ring_, std::move(d));
}

DigitElem DigitElem::operator*(const DigitElem& o) const {
    check_ring(o);
    int Nm = std::min(Neff_, o.Neff_);
    int nord = ring_->nord;
    UPoly E = ring_->E.poly(Nm);
    std::vector<UPoly> acc(nord + 1, UPoly(prime(), Nm));
    for (int j = 0; j < nord; ++j) {
        if (d_[j].is_zero()) continue;
        for (int k = 0; k + j < nord; ++k) {
            if (o.d_[k].is_zero()) continue;
            UPoly prod = d_[j] * o.d_[k];
            UPoly q, r;
            upoly_divmod(prod, E, q, r);
            acc[j + k] = acc[j + k] + r;
            if (!q.is_zero()) {
                UPoly carry = q.mul_ppow(1);
                carry.N = Nm;
                carry.normalize();
                acc[j + k + 1] = acc[j + k + 1] + carry;  // discarded if == nord
            }
        }
    }
    acc.resize(nord);
    return DigitElem(ring_, std::move(acc));
}

DigitElem DigitElem::pow_u(const mpz_class& e) const {
    DigitElem acc = one(ring_).truncated(Neff_);
    DigitElem base = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

DigitElem DigitElem::shift(int k) const {
    if (k < 0) throw BadInput("DigitElem::shift: negative");
    std::vector<UPoly> d(ring_->nord, UPoly(prime(), Neff_));
    for (int j = 0; j + k < ring_->nord; ++j) d[j + k] = d_[j];
    return DigitElem(ring_, std::move(d));
}

int DigitElem::min_val() const {
    int best = Neff_;
    for (const auto& f : d_) best = std::min(best, f.min_val());
    return best;
}

DigitElem DigitElem::div_ppow(int k) const {
    if (k == 0) return *this;
    if (min_val() < k)
        throw InsufficientValuation("DigitElem::div_ppow: min digit val " +
                                    std::to_string(min_val()) + " < " + std::to_string(k));
    std::vector<UPoly> d;
    d.reserve(ring_->nord);
    for (const auto& f : d_) d.push_back(f.div_ppow(k));
    return DigitElem(ring_, std::move(d));
}

DigitElem DigitElem::mul_ppow(int k) const {
    std::vector<UPoly> d;
    d.reserve(ring_->nord);
    for (const auto& f : d_) {
        UPoly g = f.mul_ppow(k);
        if (g.N > ring_->N) {
            g.N = ring_->N;
            g.normalize();
        }
        d.push_back(g);
    }
    return DigitElem(ring_, std::move(d));
}

bool DigitElem::is_unit() const {
    return int_val(d_[0].coeff(0), prime(), 1) == 0;
}

DigitElem DigitElem::inv() const {
    if (!is_unit()) throw NotAUnit("DigitElem::inv: digit 0 not a unit");
    // Newton iteration x <- x(2 - a x) in the digit ring, seeded with the
    // O_K-inverse of digit 0.  Mind that even digit-0 products carry (the
    // O_K product of f and f^{-1} is 1 + E k, i.e. 1 + p k (E/p) here), so
    // the error 1 - a x_0 lies in the ideal (p, E/p) and the iteration
    // squares it away; (p, E/p)^{N + nord} = 0.
    auto okr = make_sring(ring_->E, 1, Neff_);
    SRingElem d0(okr, d_[0]);
    SRingElem d0i = d0.inv();
    std::vector<UPoly> dinv(ring_->nord, UPoly(prime(), Neff_));
    dinv[0] = d0i.rep();
    DigitElem x(ring_, std::move(dinv));
    DigitElem one_e = one(ring_).truncated(Neff_);
    int cap = 2;
    for (int t = Neff_ + ring_->nord; t > 0; t >>= 1) ++cap;
    for (int it = 0; it < cap; ++it) {
        DigitElem err = one_e - *this * x;
        if (err.is_zero()) return x;
        x = x + x * err;
    }
    if ((*this * x).same_value(one_e)) return x;
    throw NotAUnit("DigitElem::inv: Newton iteration failed to converge");
}

bool DigitElem::same_value(const DigitElem& o) const {
    check_ring(o);
    for (int j = 0; j < ring_->nord; ++j)
        if (!d_[j].same_value(o.d_[j])) return false;
    return true;
}

DigitElem DigitElem::truncated(int N2) const {
    std::vector<UPoly> d = d_;
    for (auto& f : d) {
        if (N2 < f.N) {
            f.N = N2;
            f.normalize();
        }
    }
    return DigitElem(ring_, std::move(d));
}

std::string DigitElem::str() const {
    std::ostringstream os;
    os << "[";
    for (int j = 0; j < ring_->nord; ++j) {
        if (j) os << ",";
        os << "[";
        for (int i = 0; i < ring_->E.e; ++i) {
            if (i) os << ",";
            os << d_[j].coeff(i).get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace wittsen
