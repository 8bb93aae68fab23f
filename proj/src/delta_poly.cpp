#include "wittsen/delta_poly.hpp"

#include <algorithm>
#include <sstream>

namespace wittsen {

std::string CPoly::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i <= re.degree(); ++i) {
        if (i) os << ",";
        os << re.coeff(i).get_str();
    }
    os << " | eps ";
    for (int i = 0; i <= eps.degree(); ++i) {
        if (i) os << ",";
        os << eps.coeff(i).get_str();
    }
    os << ")";
    return os.str();
}

DeltaRing::DeltaRing(Eisenstein E_, int N_, int gen_cap_, int deg_cap_, int hard_cap_)
    : E(std::move(E_)), N(N_), gen_cap(gen_cap_), deg_cap(deg_cap_), hard_deg_cap(hard_cap_) {
    if (gen_cap < 1 || gen_cap > kDeltaGenCap) throw BadInput("DeltaRing: generator cap");
    int p3 = static_cast<int>(3 * E.p);
    if (deg_cap <= 0) deg_cap = p3;
    // intermediates reach roughly p times the result degree (x^p inside the
    // delta formula); the representation is sparse, so the cap is generous
    if (hard_deg_cap <= 0)
        hard_deg_cap = std::max(p3 * static_cast<int>(E.p * E.p), 64);
}

DeltaRingPtr make_delta_ring(Eisenstein E, int N, int gen_cap, int deg_cap, int hard_cap) {
    return std::make_shared<const DeltaRing>(std::move(E), N, gen_cap, deg_cap, hard_cap);
}

DeltaPoly DeltaPoly::one(DeltaRingPtr ring) {
    DeltaPoly x(ring);
    x.add_term(DeltaMono{}, CPoly::one(ring->E.p, ring->N));
    return x;
}

DeltaPoly DeltaPoly::from_coeff(DeltaRingPtr ring, CPoly c) {
    DeltaPoly x(ring);
    x.add_term(DeltaMono{}, std::move(c));
    return x;
}

DeltaPoly DeltaPoly::gen(DeltaRingPtr ring, int i) {
    if (i < 0 || i >= ring->gen_cap)
        throw CapExceeded("delta-order " + std::to_string(i) + " outside the generator cap");
    DeltaPoly x(ring);
    DeltaMono m;
    m.e[i] = 1;
    x.add_term(m, CPoly::one(ring->E.p, ring->N));
    return x;
}

int DeltaPoly::max_total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total());
    return d;
}

void DeltaPoly::add_term(const DeltaMono& m, CPoly c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(c));
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void DeltaPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

DeltaPoly DeltaPoly::operator+(const DeltaPoly& o) const {
    DeltaPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

DeltaPoly DeltaPoly::operator-(const DeltaPoly& o) const { return *this + o.neg(); }

DeltaPoly DeltaPoly::neg() const {
    DeltaPoly out(ring_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.neg());
    return out;
}

DeltaPoly DeltaPoly::operator*(const DeltaPoly& o) const {
    DeltaPoly out(ring_ ? ring_ : o.ring_);
    const DeltaRing& R = *out.ring_;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            DeltaMono m;
            int tot = 0;
            for (size_t i = 0; i < m.e.size(); ++i) {
                m.e[i] = static_cast<uint16_t>(ma.e[i] + mb.e[i]);
                tot += m.e[i];
            }
            if (tot > R.hard_deg_cap)
                throw CapExceeded("monomial degree " + std::to_string(tot) +
                                  " above the internal cap " + std::to_string(R.hard_deg_cap));
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

DeltaPoly DeltaPoly::pow_u(unsigned long e) const {
    DeltaPoly acc = one(ring_);
    DeltaPoly base = *this;
    while (e > 0) {
        if (e & 1ul) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

DeltaPoly DeltaPoly::div_ppow(int k) const {
    DeltaPoly out(ring_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.div_ppow(k));
    out.prune();
    return out;
}

DeltaPoly DeltaPoly::eps_part() const {
    DeltaPoly out(ring_);
    for (const auto& [m, c] : terms_) {
        if (c.eps.is_zero()) continue;
        out.terms_.emplace(m, CPoly(c.eps, UPoly(c.eps.p, c.eps.N)));
    }
    return out;
}

DeltaPoly DeltaPoly::re_part() const {
    DeltaPoly out(ring_);
    for (const auto& [m, c] : terms_) {
        if (c.re.is_zero()) continue;
        out.terms_.emplace(m, CPoly(c.re, UPoly(c.re.p, c.re.N)));
    }
    return out;
}

bool DeltaPoly::same_value(const DeltaPoly& o) const {
    DeltaPoly d = *this - o;
    // compare at the common precision: the subtraction already truncates
    return d.is_zero();
}

std::string DeltaPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (!m.e[i]) continue;
            os << "*d" << i << "t";
            if (m.e[i] > 1) os << "^" << m.e[i];
        }
    }
    return os.str();
}

DeltaPoly phi_apply(const DeltaPoly& x) {
    const DeltaRingPtr& R = x.ring();
    unsigned long p = R->E.p;
    DeltaPoly out(R);
    for (const auto& [m, c] : x.terms()) {
        DeltaPoly term = DeltaPoly::from_coeff(R, c.phi(p));
        for (int i = 0; i < kDeltaGenCap; ++i) {
            if (!m.e[i]) continue;
            if (i + 1 >= R->gen_cap)
                throw CapExceeded("phi needs delta-order " + std::to_string(i + 1) +
                                  " beyond the generator cap " + std::to_string(R->gen_cap));
            // phi(delta^i t) = (delta^i t)^p + p delta^{i+1} t
            DeltaPoly img = DeltaPoly::gen(R, i).pow_u(p);
            DeltaPoly shift = DeltaPoly::gen(R, i + 1);
            DeltaPoly pshift(R);
            for (const auto& [ms, cs] : shift.terms())
                pshift.add_term(ms, CPoly(cs.re.mul_ppow(1), cs.eps.mul_ppow(1)));
            img = img + pshift;
            term = term * img.pow_u(m.e[i]);
        }
        out = out + term;
    }
    return out;
}

DeltaPoly delta_apply(const DeltaPoly& x) {
    unsigned long p = x.ring()->E.p;
    DeltaPoly diff = phi_apply(x) - x.pow_u(p);
    try {
        return diff.div_ppow(1);
    } catch (const InsufficientValuation& e) {
        throw InexactDivision(std::string("delta_apply: phi(x) - x^p not divisible by p: ") +
                              e.locus);
    }
}

EtaMap::EtaMap(DeltaRingPtr ring) : ring_(std::move(ring)) {
    unsigned long p = ring_->E.p;
    int N = ring_->N;
    UPoly E = ring_->E.poly(N);
    UPoly Ed = ring_->E.deriv_poly(N);
    // eta(t) = t (1 - eps E'(u))
    DeltaPoly t = DeltaPoly::gen(ring_, 0);
    CPoly factor(UPoly(p, N, {mpz_class(1)}), Ed.neg());
    images_.push_back(t * DeltaPoly::from_coeff(ring_, factor));
    // eta(delta^i t) = delta(eta(delta^{i-1} t)), as far as the caps allow.
    for (int i = 1; i < ring_->gen_cap; ++i) {
        try {
            images_.push_back(delta_apply(images_.back()));
        } catch (const CapExceeded&) {
            break;
        }
    }
}

const DeltaPoly& EtaMap::gen_image(int i) const {
    if (i < 0 || i >= static_cast<int>(images_.size()))
        throw CapExceeded("eta image of delta^" + std::to_string(i) +
                          "(t) not available inside the caps");
    return images_[i];
}

DeltaPoly EtaMap::apply(const DeltaPoly& x) const {
    if (x.max_total_degree() > ring_->deg_cap)
        throw CapExceeded("eta input degree above the configured cap");
    DeltaPoly out(ring_);
    UPoly E = ring_->E.poly(ring_->N);
    for (const auto& [m, c] : x.terms()) {
        DeltaPoly term = DeltaPoly::from_coeff(ring_, c.eta(E));
        for (int i = 0; i < kDeltaGenCap; ++i)
            for (int k = 0; k < m.e[i]; ++k) term = term * gen_image(i);
        out = out + term;
    }
    return out;
}

DeltaPoly eta_closed_form(const DeltaRingPtr& ring, int i) {
    if (i < 1) throw BadInput("eta_closed_form: i >= 1");
    unsigned long p = ring->E.p;
    int N = ring->N;
    DeltaPoly prod = DeltaPoly::one(ring);
    for (int j = 0; j < i; ++j) prod = prod * DeltaPoly::gen(ring, j);
    DeltaPoly corr = prod.pow_u(p - 1) * DeltaPoly::gen(ring, 0);
    UPoly Ed = ring->E.deriv_poly(N);
    CPoly eps_coeff(UPoly(p, N), (i % 2 == 1) ? Ed : Ed.neg());  // (-1)^{i-1} E' eps
    return DeltaPoly::gen(ring, i) + corr * DeltaPoly::from_coeff(ring, eps_coeff);
}

DeltaVerifyReport verify_eta_on_delta_powers(const DeltaRingPtr& ring, int i_max) {
    DeltaVerifyReport rep;
    EtaMap eta(ring);
    for (int i = 1; i <= i_max; ++i) {
        DeltaVerifyEntry e;
        e.family = "delta^i(t)";
        e.i = i;
        DeltaPoly lhs = eta.gen_image(i);
        DeltaPoly rhs = eta_closed_form(ring, i);
        e.pass = lhs.same_value(rhs);
        if (!e.pass) {
            e.diff = (lhs - rhs).str();
            rep.ok = false;
        }
        rep.entries.push_back(e);
    }
    return rep;
}

DeltaVerifyReport theta_on_envelope_generators(unsigned long p, int N, int i_max, int k_max,
                                               int gen_cap) {
    DeltaVerifyReport rep;
    auto ring = make_delta_ring(Eisenstein::unramified(p), N, gen_cap);
    EtaMap eta(ring);
    // Theta(delta^i t) = (-1)^{i-1} (prod_{j<i} delta^j t)^{p-1} t; at i = 0
    // the empty product gives Theta(t) = -t.
    for (int i = 0; i <= i_max; ++i) {
        DeltaVerifyEntry e;
        e.family = "delta^i(t)";
        e.i = i;
        DeltaPoly theta = eta.gen_image(i).eps_part();
        DeltaPoly prod = DeltaPoly::one(ring);
        for (int j = 0; j < i; ++j) prod = prod * DeltaPoly::gen(ring, j);
        DeltaPoly expected = prod.pow_u(p - 1) * DeltaPoly::gen(ring, 0);
        if (i % 2 == 0) expected = expected.neg();  // (-1)^{i-1}
        e.pass = theta.same_value(expected);
        if (!e.pass) {
            e.diff = (theta - expected).str();
            rep.ok = false;
        }
        rep.entries.push_back(e);
    }
    // Theta(lambda^k) = k lambda^k for the uniformizer lambda = u - p.
    UPoly lam(p, N, {mpz_class(-static_cast<long>(p)), mpz_class(1)});
    for (int k = 0; k <= k_max; ++k) {
        DeltaVerifyEntry e;
        e.family = "lambda^k";
        e.i = k;
        UPoly lk = lam.pow_u(static_cast<unsigned long>(k));
        DeltaPoly x = DeltaPoly::from_coeff(ring, CPoly(lk, UPoly(p, N)));
        DeltaPoly theta = eta.apply(x).eps_part();
        UPoly klk = lk * UPoly(p, N, {mpz_class(k)});
        DeltaPoly expected = DeltaPoly::from_coeff(ring, CPoly(klk, UPoly(p, N)));
        e.pass = theta.same_value(expected);
        if (!e.pass) {
            e.diff = (theta - expected).str();
            rep.ok = false;
        }
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace wittsen
