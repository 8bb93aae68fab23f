#include "wittsen/constructions.hpp"

#include <algorithm>
#include <sstream>

namespace wittsen {

namespace {

mpz_class upow(unsigned long b, unsigned long e) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), b, e);
    return m;
}

int ipow_small(unsigned long p, int e) {
    mpz_class m = upow(p, static_cast<unsigned long>(e));
    if (!m.fits_sint_p()) throw BadInput("power too large for a budget computation");
    return static_cast<int>(m.get_si());
}

ValuationCheck val_check(const std::string& symbol, int claimed, const PAdic& d) {
    ValuationCheck v;
    v.symbol = symbol;
    v.claimed = claimed;
    v.computed = d.val();
    if (claimed >= d.prec()) {
        v.at_precision = true;
        v.pass = (d.val() == d.prec());  // vanishes at precision, consistent
    } else {
        v.pass = (v.computed == claimed);
    }
    return v;
}

}  // namespace

int budget_b_unramified(unsigned long p, int L, int N) {
    int pl = ipow_small(p, L - 1);
    return std::max(N, pl) + L + 2;
}

int budget_general(unsigned long p, int L, int N) {
    (void)p;
    return N + L * (L + 1) / 2 + L + 4;
}

int budget_truncated(unsigned long p, int L, int N) {
    (void)p;
    return N + 2 * L + 3;
}

int budget_vf(unsigned long p, int L, int N) {
    int vmax = 0;
    if (L >= 2) {
        int a = ipow_small(p, L - 2);
        vmax = a * static_cast<int>(p - 2) - (a - 1) / static_cast<int>(p - 1);
    }
    return std::max(N, vmax + 1) + L + 2;
}

int default_digit_order(unsigned long p, int L) {
    return ipow_small(p, L - 1) + 1;
}

BUnramifiedResult construct_b_unramified(unsigned long p, int n, int L, int N) {
    if (p < 2) throw BadInput("construct_b_unramified: p >= 2 required");
    if (n < 1 || L < 1 || N < 1) throw BadInput("construct_b_unramified: bad parameters");
    BUnramifiedResult out;
    ConstructionReport& rep = out.report;
    rep.construction = "b-unramified";
    int Nw = budget_b_unramified(p, L, N);
    rep.budget = {N, Nw, L, n, "n"};

    Eisenstein E = Eisenstein::unramified(p);
    out.ring = make_sring(E, n, Nw);
    const SRingPtr& ring = out.ring;
    SRingElem zero = SRingElem::zero(ring);
    SRingElem one = SRingElem::one(ring);
    SRingElem lam = SRingElem::lambda(ring);

    out.b.c.push_back(DSElem(one, one));  // b_0 = 1 + eps

    for (int m = 1; m < L; ++m) {
        mpz_class pm_z = upow(p, static_cast<unsigned long>(m));
        unsigned long pm = pm_z.get_ui();
        mpz_class ppm = upow(p, pm);  // p^{p^m}
        mpz_class unit0 = (ppm - p) / p;  // (p^{p^m} - p) = p * unit0, a unit
        PAdic unit0_inv = PAdic(p, Nw, unit0).inv();

        std::vector<PAdic> d;
        d.push_back(PAdic(p, Nw, -1));  // d_{m,0} = -1, i.e. c_{m,0} = -eps
        bool aborted = false;
        for (int i = 1; i <= n - 1 && !aborted; ++i) {
            // W_i = binom(p^m, i) p^{p^m - i}
            mpz_class Wi;
            mpz_bin_uiui(Wi.get_mpz_t(), pm, static_cast<unsigned long>(i));
            Wi *= upow(p, pm - static_cast<unsigned long>(i));
            PAdic rhs(p, Nw, mpz_class(i) * Wi);
            for (int j = 1; j <= i - 1; ++j) {
                mpz_class Wj;
                mpz_bin_uiui(Wj.get_mpz_t(), pm, static_cast<unsigned long>(j));
                Wj *= upow(p, pm - static_cast<unsigned long>(j));
                mpz_class full = Wj * pm_z;  // W_j p^m, exact
                int v = int_val(full, p, Nw + 8);
                mpz_class unit_part = full / upow(p, static_cast<unsigned long>(v));
                PAdic t = d[i - j] * PAdic(p, d[i - j].prec(), unit_part);
                rhs = rhs - t.mul_ppow(v);
            }
            try {
                PAdic di = rhs.div_ppow(m + 1) * unit0_inv;
                int claimed = static_cast<int>(pm) - i - 1;
                BEntry be;
                be.m = m;
                be.i = i;
                be.d = di;
                be.claimed_val = claimed;
                be.computed_val = di.val();
                ValuationCheck vc = val_check(
                    "d_{" + std::to_string(m) + "," + std::to_string(i) + "}", claimed, di);
                be.pass = vc.pass;
                rep.valuation_checks.push_back(vc);
                out.table.entries.push_back(be);
                d.push_back(di);
            } catch (const InsufficientValuation& e) {
                rep.error = "InsufficientValuation";
                rep.error_locus = "solving coefficient (m=" + std::to_string(m) +
                                  ", i=" + std::to_string(i) + "): " + e.locus;
                aborted = true;
            }
        }
        if (aborted) {
            rep.ok = false;
            return out;
        }
        SRingElem bm = zero;
        SRingElem lampow = one;
        for (int i = 0; i <= n - 1 && i < static_cast<int>(d.size()); ++i) {
            bm = bm + SRingElem::from_int(ring, d[i].residue()).truncated(d[i].prec()) * lampow;
            lampow = lampow * lam;
        }
        out.b.c.push_back(DSElem(zero, bm));
    }

    // Witt-vector images of f(lambda) and g(lambda): components recovered by
    // unghosting the directly computed ghost vectors
    //   w_m(f lambda) = u^{p^m} - p,
    //   w_m(g lambda) = u^{p^m} - p + eps p^m u^{p^m-1} lambda.
    SRingElem uu = SRingElem::u(ring);
    std::vector<DSElem> wf, wg;
    for (int m = 0; m < L; ++m) {
        mpz_class pmz = upow(p, static_cast<unsigned long>(m));
        SRingElem base = uu.pow_u(pmz) - SRingElem::from_int(ring, static_cast<long>(p));
        SRingElem eps = (uu.pow_u(pmz - 1) * lam).mul_ppow(m);
        wf.push_back(DSElem(base, zero));
        wg.push_back(DSElem(base, eps));
    }
    try {
        out.lambda_w = unghost(wf);
        out.lambda_tilde_w = unghost(wg);
    } catch (const InsufficientValuation& e) {
        rep.error = "InsufficientValuation";
        rep.error_locus = std::string("unghosting f/g(lambda): ") + e.locus;
        rep.ok = false;
        return out;
    }
    rep.ghost_checks = verify_ghost_identity<DSElem>(
        {out.lambda_tilde_w, out.b, out.lambda_w}, GhostPattern::product, N);
    rep.ok = rep.all_pass();
    return out;
}

namespace {

// h_m and t_m as digit elements, plus s_m = h_m + E^{p^m}/p and its inverse.
struct GeneralLevelData {
    DigitElem h, t, s_inv;
};

GeneralLevelData general_level(const DigitRingPtr& ring, const Eisenstein& E, int m, int Nw,
                               ConstructionReport& rep) {
    GeneralLevelData out;
    UPoly hp = compute_h_poly(E, m, Nw);
    UPoly tp = compute_t_poly(E, m, Nw);
    out.h = DigitElem::from_poly(ring, hp);
    out.t = DigitElem::from_poly(ring, tp);
    ValuationCheck vc;
    vc.symbol = "h_" + std::to_string(m) + " mod (p,u)";
    vc.claimed = 0;
    vc.computed = int_val(hp.coeff(0), E.p, 1);
    vc.pass = (vc.computed == 0);
    rep.valuation_checks.push_back(vc);

    mpz_class pm = upow(E.p, static_cast<unsigned long>(m));
    // E^{p^m}/p = p^{p^m - 1} (E/p)^{p^m}; vanishes when the digit position
    // or the p-power exceeds the ring caps.
    DigitElem tail = DigitElem::zero(ring);
    if (pm.fits_sint_p() && pm.get_si() < ring->nord && pm.get_si() - 1 < Nw) {
        tail = DigitElem::one(ring).shift(static_cast<int>(pm.get_si()))
                   .mul_ppow(static_cast<int>(pm.get_si()) - 1);
    }
    DigitElem s = out.h + tail;
    out.s_inv = s.inv();
    return out;
}

}  // namespace

BGeneralResult construct_b_general(const Eisenstein& E, int L, int N, int digit_order) {
    unsigned long p = E.p;
    BGeneralResult out;
    ConstructionReport& rep = out.report;
    rep.construction = "b-general";
    int nord = digit_order > 0 ? digit_order : default_digit_order(p, L);
    int Nw = budget_general(p, L, N);
    rep.budget = {N, Nw, L, nord, "digit-order"};
    out.ring = make_digit_ring(E, nord, Nw);
    const DigitRingPtr& ring = out.ring;

    DigitElem zero = DigitElem::zero(ring);
    DigitElem one = DigitElem::one(ring);
    DigitElem Eimg = DigitElem::from_poly(ring, E.poly(Nw));
    DigitElem Edimg = DigitElem::from_poly(ring, E.deriv_poly(Nw));

    out.b.c.push_back(DDElem(one, Edimg));  // b_0 = 1 + eps E'(u)
    for (int m = 1; m < L; ++m) {
        GeneralLevelData lv = general_level(ring, E, m, Nw, rep);
        DigitElem bm = lv.s_inv * (lv.t * Eimg - lv.h * Edimg);
        out.b.c.push_back(DDElem(zero, bm));
    }

    // Ghost vectors: w_m(f lambda) = phi^m(E)(u) and
    // w_m(g lambda) = phi^m(E)(u + eps E) = phi^m(E) + eps E * d/du phi^m(E).
    std::vector<DDElem> wf, wg;
    for (int m = 0; m < L; ++m) {
        mpz_class pm = upow(p, static_cast<unsigned long>(m));
        UPoly A = E.poly(Nw).subst_upow(pm.get_ui());
        UPoly Ad = A.derivative() * E.poly(Nw);
        wf.push_back(DDElem(DigitElem::from_poly(ring, A), zero));
        wg.push_back(DDElem(DigitElem::from_poly(ring, A), DigitElem::from_poly(ring, Ad)));
    }
    try {
        out.f_lambda = unghost(wf);
        out.g_lambda = unghost(wg);
    } catch (const InsufficientValuation& e) {
        rep.error = "InsufficientValuation";
        rep.error_locus = std::string("unghosting f/g(lambda): ") + e.locus;
        rep.ok = false;
        return out;
    }
    rep.ghost_checks = verify_ghost_identity<DDElem>(
        {out.g_lambda, out.b, out.f_lambda}, GhostPattern::product, N);
    rep.ok = rep.all_pass();
    return out;
}

CGeneralResult construct_c(const Eisenstein& E, int L, int N, int digit_order) {
    unsigned long p = E.p;
    CGeneralResult out;
    ConstructionReport& rep = out.report;
    rep.construction = "c-general";
    int nord = digit_order > 0 ? digit_order : default_digit_order(p, L);
    int Nw = budget_general(p, L, N);
    rep.budget = {N, Nw, L, nord, "digit-order"};
    out.ring = make_digit_ring(E, nord, Nw);
    const DigitRingPtr& ring = out.ring;

    DigitElem zero = DigitElem::zero(ring);
    DigitElem one = DigitElem::one(ring);
    DigitElem eop = DigitElem::e_over_p(ring);
    DigitElem uimg = DigitElem::u(ring);

    out.c.c.push_back(DDElem(zero, one));  // c_0 = eps
    for (int m = 1; m < L; ++m) {
        GeneralLevelData lv = general_level(ring, E, m, Nw, rep);
        mpz_class pm = upow(p, static_cast<unsigned long>(m));
        DigitElem cm = lv.s_inv * uimg.pow_u(pm - 1) * eop;
        out.c.c.push_back(DDElem(zero, cm));
    }

    std::vector<DDElem> wfu, wgu, wfl;
    for (int m = 0; m < L; ++m) {
        mpz_class pm = upow(p, static_cast<unsigned long>(m));
        UPoly up = UPoly::monomial(p, Nw, static_cast<int>(pm.get_ui()));
        UPoly up1E = UPoly::monomial(p, Nw, static_cast<int>(pm.get_ui()) - 1) * E.poly(Nw);
        UPoly A = E.poly(Nw).subst_upow(pm.get_ui());
        wfu.push_back(DDElem(DigitElem::from_poly(ring, up), zero));
        wgu.push_back(DDElem(DigitElem::from_poly(ring, up),
                             DigitElem::from_poly(ring, up1E).mul_ppow(m)));
        wfl.push_back(DDElem(DigitElem::from_poly(ring, A), zero));
    }
    try {
        out.f_u = unghost(wfu);
        out.g_u = unghost(wgu);
        out.f_lambda = unghost(wfl);
    } catch (const InsufficientValuation& e) {
        rep.error = "InsufficientValuation";
        rep.error_locus = std::string("unghosting f/g(u): ") + e.locus;
        rep.ok = false;
        return out;
    }
    rep.ghost_checks = verify_ghost_identity<DDElem>(
        {out.g_u, out.f_u, out.c, out.f_lambda}, GhostPattern::difference_product, N);
    rep.ok = rep.all_pass();
    return out;
}

BTruncatedResult construct_b_truncated(const Eisenstein& E, int k, int L, int N) {
    unsigned long p = E.p;
    BTruncatedResult out;
    ConstructionReport& rep = out.report;
    rep.construction = "b-truncated";
    int Nw = budget_truncated(p, L, N);
    rep.budget = {N, Nw, L, k, "k"};
    out.ring = make_sring(E, k, Nw);
    const SRingPtr& ring = out.ring;

    SRingElem zero = SRingElem::zero(ring);
    SRingElem one = SRingElem::one(ring);
    SRingElem Eimg = SRingElem::e_image(ring);
    SRingElem Edimg = sring_from_poly(ring, E.deriv_poly(Nw));

    out.b.c.push_back(DSElem(one, Edimg));
    for (int m = 1; m < L; ++m) {
        SRingElem h = compute_h_n(E, m, ring);
        SRingElem t = compute_t_n(E, m, ring);
        ValuationCheck vc;
        vc.symbol = "h_" + std::to_string(m) + " mod (p,u)";
        vc.claimed = 0;
        vc.computed = h.is_unit() ? 0 : 1;
        vc.pass = h.is_unit();
        rep.valuation_checks.push_back(vc);
        SRingElem bm = h.inv() * (t * Eimg - h * Edimg);
        out.b.c.push_back(DSElem(zero, bm));
    }

    std::vector<DSElem> wf, wg;
    for (int m = 0; m < L; ++m) {
        mpz_class pm = upow(p, static_cast<unsigned long>(m));
        UPoly A = E.poly(Nw).subst_upow(pm.get_ui());
        UPoly Ad = A.derivative() * E.poly(Nw);
        wf.push_back(DSElem(sring_from_poly(ring, A), zero));
        wg.push_back(DSElem(sring_from_poly(ring, A), sring_from_poly(ring, Ad)));
    }
    try {
        out.f_lambda = unghost(wf);
        out.g_lambda = unghost(wg);
    } catch (const InsufficientValuation& e) {
        rep.error = "InsufficientValuation";
        rep.error_locus = std::string("unghosting f/g(lambda): ") + e.locus;
        rep.ok = false;
        return out;
    }
    rep.ghost_checks = verify_ghost_identity<DSElem>(
        {out.g_lambda, out.b, out.f_lambda}, GhostPattern::product, N);
    rep.ok = rep.all_pass();
    return out;
}

CTruncatedResult construct_c_truncated(const Eisenstein& E, int k, int L, int N) {
    unsigned long p = E.p;
    CTruncatedResult out;
    ConstructionReport& rep = out.report;
    rep.construction = "c-truncated";
    int Nw = budget_truncated(p, L, N);
    rep.budget = {N, Nw, L, k, "k"};
    out.ring = make_sring(E, k, Nw);
    const SRingPtr& ring = out.ring;

    SRingElem zero = SRingElem::zero(ring);
    SRingElem one = SRingElem::one(ring);

    out.c.c.push_back(DSElem(zero, one));
    for (int m = 1; m < L; ++m) {
        SRingElem h = compute_h_n(E, m, ring);
        mpz_class pm = upow(p, static_cast<unsigned long>(m));
        UPoly P = UPoly::monomial(p, Nw, static_cast<int>(pm.get_ui()) - 1) * E.poly(Nw);
        SRingElem body = sring_from_poly(ring, P);
        try {
            SRingElem cm = h.inv() * body.div_ppow(1);
            out.c.c.push_back(DSElem(zero, cm));
        } catch (const InsufficientValuation& e) {
            rep.error = "InsufficientValuation";
            rep.error_locus = "dividing u^{p^m-1} E by p at m=" + std::to_string(m) +
                              " over S/E^k (e*k <= p-1+e violated): " + e.locus;
            rep.ok = false;
            return out;
        }
    }

    std::vector<DSElem> wfu, wgu, wfl;
    SRingElem uu = SRingElem::u(ring);
    SRingElem Eimg = SRingElem::e_image(ring);
    for (int m = 0; m < L; ++m) {
        mpz_class pm = upow(p, static_cast<unsigned long>(m));
        SRingElem up = uu.pow_u(pm);
        SRingElem eps = (uu.pow_u(pm - 1) * Eimg).mul_ppow(m);
        UPoly A = E.poly(Nw).subst_upow(pm.get_ui());
        wfu.push_back(DSElem(up, zero));
        wgu.push_back(DSElem(up, eps));
        wfl.push_back(DSElem(sring_from_poly(ring, A), zero));
    }
    try {
        out.f_u = unghost(wfu);
        out.g_u = unghost(wgu);
        out.f_lambda = unghost(wfl);
    } catch (const InsufficientValuation& e) {
        rep.error = "InsufficientValuation";
        rep.error_locus = std::string("unghosting f/g(u): ") + e.locus;
        rep.ok = false;
        return out;
    }
    rep.ghost_checks = verify_ghost_identity<DSElem>(
        {out.g_u, out.f_u, out.c, out.f_lambda}, GhostPattern::difference_product, N);
    rep.ok = rep.all_pass();
    return out;
}

VFResult solve_v_f(unsigned long p, int L, int N) {
    if (p < 3) throw BadInput("solve_v_f: p >= 3 required");
    if (L < 2) throw BadInput("solve_v_f: L >= 2 required");
    VFResult out;
    ConstructionReport& rep = out.report;
    rep.construction = "v-f";
    int Nw = budget_vf(p, L, N);
    rep.budget = {N, Nw, L, 0, ""};

    out.x.c.push_back(PAdic(p, Nw, -1));
    out.x.c.push_back(PAdic::p_power(p, Nw, static_cast<int>(p) - 2));
    rep.valuation_checks.push_back(val_check("x_0 (unit)", 0, out.x.c[0]));
    rep.valuation_checks.push_back(
        val_check("x_1", static_cast<int>(p) - 2, out.x.c[1]));

    bool aborted = false;
    for (int n = 2; n < L && !aborted; ++n) {
        mpz_class pn = upow(p, static_cast<unsigned long>(n));
        PAdic acc = PAdic::p_power(p, Nw, static_cast<int>(pn.get_ui()) - 1);
        for (int i = 1; i < n; ++i) {
            mpz_class e = upow(p, static_cast<unsigned long>(n - i));
            acc = acc - out.x.c[i].pow_u(e).mul_ppow(i);
        }
        try {
            PAdic xn = acc.div_ppow(n);
            int a = ipow_small(p, n - 1);
            int claimed = a * static_cast<int>(p - 2) - (a - 1) / static_cast<int>(p - 1);
            rep.valuation_checks.push_back(val_check("x_" + std::to_string(n), claimed, xn));
            out.x.c.push_back(xn);
        } catch (const InsufficientValuation& e) {
            rep.error = "InsufficientValuation";
            rep.error_locus = "solving x_" + std::to_string(n) + ": " + e.locus;
            aborted = true;
        }
    }
    if (aborted) {
        rep.ok = false;
        return out;
    }

    // Ghost identity: w_n(iota(lambda)) = w_n(V(F(x))), with
    // w_0 = 0 and w_n(iota(lambda)) = p^{p^n} - p for n >= 1.
    out.vf = witt_V(witt_F(out.x));
    std::vector<PAdic> wvf = ghost(out.vf);
    for (int m = 0; m < L; ++m) {
        PAdic target(p, Nw);
        if (m >= 1) {
            mpz_class pm = upow(p, static_cast<unsigned long>(m));
            mpz_class t = upow(p, pm.get_ui()) - p;
            target = PAdic(p, Nw, t);
        }
        PAdic res = wvf[m] - target;
        GhostCheck chk;
        chk.level = m;
        if (res.prec() < N) {
            chk.pass = false;
            chk.residual = "precision below check precision";
        } else {
            PAdic rt = res.truncated(N);
            chk.pass = rt.is_zero();
            chk.residual = chk.pass ? "0" : rt.str();
        }
        rep.ghost_checks.push_back(chk);
    }
    rep.ok = rep.all_pass();
    return out;
}

}  // namespace wittsen
