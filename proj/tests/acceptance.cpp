// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails.  Every tolerance and parameter is pinned here, in code.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "wittsen/constructions.hpp"
#include "wittsen/delta_poly.hpp"
#include "wittsen/lattice.hpp"
#include "wittsen/sen.hpp"
#include "wittsen/witt_universal.hpp"

using namespace wittsen;

namespace {

int g_failures = 0;

struct Criterion {
    const char* name;
    double limit_s;
    std::chrono::steady_clock::time_point start;
    bool ok = true;
    std::string detail;

    Criterion(const char* n, double lim) : name(n), limit_s(lim) {
        start = std::chrono::steady_clock::now();
    }
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.empty()) detail = what;
        }
    }
    void finish() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        if (secs > limit_s) {
            ok = false;
            if (detail.empty())
                detail = "runtime " + std::to_string(secs) + "s over the limit";
        }
        std::printf("%s %-58s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", name, secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++g_failures;
    }
};

mpz_class pow_z(unsigned long b, int e) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), b, static_cast<unsigned long>(e));
    return m;
}

void criterion1() {
    Criterion c("1. b over Z_p[[lambda]]: ghost identities + d-valuations", 5.0);
    for (unsigned long p : {3ul, 5ul}) {
        auto r = construct_b_unramified(p, static_cast<int>(p), 3, 12);
        c.expect(r.report.error.empty(), "construction aborted at p=" + std::to_string(p));
        c.expect(r.report.ok, "report not ok at p=" + std::to_string(p));
        for (const auto& g : r.report.ghost_checks)
            c.expect(g.pass, "ghost identity failed at level " + std::to_string(g.level));
        int checked = 0;
        for (const auto& e : r.table.entries) {
            c.expect(e.pass && e.computed_val == e.claimed_val,
                     "d_{" + std::to_string(e.m) + "," + std::to_string(e.i) + "} valuation");
            ++checked;
        }
        c.expect(checked == 2 * (static_cast<int>(p) - 1),
                 "expected a full recursion table");
    }
    c.finish();
}

void criterion2() {
    Criterion c("2. boundary sharpness: n = p+1 fails at (m=1, i=p)", 1.0);
    auto r = construct_b_unramified(3, 4, 2, 10);
    c.expect(!r.report.ok, "construction unexpectedly succeeded");
    c.expect(r.report.error == "InsufficientValuation", "wrong error kind");
    c.expect(r.report.error_locus.find("m=1") != std::string::npos, "wrong level");
    c.expect(r.report.error_locus.find("i=3") != std::string::npos, "wrong degree");
    c.finish();
}

void criterion3() {
    Criterion c("3. b and c over S[[E/p]] for E = u-3 and u^2-3", 30.0);
    for (auto E : {Eisenstein::unramified(3),
                   Eisenstein(3, {mpz_class(-3), mpz_class(0), mpz_class(1)})}) {
        auto rb = construct_b_general(E, 3, 12);
        c.expect(rb.report.ok, "b construction failed for " + E.str());
        c.expect(rb.b.c[0].a.same_value(DigitElem::one(rb.ring)), "b_0 base part");
        c.expect(rb.b.c[0].b.same_value(DigitElem::from_poly(rb.ring, E.deriv_poly(12))),
                 "b_0 = 1 + eps E'");
        auto rc = construct_c(E, 3, 12);
        c.expect(rc.report.ok, "c construction failed for " + E.str());
        c.expect(rc.c.c[0].a.is_zero() &&
                     rc.c.c[0].b.same_value(DigitElem::one(rc.ring)),
                 "c_0 = eps");
        // h_n unit and p^n | h_n' for n <= 2
        for (int nn = 1; nn <= 2; ++nn) {
            UPoly h = compute_h_poly(E, nn, 12);
            c.expect(int_val(h.coeff(0), 3, 1) == 0, "h_n not a unit");
            UPoly hd = compute_h_poly(E, nn, 12 + nn).derivative();
            bool divisible = true;
            mpz_class pn = pow_z(3, nn);
            for (int i = 0; i <= hd.degree(); ++i)
                if (!mpz_divisible_p(hd.coeff(i).get_mpz_t(), pn.get_mpz_t()))
                    divisible = false;
            c.expect(divisible, "p^n does not divide h_n'");
        }
    }
    c.finish();
}

void criterion4() {
    Criterion c("4. x with iota(lambda) = V(F(x)): values and valuations", 10.0);
    for (unsigned long p : {3ul, 5ul}) {
        auto r = solve_v_f(p, 4, 30);
        c.expect(r.report.ok, "solve failed at p=" + std::to_string(p));
        mpz_class mod = pow_z(p, r.x.c[0].prec());
        c.expect(r.x.c[0].residue() == mod - 1, "x_0 != -1");
        mpz_class want = pow_z(p, static_cast<int>(p) - 2);
        c.expect(r.x.c[1].residue() == want, "x_1 != p^{p-2}");
        c.expect(r.x.c[0].val() == 0, "x_0 not a unit");
        for (int nn = 1; nn <= 3; ++nn) {
            int a = static_cast<int>(pow_z(p, nn - 1).get_si());
            int claimed = a * static_cast<int>(p - 2) - (a - 1) / static_cast<int>(p - 1);
            if (claimed < r.x.c[nn].prec()) {
                c.expect(r.x.c[nn].val() == claimed,
                         "v(x_" + std::to_string(nn) + ") wrong at p=" + std::to_string(p));
            } else {
                c.expect(r.x.c[nn].is_zero(), "x_n should vanish at this precision");
            }
        }
        for (const auto& g : r.report.ghost_checks) c.expect(g.pass, "ghost identity");
    }
    c.finish();
}

void criterion5() {
    Criterion c("5. Sen-side checks: twists, certificates, cohomology, lattices", 10.0);
    SenRing unram3(Eisenstein::unramified(3), 3, 8);
    SenRing ram2(Eisenstein(3, {mpz_class(-3), mpz_class(0), mpz_class(1)}), 2, 8);
    for (int k : {0, 1, 2, 3}) {
        SenModule M = make_twist(unram3, k, TwistVariant::ideal_power);
        c.expect(check_leibniz(M, 16, 7).pass, "Leibniz, unramified twist");
        c.expect(check_nilpotence(M).nilpotent, "nilpotence, unramified twist");
        SenModule G = make_twist(ram2, k, TwistVariant::ideal_over_p_power);
        c.expect(check_leibniz(G, 16, 7).pass, "Leibniz, general twist");
        c.expect(check_nilpotence(G).nilpotent, "nilpotence, general twist");
    }
    {
        SenRing Q(Eisenstein(3, {mpz_class(-3), mpz_class(0), mpz_class(1)}), 1, 8);
        SenModule M(Q, 1);
        M.theta[0][0] = SRingElem::one(Q.ring);
        auto rep = check_nilpotence(M);
        c.expect(!rep.nilpotent, "u^2-3 with Theta = 1 must fail");
        c.expect(!rep.certificate.empty(), "missing certificate");
    }
    for (int nn = 1; nn <= 3; ++nn) {
        SenRing R(Eisenstein::unramified(3), nn, 8);
        auto rep = sen_cohomology(make_twist(R, 0, TwistVariant::ideal_power));
        c.expect(rep.H0.size() == 1 && rep.H0[0] == 8, "H0 of the structure sheaf");
        c.expect(rep.H1.size() == 1 && rep.H1[0] == 8, "H1 of the structure sheaf");
    }
    // ten randomized rank <= 3 gauge-transformed inputs, certified stable
    std::mt19937_64 rng(0xACCE55ul);
    for (int trial = 0; trial < 10; ++trial) {
        int nn = 1 + static_cast<int>(rng() % 2);
        int rank = 1 + static_cast<int>(rng() % 3);
        SenRing R(Eisenstein::unramified(3), nn, 26);
        std::vector<std::vector<SRingElem>> theta0(
            rank, std::vector<SRingElem>(rank, SRingElem::zero(R.ring)));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                theta0[i][j] = SRingElem::from_int(R.ring, static_cast<long>(rng() % 9));
        std::vector<int> s(rank);
        for (auto& x : s) x = static_cast<int>(rng() % 3);
        std::vector<std::vector<SRingElem>> V(rank,
            std::vector<SRingElem>(rank, SRingElem::zero(R.ring)));
        for (int i = 0; i < rank; ++i) {
            V[i][i] = SRingElem::one(R.ring).mul_ppow(s[i]);
            for (int j = 0; j < i; ++j)
                V[i][j] = SRingElem::from_int(R.ring, static_cast<long>(rng() % 5))
                              .mul_ppow(s[j]);
        }
        std::vector<std::vector<SRingElem>> L(rank,
            std::vector<SRingElem>(rank, SRingElem::zero(R.ring)));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j <= i; ++j) L[i][j] = V[i][j].div_ppow(s[j]);
        std::vector<std::vector<SRingElem>> Linv(rank,
            std::vector<SRingElem>(rank, SRingElem::zero(R.ring)));
        for (int i = 0; i < rank; ++i) Linv[i][i] = SRingElem::one(R.ring);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < i; ++j) {
                SRingElem acc = SRingElem::zero(R.ring);
                for (int kk = j; kk < i; ++kk) acc = acc + L[i][kk] * Linv[kk][j];
                Linv[i][j] = -acc;
            }
        int smax = 0;
        for (int x : s) smax = std::max(smax, x);
        RationalTheta t;
        t.denom_exp = smax;
        t.num.assign(rank, std::vector<SRingElem>(rank, SRingElem::zero(R.ring)));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                SRingElem acc = theta_ring(R, V[i][j]);
                for (int kk = 0; kk < rank; ++kk) acc = acc + theta0[i][kk] * V[kk][j];
                SRingElem row = SRingElem::zero(R.ring);
                (void)row;
                t.num[i][j] = acc;
            }
        // apply L^{-1} and the diag(p^{-s_i}) scaling
        std::vector<std::vector<SRingElem>> num2(rank,
            std::vector<SRingElem>(rank, SRingElem::zero(R.ring)));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                SRingElem acc = SRingElem::zero(R.ring);
                for (int kk = 0; kk < rank; ++kk) acc = acc + Linv[i][kk] * t.num[kk][j];
                num2[i][j] = acc.mul_ppow(smax - s[i]);
            }
        t.num = num2;
        auto res = construct_stable_lattice(R, rank, t);
        c.expect(res.certified, "lattice not certified at trial " + std::to_string(trial));
        c.expect(res.min_theta_val >= 0, "Theta-matrix valuation < 0");
    }
    c.finish();
}

void criterion6() {
    Criterion c("6. delta-symbolic: eta closed form and envelope Sen action", 60.0);
    auto ring = make_delta_ring(Eisenstein::unramified(3), 10, 4);
    auto rep = verify_eta_on_delta_powers(ring, 3);
    c.expect(rep.ok, "eta(delta^i t) closed formula");
    auto ring2 = make_delta_ring(Eisenstein(3, {mpz_class(-3), mpz_class(0), mpz_class(1)}),
                                 10, 4);
    auto rep2 = verify_eta_on_delta_powers(ring2, 3);
    c.expect(rep2.ok, "eta(delta^i t) closed formula, ramified E");
    auto rep3 = theta_on_envelope_generators(3, 10, 3, 5, 4);
    c.expect(rep3.ok, "Theta on envelope generators / lambda^k");
    c.finish();
}

void criterion7() {
    Criterion c("7. Witt kernel oracle: 200 seeded pairs, p = 3, L <= 4", 30.0);
    std::mt19937_64 rng(0x04ac1eul);
    int N = 9;
    auto rnd = [&](int len) {
        WittVec<PAdic> x;
        for (int i = 0; i < len; ++i) {
            mpz_class acc = 0;
            for (int k = 0; k < N; ++k) acc = acc * 3 + static_cast<unsigned long>(rng() % 3);
            x.c.push_back(PAdic(3, N, acc));
        }
        return x;
    };
    for (int t = 0; t < 200; ++t) {
        int L = 2 + static_cast<int>(t % 3);  // lengths 2, 3, 4
        auto x = rnd(L), y = rnd(L);
        auto um = witt_universal_mul(x, y);
        auto gm = witt_mul(x, y);
        for (int i = 0; i < L; ++i)
            c.expect(um.c[i].same_value(gm.c[i]), "backend mismatch (mul)");
        auto fv = witt_F(witt_V(x));
        auto px = witt_scale(3, x);
        for (int i = 0; i < L; ++i) c.expect(fv.c[i].same_value(px.c[i]), "FV = p");
        auto xs = rnd(L - 1);
        auto lhs = witt_mul(witt_V(xs), y);
        auto rhs = witt_V(witt_mul(xs, witt_F(y)));
        for (int i = 0; i < L; ++i)
            c.expect(lhs.c[i].same_value(rhs.c[i]), "V(x)y = V(x F(y))");
        if (L >= 3) {
            auto dxy = witt_delta(witt_mul(x, y));
            auto xp = witt_pow(x, 3), yp = witt_pow(y, 3);
            xp.c.pop_back();
            yp.c.pop_back();
            auto dx = witt_delta(x), dy = witt_delta(y);
            auto drhs = witt_add(witt_add(witt_mul(xp, dy), witt_mul(yp, dx)),
                                 witt_scale(3, witt_mul(dx, dy)));
            for (int i = 0; i + 1 < L; ++i)
                c.expect(dxy.c[i].same_value(drhs.c[i]), "delta Leibniz");
        }
    }
    c.finish();
}

void criterion8() {
    Criterion c("8. fault injection: p^{N-1} perturbations detected per level", 5.0);
    int N = 10;
    int check_N = N + 4;
    {
        auto r = construct_b_unramified(3, 3, 3, N);
        for (int i = 0; i < 3; ++i) {
            auto bad = perturb_component(r.b, i, N);
            auto checks = verify_ghost_identity<DSElem>(
                {r.lambda_tilde_w, bad, r.lambda_w}, GhostPattern::product, check_N);
            for (int m = 0; m < i; ++m)
                c.expect(checks[m].pass, "b: spurious failure below the perturbed level");
            c.expect(!checks[i].pass, "b: undetected perturbation at level " +
                                          std::to_string(i));
        }
    }
    {
        auto r = construct_b_general(Eisenstein(3, {mpz_class(-3), mpz_class(0), mpz_class(1)}),
                                     3, N);
        for (int i = 0; i < 3; ++i) {
            auto bad = perturb_component(r.b, i, N);
            auto checks = verify_ghost_identity<DDElem>(
                {r.g_lambda, bad, r.f_lambda}, GhostPattern::product, check_N);
            for (int m = 0; m < i; ++m)
                c.expect(checks[m].pass, "b general: spurious failure");
            c.expect(!checks[i].pass, "b general: undetected perturbation");
        }
    }
    {
        auto r = construct_c(Eisenstein::unramified(3), 3, N);
        for (int i = 0; i < 3; ++i) {
            auto bad = perturb_component(r.c, i, N);
            auto checks = verify_ghost_identity<DDElem>(
                {r.g_u, r.f_u, bad, r.f_lambda}, GhostPattern::difference_product, check_N);
            for (int m = 0; m < i; ++m) c.expect(checks[m].pass, "c: spurious failure");
            c.expect(!checks[i].pass, "c: undetected perturbation");
        }
    }
    {
        auto r = solve_v_f(3, 4, N);
        for (int i = 1; i < 4; ++i) {
            auto bad = perturb_component(r.x, i, N);
            auto wvf = ghost(witt_V(witt_F(bad)));
            for (int m = 0; m < 4; ++m) {
                mpz_class target = 0;
                if (m >= 1) {
                    mpz_class pm = pow_z(3, m);
                    mpz_ui_pow_ui(target.get_mpz_t(), 3, pm.get_ui());
                    target -= 3;
                }
                PAdic tgt(3, wvf[m].prec(), target);
                int pr = std::min(check_N + 1, wvf[m].prec());
                bool pass = (wvf[m] - tgt).truncated(pr).is_zero();
                if (m < i) c.expect(pass, "x: spurious failure below the level");
                if (m == i) c.expect(!pass, "x: undetected perturbation");
            }
        }
    }
    c.finish();
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
