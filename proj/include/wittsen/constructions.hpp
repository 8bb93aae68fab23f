#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wittsen/digit.hpp"
#include "wittsen/dual.hpp"
#include "wittsen/sring.hpp"
#include "wittsen/witt.hpp"

namespace wittsen {

struct GhostCheck {
    int level = 0;
    bool pass = false;
    std::string residual;  // lhs - rhs at the check precision
};

struct ValuationCheck {
    std::string symbol;
    int claimed = 0;
    int computed = 0;
    bool pass = false;
    // True when the claim exceeds the element's precision, so only
    // "residue vanishes at precision" could be certified.
    bool at_precision = false;
};

struct PrecisionBudget {
    int target_N = 0;
    int work_N = 0;
    int L = 0;
    int order = 0;            // n, k or digit order, per construction
    std::string order_name;   // "n", "k", "digit-order"
};

struct ConstructionReport {
    std::string construction;
    bool ok = false;
    std::string error;        // empty unless the construction aborted
    std::string error_locus;
    PrecisionBudget budget;
    std::vector<GhostCheck> ghost_checks;
    std::vector<ValuationCheck> valuation_checks;
    std::vector<std::string> notes;

    bool all_pass() const {
        if (!error.empty()) return false;
        for (const auto& g : ghost_checks)
            if (!g.pass) return false;
        for (const auto& v : valuation_checks)
            if (!v.pass) return false;
        return true;
    }
};

/// Table of the lambda-degree coefficients c_{m,i} = eps * d_{m,i} solved
/// level by level in the unramified construction.  Every stored valuation
/// claim v_p(d_{m,i}) = p^m - i - 1 is machine-checked.
struct BEntry {
    int m = 0;
    int i = 0;
    PAdic d;
    int claimed_val = 0;
    int computed_val = 0;
    bool pass = false;
};

struct BRecursionTable {
    std::vector<BEntry> entries;
};

using DSElem = Dual<SRingElem>;
using DDElem = Dual<DigitElem>;

struct BUnramifiedResult {
    ConstructionReport report;
    SRingPtr ring;  // Z_p[[lambda]]/lambda^n at working precision
    WittVec<DSElem> b;
    WittVec<DSElem> lambda_w;        // f(lambda) as a Witt vector
    WittVec<DSElem> lambda_tilde_w;  // g(lambda) as a Witt vector
    BRecursionTable table;
};

struct BGeneralResult {
    ConstructionReport report;
    DigitRingPtr ring;
    WittVec<DDElem> b;
    WittVec<DDElem> f_lambda;
    WittVec<DDElem> g_lambda;
};

struct CGeneralResult {
    ConstructionReport report;
    DigitRingPtr ring;
    WittVec<DDElem> c;
    WittVec<DDElem> f_u;
    WittVec<DDElem> g_u;
    WittVec<DDElem> f_lambda;
};

struct BTruncatedResult {
    ConstructionReport report;
    SRingPtr ring;  // S/E^k at working precision
    WittVec<DSElem> b;
    WittVec<DSElem> f_lambda;
    WittVec<DSElem> g_lambda;
};

struct CTruncatedResult {
    ConstructionReport report;
    SRingPtr ring;
    WittVec<DSElem> c;
    WittVec<DSElem> f_u;
    WittVec<DSElem> g_u;
    WittVec<DSElem> f_lambda;
};

struct VFResult {
    ConstructionReport report;
    WittVec<PAdic> x;        // the unit x_lambda
    WittVec<PAdic> vf;       // V(F(x))
};

/// Budgets: working precision per construction, computed (not hard-coded)
/// from the target precision and the divisions the recursion performs.
int budget_b_unramified(unsigned long p, int L, int N);
int budget_general(unsigned long p, int L, int N);
int budget_truncated(unsigned long p, int L, int N);
int budget_vf(unsigned long p, int L, int N);
int default_digit_order(unsigned long p, int L);

/**
 * Construction of the unit b over Z_p[[lambda]]/lambda^n [eps]/eps^2 with
 * lambda = u - p, solving the ghost identities
 *   w_m(g(lambda)) = w_m(b) * w_m(f(lambda)),  m < L,
 * coefficientwise in powers of lambda.  b_0 = 1 + eps; for m >= 1 the
 * lambda-degree-i coefficient eps*d_{m,i} of b_m satisfies
 *   (p^{p^m} - p) p^m d_{m,i} = i W_i - p^m sum_{j=1}^{i-1} W_j d_{m,i-j},
 * with W_j = binom(p^m, j) p^{p^m - j}, and v_p(d_{m,i}) = p^m - i - 1.
 * Requires n <= p; for n = p + 1 the solve at (m = 1, i = p) fails with
 * InsufficientValuation, which is reported, never masked.
 */
BUnramifiedResult construct_b_unramified(unsigned long p, int n, int L, int N);

/**
 * Construction of b over S[[E/p]]/((E/p)^order, p^N)[eps]/eps^2:
 * b_0 = 1 + eps E'(u) and, for m >= 1,
 *   b_m = eps (h_m + E^{p^m}/p)^{-1} (t_m E - h_m E').
 * Verifies w_m(g(lambda)) = w_m(b) w_m(f(lambda)) for m < L, where g lifts
 * u -> u + eps E(u) and f the inclusion.  digit_order <= 0 picks the
 * default p^{L-1} + 1.
 */
BGeneralResult construct_b_general(const Eisenstein& E, int L, int N, int digit_order = 0);

/// c over the same ring: c_0 = eps, c_m = eps (h_m + E^{p^m}/p)^{-1}
/// u^{p^m - 1} (E/p); verifies w_m(g(u)) - w_m(f(u)) = w_m(c) w_m(f(lambda)).
CGeneralResult construct_c(const Eisenstein& E, int L, int N, int digit_order = 0);

/// Variant of b over the truncation S/E^k (valid for k <= p), with
/// b_m = eps h_m^{-1} (t_m E - h_m E').
BTruncatedResult construct_b_truncated(const Eisenstein& E, int k, int L, int N);

/// Variant of c over S/E^k (valid for e*k <= p - 1 + e), with
/// c_m = eps h_m^{-1} (u^{p^m-1} E)/p; the division by p is performed on the
/// reduced representative and fails loudly outside the valid range.
CTruncatedResult construct_c_truncated(const Eisenstein& E, int k, int L, int N);

/**
 * Solves iota(lambda) = V(F(x)) over W(Z/p^N) for p >= 3: x_0 = -1,
 * x_1 = p^{p-2}, and for n >= 2 the level-n ghost equation
 *   p^{p^n - 1} = sum_{i=1}^{n} x_i^{p^{n-i}} p^i
 * determines x_n with v_p(x_n) = p^{n-1}(p-2) - (p^{n-1}-1)/(p-1).
 */
VFResult solve_v_f(unsigned long p, int L, int N);

enum class GhostPattern { product, difference_product };

/// Shared ghost-identity verifier.  product: ghost(v[0]) = ghost(v[1]) *
/// ghost(v[2]).  difference_product: ghost(v[0]) - ghost(v[1]) =
/// ghost(v[2]) * ghost(v[3]).  Checks every level at precision check_N and
/// reports the first failing component's residual.
template <class R>
std::vector<GhostCheck> verify_ghost_identity(const std::vector<WittVec<R>>& v,
                                              GhostPattern pat, int check_N) {
    if (pat == GhostPattern::product && v.size() != 3)
        throw BadInput("verify_ghost_identity: product takes 3 vectors");
    if (pat == GhostPattern::difference_product && v.size() != 4)
        throw BadInput("verify_ghost_identity: difference_product takes 4 vectors");
    int L = v[0].length();
    for (const auto& w : v)
        if (w.length() != L) throw RingMismatch("verify_ghost_identity: lengths differ");
    std::vector<std::vector<R>> gs;
    gs.reserve(v.size());
    for (const auto& w : v) gs.push_back(ghost(w));
    std::vector<GhostCheck> out;
    for (int m = 0; m < L; ++m) {
        R lhs = (pat == GhostPattern::product) ? gs[0][m] : gs[0][m] - gs[1][m];
        R rhs = (pat == GhostPattern::product) ? gs[1][m] * gs[2][m] : gs[2][m] * gs[3][m];
        R res = lhs - rhs;
        GhostCheck chk;
        chk.level = m;
        if (res.prec() < check_N) {
            chk.pass = false;
            chk.residual = "precision " + std::to_string(res.prec()) +
                           " below check precision " + std::to_string(check_N);
        } else {
            R rt = res.truncated(check_N);
            chk.pass = rt.is_zero();
            chk.residual = chk.pass ? "0" : rt.str();
        }
        out.push_back(chk);
    }
    return out;
}

/// Adds p^{Ntarget-1} to component i; used by the fault-injection tests.
template <class R>
WittVec<R> perturb_component(const WittVec<R>& x, int i, int Ntarget) {
    WittVec<R> y = x;
    y.c.at(i) = y.c.at(i) + y.c.at(i).one_like().mul_ppow(Ntarget - 1);
    return y;
}

}  // namespace wittsen
