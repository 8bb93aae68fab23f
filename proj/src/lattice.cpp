#include "wittsen/lattice.hpp"

#include <algorithm>

namespace wittsen {

namespace {

using PMat = std::vector<std::vector<PAdic>>;

// p^{-g} * num, num a PAdic matrix whose entries carry their own precision.
struct RatMat {
    PMat num;
    int g = 0;
    int rows() const { return static_cast<int>(num.size()); }
    int cols() const { return num.empty() ? 0 : static_cast<int>(num[0].size()); }
};

// p^{-s} * v with s in Z (s may go negative during solves).
struct RatP {
    PAdic v;
    int s = 0;
    int net_val() const { return v.val() - s; }
    bool integral() const { return net_val() >= 0; }
};

RatP rp_mul(const RatP& a, const RatP& b) { return {a.v * b.v, a.s + b.s}; }

RatP rp_sub(const RatP& a, const RatP& b) {
    int s = std::max(a.s, b.s);
    PAdic av = a.v.mul_ppow(s - a.s);
    PAdic bv = b.v.mul_ppow(s - b.s);
    return {av - bv, s};
}

RatP rp_div_ppow(const RatP& a, int k) {
    if (a.v.is_zero()) return {a.v, a.s + k};  // zero at precision: keep the bound
    if (a.v.val() >= k) return {a.v.div_ppow(k), a.s};
    int vv = a.v.val();
    return {vv > 0 ? a.v.div_ppow(vv) : a.v, a.s + k - vv};
}

PMat pmat_from_zmat(const ZMat& Z) {
    PMat out(Z.rows, std::vector<PAdic>(Z.cols, PAdic(Z.p, Z.N)));
    for (int i = 0; i < Z.rows; ++i)
        for (int j = 0; j < Z.cols; ++j) out[i][j] = PAdic(Z.p, Z.N, Z.at(i, j));
    return out;
}

PMat pmat_mul(const PMat& A, const PMat& B) {
    int n = static_cast<int>(A.size());
    int k = static_cast<int>(B.size());
    int m = static_cast<int>(B[0].size());
    PMat out(n, std::vector<PAdic>(m, A[0][0].zero_like()));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (A[i][t].is_zero()) continue;
            for (int j = 0; j < m; ++j) out[i][j] = out[i][j] + A[i][t] * B[t][j];
        }
    return out;
}

RatMat rat_mul(const RatMat& A, const RatMat& B) {
    return {pmat_mul(A.num, B.num), A.g + B.g};
}

RatMat rat_sub_block(const RatMat& A, int r0, int r1, int c0, int c1) {
    RatMat out;
    out.g = A.g;
    for (int i = r0; i < r1; ++i)
        out.num.emplace_back(A.num[i].begin() + c0, A.num[i].begin() + c1);
    return out;
}

// Align two RatMats to a common denominator and concatenate columns.
RatMat rat_concat(const RatMat& A, const RatMat& B) {
    int g = std::max(A.g, B.g);
    RatMat out;
    out.g = g;
    out.num.resize(A.rows());
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) out.num[i].push_back(A.num[i][j].mul_ppow(g - A.g));
        for (int j = 0; j < B.cols(); ++j) out.num[i].push_back(B.num[i][j].mul_ppow(g - B.g));
    }
    return out;
}

// Column-style Hermite reduction to a square lower-triangular generator
// matrix with diagonal exactly p^{a_t}; preserves the column span.
RatMat hnf_cols(RatMat A) {
    int d = A.rows();
    int c = A.cols();
    if (c < d) throw BadInput("hnf_cols: not enough columns");
    for (int t = 0; t < d; ++t) {
        int bj = -1, bv = 1 << 28;
        for (int j = t; j < c; ++j) {
            const PAdic& x = A.num[t][j];
            if (x.is_zero()) continue;
            if (x.val() < bv) { bv = x.val(); bj = j; }
        }
        if (bj < 0) throw UnboundedLattice("hnf_cols: rank deficiency at row " + std::to_string(t));
        for (int i = 0; i < d; ++i) std::swap(A.num[i][t], A.num[i][bj]);
        PAdic piv = A.num[t][t];
        PAdic uinv = piv.div_ppow(bv).inv();
        for (int i = 0; i < d; ++i) A.num[i][t] = A.num[i][t] * uinv;
        for (int j = t + 1; j < c; ++j) {
            const PAdic& x = A.num[t][j];
            if (x.is_zero()) continue;
            PAdic q = x.div_ppow(bv);
            for (int i = 0; i < d; ++i)
                A.num[i][j] = A.num[i][j] - q * A.num[i][t];
        }
    }
    RatMat out;
    out.g = A.g;
    out.num.resize(d);
    for (int i = 0; i < d; ++i)
        out.num[i].assign(A.num[i].begin(), A.num[i].begin() + d);
    return out;
}

// Solve L W = X with L lower-triangular (diagonal p^{a_i} up to units from
// hnf_cols, exactly p^{a_i}); returns the RatP entries of W = L^{-1} X.
std::vector<std::vector<RatP>> tri_solve(const RatMat& L, const RatMat& X) {
    int d = L.rows();
    int m = X.cols();
    std::vector<std::vector<RatP>> W(d, std::vector<RatP>(m));
    for (int col = 0; col < m; ++col) {
        for (int i = 0; i < d; ++i) {
            RatP r{X.num[i][col], X.g};
            for (int j = 0; j < i; ++j)
                r = rp_sub(r, rp_mul({L.num[i][j], L.g}, W[j][col]));
            // divide by the diagonal p^{a_i} (relative to denominator L.g)
            int a = L.num[i][i].val();
            RatP w = rp_div_ppow(r, a);
            w.s -= L.g;
            W[i][col] = w;
        }
    }
    return W;
}

int min_net_val(const std::vector<std::vector<RatP>>& W) {
    int best = 1 << 28;
    for (const auto& row : W)
        for (const auto& x : row) best = std::min(best, x.net_val());
    return best;
}

// Closure of the standard lattice under an operator block: iterate
// L <- hnf(L | T L) until T L is contained in L, with an iteration cap.
RatMat krylov_closure(const RatMat& T, unsigned long p, int Nw, int cap, int layer) {
    int d = T.rows();
    RatMat L;
    L.g = 0;
    L.num.assign(d, std::vector<PAdic>(d, PAdic(p, Nw)));
    for (int i = 0; i < d; ++i) L.num[i][i] = PAdic(p, Nw, 1);
    for (int it = 0; it <= cap; ++it) {
        RatMat X = rat_mul(T, L);
        auto W = tri_solve(L, X);
        if (min_net_val(W) >= 0) return L;
        L = hnf_cols(rat_concat(L, X));
    }
    throw UnboundedLattice("layer " + std::to_string(layer) +
                           " closure did not stabilize; denominators keep growing");
}

ZMat zmat_sub(const ZMat& A, const ZMat& B) {
    ZMat out = A;
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= B.a[i];
    out.reduce();
    return out;
}

}  // namespace

StableLatticeResult construct_stable_lattice(const SenRing& R, int rank,
                                             const RationalTheta& theta, int iter_cap) {
    if (rank < 1) throw NonFreeModule("construct_stable_lattice: rank must be >= 1");
    if (static_cast<int>(theta.num.size()) != rank) throw BadInput("theta size");
    unsigned long p = R.E.p;
    int Nw = R.N;
    int n = R.n;
    int re = rank * R.E.e;
    int D = re * n;
    int s = theta.denom_exp;
    if (s < 0) throw BadInput("denominator exponent must be >= 0");

    StableLatticeResult out;
    out.dim = D;

    // Flatten: T = p^{-s} * (module part) + (scalar derivation part).
    SenModule Mnum(R, rank);
    Mnum.theta = theta.num;
    SenModule Mzero(R, rank);
    ZMat Fnum = flatten_theta(Mnum);
    ZMat Fder = flatten_theta(Mzero);
    ZMat Fmod = zmat_sub(Fnum, Fder);
    RatMat T;
    T.g = s;
    T.num = pmat_from_zmat(Fmod);
    {
        PMat der = pmat_from_zmat(Fder);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) T.num[i][j] = T.num[i][j] + der[i][j].mul_ppow(s);
    }
    RatMat U;
    U.g = 0;
    U.num = pmat_from_zmat(flatten_mult(R, SRingElem::u(R.ring), rank));

    int cap = iter_cap > 0 ? iter_cap : re + 4;

    // Close each E-degree layer under its induced operator; the layer
    // operators are O_K-linear, so the closures stay stable under u.
    std::vector<RatMat> layers;
    for (int j = 0; j < n; ++j) {
        RatMat Tjj = rat_sub_block(T, j * re, (j + 1) * re, j * re, (j + 1) * re);
        layers.push_back(krylov_closure(Tjj, p, Nw, cap, j));
    }

    // Absorb cross-layer denominators into the deeper layers: layer j is
    // rescaled by p^{g_j} with g_j <= g_k + minval(L_j^{-1} M_{jk} L_k).
    std::vector<int> g(n, 0);
    for (int j = 1; j < n; ++j) {
        int bound = 0;
        for (int k = 0; k < j; ++k) {
            for (const RatMat* M : {&T, &U}) {
                RatMat Mjk = rat_sub_block(*M, j * re, (j + 1) * re, k * re, (k + 1) * re);
                RatMat X = rat_mul(Mjk, layers[k]);
                auto W = tri_solve(layers[j], X);
                bound = std::min(bound, g[k] + min_net_val(W));
            }
        }
        g[j] = std::min(0, bound);
    }
    out.block_scalings = g;

    // Assemble C = blockdiag(p^{g_j} L_j) over a common denominator.
    int gC = 0;
    for (int j = 0; j < n; ++j) gC = std::max(gC, layers[j].g - g[j]);
    RatMat C;
    C.g = gC;
    C.num.assign(D, std::vector<PAdic>(D, PAdic(p, Nw)));
    for (int j = 0; j < n; ++j) {
        int lift = gC - (layers[j].g - g[j]);
        for (int i = 0; i < re; ++i)
            for (int k = 0; k < re; ++k)
                C.num[j * re + i][j * re + k] = layers[j].num[i][k].mul_ppow(lift);
    }
    out.basis = C.num;
    out.basis_denom_exp = C.g;

    // Certify by exact arithmetic: C^{-1} T C and C^{-1} U C must be
    // integral.  C is block diagonal, so solve layer by layer.
    auto conjugate = [&](const RatMat& M, int& minval, bool& ok) -> PMat {
        RatMat MC = rat_mul(M, C);
        PMat out_m(D, std::vector<PAdic>(D, PAdic(p, Nw)));
        minval = 1 << 28;
        ok = true;
        for (int j = 0; j < n; ++j) {
            RatMat block = rat_sub_block(MC, j * re, (j + 1) * re, 0, D);
            RatMat Lj = layers[j];
            // account for the p^{g_j} rescaling of layer j
            auto W = tri_solve(Lj, block);
            for (int i = 0; i < re; ++i)
                for (int c2 = 0; c2 < D; ++c2) {
                    RatP w = W[i][c2];
                    w.s += g[j];  // the layer was rescaled by p^{g_j}
                    minval = std::min(minval, w.net_val());
                    if (!w.integral()) {
                        ok = false;
                        out_m[j * re + i][c2] = w.v;  // numerator kept for diagnosis
                    } else if (w.s < 0) {
                        out_m[j * re + i][c2] = w.v.mul_ppow(-w.s);
                    } else if (w.v.is_zero()) {
                        out_m[j * re + i][c2] =
                            w.v.truncated(std::max(1, w.v.prec() - w.s));
                    } else {
                        out_m[j * re + i][c2] = w.v.div_ppow(w.s);
                    }
                }
        }
        return out_m;
    };

    bool okT = false, okU = false;
    int mvT = 0, mvU = 0;
    out.theta_on_lattice = conjugate(T, mvT, okT);
    out.umul_on_lattice = conjugate(U, mvU, okU);
    out.min_theta_val = mvT;
    out.certified = okT && okU;
    int minprec = Nw;
    for (const auto& row : out.theta_on_lattice)
        for (const auto& x : row) minprec = std::min(minprec, x.prec());
    out.check_prec = minprec;
    if (!okT) out.notes.push_back("Theta image escapes the lattice (min net val " +
                                  std::to_string(mvT) + ")");
    if (!okU) out.notes.push_back("u-multiplication escapes the lattice");
    return out;
}

}  // namespace wittsen
