#include "wittsen/smith.hpp"

#include <algorithm>

#include "wittsen/padic.hpp"

namespace wittsen {

ZMat::ZMat(unsigned long p_, int N_, int r, int c) : p(p_), N(N_), rows(r), cols(c) {
    a.assign(static_cast<size_t>(r) * c, mpz_class(0));
}

ZMat ZMat::identity(unsigned long p, int N, int n) {
    ZMat m(p, N, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

mpz_class ZMat::modulus() const {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(N));
    return m;
}

void ZMat::reduce() {
    mpz_class mod = modulus();
    for (auto& x : a) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
}

ZMat ZMat::mul(const ZMat& o) const {
    if (cols != o.rows || p != o.p || N != o.N) throw RingMismatch("ZMat::mul");
    ZMat out(p, N, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
        }
    out.reduce();
    return out;
}

bool ZMat::equal(const ZMat& o) const {
    if (rows != o.rows || cols != o.cols || p != o.p || N != o.N) return false;
    return a == o.a;
}

int zmat_entry_val(const ZMat& A, int i, int j) { return int_val(A.at(i, j), A.p, A.N); }

bool zmat_is_unimodular(const ZMat& A) {
    if (A.rows != A.cols) return false;
    // Gaussian elimination mod p
    int n = A.rows;
    std::vector<std::vector<long>> m(n, std::vector<long>(n));
    long p = static_cast<long>(A.p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpz_class r = A.at(i, j) % A.p;
            m[i][j] = r.get_si();
        }
    for (int t = 0; t < n; ++t) {
        int piv = -1;
        for (int i = t; i < n; ++i)
            if (m[i][t] % p != 0) { piv = i; break; }
        if (piv < 0) return false;
        std::swap(m[t], m[piv]);
        // normalize and eliminate
        long inv = 1;
        for (long x = 1; x < p; ++x)
            if ((x * m[t][t]) % p == 1) { inv = x; break; }
        for (int j = t; j < n; ++j) m[t][j] = (m[t][j] * inv) % p;
        for (int i = t + 1; i < n; ++i) {
            long f = m[i][t] % p;
            if (!f) continue;
            for (int j = t; j < n; ++j) m[i][j] = ((m[i][j] - f * m[t][j]) % p + p) % p;
        }
    }
    return true;
}

SmithResult smith_normal_form(const ZMat& A) {
    SmithResult out;
    ZMat D = A;
    D.reduce();
    int n = std::min(D.rows, D.cols);
    ZMat U = ZMat::identity(A.p, A.N, A.rows);
    ZMat V = ZMat::identity(A.p, A.N, A.cols);
    mpz_class mod = A.modulus();

    auto row_scale = [&](ZMat& M, int i, const mpz_class& s) {
        for (int j = 0; j < M.cols; ++j) {
            M.at(i, j) *= s;
            mpz_mod(M.at(i, j).get_mpz_t(), M.at(i, j).get_mpz_t(), mod.get_mpz_t());
        }
    };
    auto row_axpy = [&](ZMat& M, int dst, int src, const mpz_class& s) {
        for (int j = 0; j < M.cols; ++j) {
            M.at(dst, j) += s * M.at(src, j);
            mpz_mod(M.at(dst, j).get_mpz_t(), M.at(dst, j).get_mpz_t(), mod.get_mpz_t());
        }
    };
    auto col_axpy = [&](ZMat& M, int dst, int src, const mpz_class& s) {
        for (int i = 0; i < M.rows; ++i) {
            M.at(i, dst) += s * M.at(i, src);
            mpz_mod(M.at(i, dst).get_mpz_t(), M.at(i, dst).get_mpz_t(), mod.get_mpz_t());
        }
    };
    auto swap_rows = [&](ZMat& M, int i1, int i2) {
        if (i1 == i2) return;
        for (int j = 0; j < M.cols; ++j) std::swap(M.at(i1, j), M.at(i2, j));
    };
    auto swap_cols = [&](ZMat& M, int j1, int j2) {
        if (j1 == j2) return;
        for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, j1), M.at(i, j2));
    };

    for (int t = 0; t < n; ++t) {
        // pivot: minimal valuation in the lower-right block
        int bi = -1, bj = -1, bv = A.N;
        for (int i = t; i < D.rows; ++i)
            for (int j = t; j < D.cols; ++j) {
                int v = zmat_entry_val(D, i, j);
                if (v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi < 0) {
            for (int r = t; r < n; ++r) out.divisor_exps.push_back(A.N);
            break;
        }
        swap_rows(D, t, bi);
        swap_rows(U, t, bi);
        swap_cols(D, t, bj);
        swap_cols(V, t, bj);
        // normalize pivot to exactly p^bv
        mpz_class pv;
        mpz_ui_pow_ui(pv.get_mpz_t(), A.p, static_cast<unsigned long>(bv));
        mpz_class unit;
        mpz_divexact(unit.get_mpz_t(), D.at(t, t).get_mpz_t(), pv.get_mpz_t());
        mpz_class uinv;
        mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
        row_scale(D, t, uinv);
        row_scale(U, t, uinv);
        // eliminate: every entry in row/col t has valuation >= bv
        for (int i = t + 1; i < D.rows; ++i) {
            if (D.at(i, t) == 0) continue;
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), D.at(i, t).get_mpz_t(), pv.get_mpz_t());
            q = mod - (q % mod);
            row_axpy(D, i, t, q);
            row_axpy(U, i, t, q);
        }
        for (int j = t + 1; j < D.cols; ++j) {
            if (D.at(t, j) == 0) continue;
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), D.at(t, j).get_mpz_t(), pv.get_mpz_t());
            q = mod - (q % mod);
            col_axpy(D, j, t, q);
            col_axpy(V, j, t, q);
        }
        out.divisor_exps.push_back(bv);
    }
    out.U = U;
    out.V = V;
    out.D = D;
    return out;
}

}  // namespace wittsen
