#include "wittsen/sen.hpp"

#include <random>
#include <sstream>

namespace wittsen {

SRingElem theta_ring(const SenRing& R, const SRingElem& f) {
    return f.derivative() * SRingElem::e_image(R.ring);
}

SenModule make_twist(const SenRing& R, int k, TwistVariant variant) {
    SenModule M(R, 1);
    SRingElem kk = SRingElem::from_int(R.ring, k);
    if (variant == TwistVariant::ideal_power) {
        M.theta[0][0] = kk;
    } else {
        M.theta[0][0] = kk * sring_from_poly(R.ring, R.E.deriv_poly(R.N));
    }
    return M;
}

SenModule direct_sum(const SenModule& A, const SenModule& B) {
    if (!(A.ring == B.ring)) throw RingMismatch("direct_sum: Sen rings differ");
    SenModule M(A.ring, A.rank + B.rank);
    for (int i = 0; i < A.rank; ++i)
        for (int j = 0; j < A.rank; ++j) M.theta[i][j] = A.theta[i][j];
    for (int i = 0; i < B.rank; ++i)
        for (int j = 0; j < B.rank; ++j) M.theta[A.rank + i][A.rank + j] = B.theta[i][j];
    return M;
}

std::vector<SRingElem> theta_apply(const SenModule& M, const std::vector<SRingElem>& x) {
    if (static_cast<int>(x.size()) != M.rank) throw BadInput("theta_apply: size");
    // Theta(sum x_i e_i) has coordinate k equal to
    // Theta_ring(x_k) + sum_i theta[k][i] x_i.
    std::vector<SRingElem> out(M.rank, SRingElem::zero(M.ring.ring));
    for (int k = 0; k < M.rank; ++k) {
        SRingElem acc = theta_ring(M.ring, x[k]);
        for (int i = 0; i < M.rank; ++i) acc = acc + M.theta[k][i] * x[i];
        out[k] = acc;
    }
    return out;
}

namespace {

SRingElem random_elem(const SRingPtr& ring, std::mt19937_64& rng) {
    int D = ring->Em.degree();
    std::vector<mpz_class> cs(D);
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), ring->E.p, static_cast<unsigned long>(ring->N));
    for (auto& c : cs) {
        mpz_class acc = 0;
        mpz_class big = mod;
        while (big > 0) {
            acc = acc * 65536 + static_cast<unsigned long>(rng() & 0xffff);
            big /= 65536;
        }
        c = acc % mod;
    }
    return sring_from_poly(ring, UPoly(ring->E.p, ring->N, cs));
}

}  // namespace

LeibnizReport check_leibniz(const SenModule& M, int trials, unsigned long seed,
                            const ThetaApplier& apply) {
    ThetaApplier ap = apply ? apply : ThetaApplier(
        [](const SenModule& m, const std::vector<SRingElem>& v) { return theta_apply(m, v); });
    LeibnizReport rep;
    rep.trials = trials;
    if (M.rank == 0) return rep;  // vacuous
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        SRingElem a = random_elem(M.ring.ring, rng);
        std::vector<SRingElem> x;
        x.reserve(M.rank);
        for (int i = 0; i < M.rank; ++i) x.push_back(random_elem(M.ring.ring, rng));
        std::vector<SRingElem> ax;
        ax.reserve(M.rank);
        for (const auto& xi : x) ax.push_back(a * xi);
        std::vector<SRingElem> lhs = ap(M, ax);
        std::vector<SRingElem> tx = ap(M, x);
        SRingElem ta = theta_ring(M.ring, a);
        for (int k = 0; k < M.rank; ++k) {
            SRingElem rhs = a * tx[k] + ta * x[k];
            if (!lhs[k].same_value(rhs)) {
                rep.pass = false;
                std::ostringstream os;
                os << "trial " << t << ", coordinate " << k << ": a=" << a.str()
                   << " lhs=" << lhs[k].str() << " rhs=" << rhs.str();
                rep.witness = os.str();
                return rep;
            }
        }
    }
    return rep;
}

ZMat flatten_theta(const SenModule& M) {
    const SenRing& R = M.ring;
    int e = R.E.e, n = R.n, r = M.rank;
    int D = e * n * r;
    ZMat T(R.E.p, R.N, D, D);
    SRingElem Eimg = SRingElem::e_image(R.ring);
    SRingElem uimg = SRingElem::u(R.ring);
    for (int j = 0; j < n; ++j) {
        for (int b = 0; b < e; ++b) {
            SRingElem s = Eimg.pow_u(j) * uimg.pow_u(b);
            SRingElem ts = theta_ring(R, s);
            for (int i = 0; i < r; ++i) {
                int col = (j * e + b) * r + i;
                // Theta(s e_i) = Theta_ring(s) e_i + s sum_k theta[k][i] e_k
                for (int k = 0; k < r; ++k) {
                    SRingElem coord = s * M.theta[k][i];
                    if (k == i) coord = coord + ts;
                    std::vector<UPoly> digs = coord.eadic_digits();
                    for (int j2 = 0; j2 < n; ++j2)
                        for (int b2 = 0; b2 < e; ++b2) {
                            int row = (j2 * e + b2) * r + k;
                            T.at(row, col) = digs[j2].coeff(b2);
                        }
                }
            }
        }
    }
    T.reduce();
    return T;
}

ZMat flatten_mult(const SenRing& R, const SRingElem& f, int rank) {
    int e = R.E.e, n = R.n;
    int D = e * n * rank;
    ZMat T(R.E.p, R.N, D, D);
    SRingElem Eimg = SRingElem::e_image(R.ring);
    SRingElem uimg = SRingElem::u(R.ring);
    for (int j = 0; j < n; ++j)
        for (int b = 0; b < e; ++b) {
            SRingElem s = Eimg.pow_u(j) * uimg.pow_u(b) * f;
            std::vector<UPoly> digs = s.eadic_digits();
            for (int i = 0; i < rank; ++i) {
                int col = (j * e + b) * rank + i;
                for (int j2 = 0; j2 < n; ++j2)
                    for (int b2 = 0; b2 < e; ++b2)
                        T.at((j2 * e + b2) * rank + i, col) = digs[j2].coeff(b2);
            }
        }
    T.reduce();
    return T;
}

namespace {

FpMat fp_from_zmat(const ZMat& A) {
    FpMat m(A.rows, std::vector<long>(A.cols));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            mpz_class r = A.at(i, j) % A.p;
            m[i][j] = r.get_si();
        }
    return m;
}

FpMat fp_mul(const FpMat& a, const FpMat& b, long p) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    FpMat out(n, std::vector<long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (!a[i][t]) continue;
            for (size_t j = 0; j < m; ++j)
                out[i][j] = (out[i][j] + a[i][t] * b[t][j]) % p;
        }
    return out;
}

bool fp_is_zero(const FpMat& a) {
    for (const auto& row : a)
        for (long x : row)
            if (x) return false;
    return true;
}

FpMat fp_identity(size_t n) {
    FpMat out(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

FpMat fp_pow(const FpMat& a, unsigned long e, long p) {
    FpMat acc = fp_identity(a.size());
    FpMat base = a;
    while (e) {
        if (e & 1ul) acc = fp_mul(acc, base, p);
        e >>= 1;
        if (e) base = fp_mul(base, base, p);
    }
    return acc;
}

FpMat fp_sub(const FpMat& a, const FpMat& b, long p) {
    FpMat out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[i][j] = ((a[i][j] - b[i][j]) % p + p) % p;
    return out;
}

}  // namespace

NilpotenceReport check_nilpotence(const SenModule& M) {
    NilpotenceReport rep;
    long p = static_cast<long>(M.ring.E.p);
    int D = M.ring.flat_dim() * M.rank;
    rep.dim = D;
    if (D == 0) {
        rep.nilpotent = true;
        return rep;
    }
    FpMat A = fp_from_zmat(flatten_theta(M));
    FpMat Ed = fp_from_zmat(
        flatten_mult(M.ring, sring_from_poly(M.ring.ring, M.ring.E.deriv_poly(M.ring.N)), M.rank));
    FpMat Phi = fp_sub(fp_pow(A, M.ring.E.p, p),
                       fp_mul(fp_pow(Ed, M.ring.E.p - 1, p), A, p), p);
    FpMat pw = fp_identity(D);
    for (int k = 1; k <= D; ++k) {
        pw = fp_mul(pw, Phi, p);
        if (fp_is_zero(pw)) {
            rep.nilpotent = true;
            rep.index = k;
            return rep;
        }
    }
    rep.nilpotent = false;
    // nonzero column of Phi^D lies in the stable image
    for (int j = 0; j < D && rep.certificate.empty(); ++j) {
        for (int i = 0; i < D; ++i)
            if (pw[i][j]) {
                for (int t = 0; t < D; ++t) rep.certificate.push_back(pw[t][j]);
                break;
            }
    }
    return rep;
}

CohomologyReport sen_cohomology(const SenModule& M) {
    CohomologyReport rep;
    rep.N = M.ring.N;
    ZMat T = flatten_theta(M);
    SmithResult s = smith_normal_form(T);
    rep.all_divisors = s.divisor_exps;
    for (int d : s.divisor_exps) {
        if (d > 0) {
            rep.H0.push_back(d);
            rep.H1.push_back(d);
        }
    }
    return rep;
}

std::vector<long> charpoly_fp(const FpMat& A, unsigned long pp) {
    // Berkowitz: division-free, coefficients of det(xI - A).
    long p = static_cast<long>(pp);
    int n = static_cast<int>(A.size());
    std::vector<long> C = {1};  // degree-0 leading vector, highest power first
    for (int i = 1; i <= n; ++i) {
        long a = A[i - 1][i - 1] % p;
        // powers of the (i-1)x(i-1) principal block between row R and col S
        std::vector<long> t(i + 1, 0);
        t[0] = 1;
        t[1] = ((-a) % p + p) % p;
        if (i >= 2) {
            std::vector<long> w(i - 1);
            for (int k = 0; k < i - 1; ++k) w[k] = A[k][i - 1] % p;  // column
            for (int k = 2; k <= i; ++k) {
                long dot = 0;
                for (int t2 = 0; t2 < i - 1; ++t2)
                    dot = (dot + A[i - 1][t2] * w[t2]) % p;
                t[k] = ((-dot) % p + p) % p;
                if (k < i) {
                    std::vector<long> w2(i - 1, 0);
                    for (int r = 0; r < i - 1; ++r) {
                        long acc = 0;
                        for (int c2 = 0; c2 < i - 1; ++c2) acc = (acc + A[r][c2] * w[c2]) % p;
                        w2[r] = acc;
                    }
                    w = w2;
                }
            }
        }
        std::vector<long> C2(i + 1, 0);
        for (int r = 0; r <= i; ++r)
            for (size_t s2 = 0; s2 < C.size(); ++s2) {
                if (r + static_cast<int>(s2) > i) continue;
                C2[r + s2] = (C2[r + s2] + t[r] * C[s2]) % p;
            }
        C = C2;
    }
    // highest power first -> return constant first
    std::vector<long> out(C.rbegin(), C.rend());
    for (auto& x : out) x = (x % p + p) % p;
    return out;
}

WeightsReport sen_weights(const SenModule& M) {
    WeightsReport rep;
    long p = static_cast<long>(M.ring.E.p);
    int r = M.rank;
    FpMat B(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            mpz_class c = M.theta[i][j].rep().coeff(0) % M.ring.E.p;
            B[i][j] = c.get_si();
        }
    std::vector<long> cp = charpoly_fp(B, M.ring.E.p);  // constant first
    // exhaustive root search with deflation
    std::vector<long> poly = cp;
    for (long root = 0; root < p; ++root) {
        while (true) {
            // evaluate
            long v = 0, xp = 1;
            for (long c : poly) {
                v = (v + c * xp) % p;
                xp = (xp * root) % p;
            }
            if (v % p != 0) break;
            if (poly.size() <= 1) break;
            // synthetic division by (x - root), highest first
            std::vector<long> hi(poly.rbegin(), poly.rend());
            std::vector<long> q(hi.size() - 1, 0);
            long carry = 0;
            for (size_t i = 0; i < q.size(); ++i) {
                carry = (hi[i] + carry * root) % p;
                q[i] = carry;
            }
            poly.assign(q.rbegin(), q.rend());
            rep.weights.push_back(static_cast<int>(root));
        }
    }
    if (poly.size() > 1) {
        rep.split = false;
        rep.residual_charpoly = poly;
    }
    return rep;
}

}  // namespace wittsen
