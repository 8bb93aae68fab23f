#pragma once

#include <gmpxx.h>

#include <vector>

#include "wittsen/errors.hpp"

namespace wittsen {

/// Dense matrix over the exact ring Z/p^N.  Entries are residues in
/// [0, p^N); all operations are exact ring arithmetic (no precision decay).
struct ZMat {
    unsigned long p = 0;
    int N = 0;
    int rows = 0, cols = 0;
    std::vector<mpz_class> a;  // row-major

    ZMat() = default;
    ZMat(unsigned long p_, int N_, int r, int c);
    static ZMat identity(unsigned long p, int N, int n);

    mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    mpz_class modulus() const;
    void reduce();

    ZMat mul(const ZMat& o) const;
    bool equal(const ZMat& o) const;
};

/**
 * Smith normal form over the local ring Z/p^N, with pivoting by minimal
 * valuation.  Produces U A V = D with U, V unimodular (det a unit mod p)
 * and D = diag(p^{d_1}, ..., p^{d_k}), d_1 <= d_2 <= ... <= N; a divisor
 * exponent of N means the residue vanishes at this precision.
 */
struct SmithResult {
    std::vector<int> divisor_exps;  // length min(rows, cols)
    ZMat U, V, D;
};

SmithResult smith_normal_form(const ZMat& A);

/// Valuation of an entry as an element of Z/p^N (N for zero).
int zmat_entry_val(const ZMat& A, int i, int j);

/// det(A) mod p != 0, i.e. A invertible over Z/p^N.
bool zmat_is_unimodular(const ZMat& A);

}  // namespace wittsen
