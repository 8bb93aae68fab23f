#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wittsen/smith.hpp"
#include "wittsen/sring.hpp"

namespace wittsen {

/**
 * Scalar ring S/E^n with its Sen derivation Theta_ring(f) = f'(u) E(u).
 * For E = u - p this restricts to lambda^i -> i lambda^i, so one formula
 * covers the unramified and the ramified normalizations.
 */
struct SenRing {
    Eisenstein E;
    int n = 0;
    int N = 0;
    SRingPtr ring;

    SenRing(Eisenstein E_, int n_, int N_)
        : E(std::move(E_)), n(n_), N(N_), ring(make_sring(E, n_, N_)) {}
    int flat_dim() const { return E.e * n; }
    bool operator==(const SenRing& o) const { return E == o.E && n == o.n && N == o.N; }
};

SRingElem theta_ring(const SenRing& R, const SRingElem& f);

/// Finite free module over S/E^n with operator matrix theta on a fixed
/// basis: Theta(e_i) = sum_k theta[k][i] e_k, extended to the whole module
/// by the Leibniz rule Theta(a x) = a Theta(x) + Theta_ring(a) x.
struct SenModule {
    SenRing ring;
    int rank = 0;
    std::vector<std::vector<SRingElem>> theta;  // rank x rank

    SenModule(SenRing R, int r) : ring(std::move(R)), rank(r) {
        theta.assign(r, std::vector<SRingElem>(r, SRingElem::zero(ring.ring)));
    }
};

enum class TwistVariant { ideal_power, ideal_over_p_power };

/// Rank-1 twist: Theta(e) = k*e (ideal_power, unramified normalization) or
/// Theta(e) = k*E'(u)*e (ideal_over_p_power).
SenModule make_twist(const SenRing& R, int k, TwistVariant variant);

SenModule direct_sum(const SenModule& A, const SenModule& B);

/// Theta applied to a coordinate vector, by the Leibniz extension.
std::vector<SRingElem> theta_apply(const SenModule& M, const std::vector<SRingElem>& x);

using ThetaApplier =
    std::function<std::vector<SRingElem>(const SenModule&, const std::vector<SRingElem>&)>;

struct LeibnizReport {
    bool pass = true;
    int trials = 0;
    std::string witness;  // first counterexample, empty when pass
};

/// Randomized exact check of Theta(a x) = a Theta(x) + Theta_ring(a) x.
/// `apply` defaults to theta_apply; tests may inject a broken applier.
LeibnizReport check_leibniz(const SenModule& M, int trials, unsigned long seed,
                            const ThetaApplier& apply = nullptr);

using FpMat = std::vector<std::vector<long>>;

/// Flattening of Theta to a Z/p^N matrix on the basis E^j u^b e_i,
/// index (j*e + b)*rank + i; includes the Theta_ring action of scalars.
ZMat flatten_theta(const SenModule& M);
/// Flattening of multiplication by a ring element.
ZMat flatten_mult(const SenRing& R, const SRingElem& f, int rank);

struct NilpotenceReport {
    bool nilpotent = false;
    int dim = 0;
    int index = 0;                  // smallest K with Phi^K = 0 when nilpotent
    std::vector<long> certificate;  // nonzero vector in the stable image otherwise
};

/// Nilpotence of Phi = Theta^p - (E'(u))^{p-1} Theta on the mod-p
/// flattening of M (the finite replacement for local nilpotence).
NilpotenceReport check_nilpotence(const SenModule& M);

struct CohomologyReport {
    // Elementary divisor exponents d with 0 < d <= N, for the kernel and
    // cokernel of the flattened Theta; d = N means free of rank 1 at this
    // precision.
    std::vector<int> H0;
    std::vector<int> H1;
    std::vector<int> all_divisors;
    int N = 0;
};

/// Hodge-Tate style cohomology of (M, Theta) as the fiber of Theta:
/// kernel and cokernel invariants of the flattened operator, by Smith
/// normal form over Z/p^N.
CohomologyReport sen_cohomology(const SenModule& M);

struct WeightsReport {
    bool split = true;
    std::vector<int> weights;  // eigenvalues of Theta mod (p, u), with multiplicity
    std::vector<long> residual_charpoly;  // nonsplit factor, lowest degree first
};

/// Sen weights: eigenvalues of Theta mod (p, u) over F_p, by exhaustive
/// root search on the characteristic polynomial; NonSplit is a verdict.
WeightsReport sen_weights(const SenModule& M);

/// Division-free characteristic polynomial over F_p (Berkowitz); returns
/// coefficients of det(xI - A), constant term first.
std::vector<long> charpoly_fp(const FpMat& A, unsigned long p);

}  // namespace wittsen
