#pragma once

#include <string>
#include <vector>

#include "wittsen/padic.hpp"
#include "wittsen/sen.hpp"

namespace wittsen {

/// Operator matrix with p-denominators: Theta = p^{-denom_exp} * num on the
/// fixed basis; the scalar derivation part stays integral.
struct RationalTheta {
    std::vector<std::vector<SRingElem>> num;
    int denom_exp = 0;
};

/**
 * A Theta-stable integral lattice inside the rational module, presented on
 * the flattened basis E^j u^b e_i.  `basis` (= p^{-basis_denom_exp} times
 * the stored numerators) has the lattice generators as columns, block
 * lower-triangular by E-degree layer; `theta_on_lattice` / `umul_on_lattice`
 * are the certified-integral matrices of Theta and multiplication by u in
 * that generator basis.
 */
struct StableLatticeResult {
    bool certified = false;
    int dim = 0;
    int check_prec = 0;  // entries certified integral at this precision
    std::vector<std::vector<PAdic>> basis;
    int basis_denom_exp = 0;
    std::vector<std::vector<PAdic>> theta_on_lattice;
    std::vector<std::vector<PAdic>> umul_on_lattice;
    std::vector<int> block_scalings;  // p^{g_j} applied to the layer-j block
    int min_theta_val = 0;            // over theta_on_lattice entries
    std::vector<std::string> notes;
};

/**
 * Builds a Theta-stable lattice for a finite free rational module over
 * S/E^n[1/p], following the E-degree layer recursion: close each graded
 * layer (an O_K-linear problem) under its induced operator, then absorb the
 * p-denominators of the cross-layer Theta- and u-images into the deeper
 * layers by p-power rescaling.  Fails with UnboundedLattice when a layer's
 * closure does not stabilize within the iteration cap (a hypothesis
 * violation); the returned matrices are certified by exact arithmetic,
 * never assumed.
 */
StableLatticeResult construct_stable_lattice(const SenRing& R, int rank,
                                             const RationalTheta& theta,
                                             int iter_cap = 0);

}  // namespace wittsen
