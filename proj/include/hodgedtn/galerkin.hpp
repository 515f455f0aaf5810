#pragma once
/**
 * Galerkin structures for lowest-order Whitney forms: L^2 mass matrices on
 * the bulk and boundary complexes, the boundary wedge pairing matrices, and
 * weak codifferential helpers.  All element integrals use exact closed-form
 * barycentric formulas (no quadrature).
 */

#include "hodgedtn/mesh.hpp"

namespace hodgedtn {

struct GalerkinStructures {
    const SimplicialComplex* bulk = nullptr;
    const BoundaryComplex* boundary = nullptr;

    std::vector<SpMat> mass;    ///< mass[k], k = 0..n, SPD Whitney L^2 (bulk)
    std::vector<SpMat> bmass;   ///< bmass[k], k = 0..n-1 (boundary complex)
    /// wedge[k](e,f) = \int_{dM} w_e ^ w_f, e of degree k, f of degree n-1-k
    std::vector<SpMat> wedge;
    std::vector<SpMat> trace_mats;  ///< signed trace T_k, k = 0..n-1
    std::vector<SpMat> stiffness;   ///< D_k^T mass[k+1] D_k, k = 0..n (0 at n)

    std::vector<Eigen::MatrixXd> bmass_dense;  ///< dense copies (small)
    std::vector<Eigen::LLT<Eigen::MatrixXd>> bmass_llt;  ///< Cholesky factors
};

/** Assemble all Galerkin structures for a bulk complex and its boundary. */
GalerkinStructures assemble_galerkin(const SimplicialComplex& bulk,
                                     const BoundaryComplex& boundary);

/** Mass matrix of Whitney k-forms on any complex (bulk or boundary). */
SpMat whitney_mass(const SimplicialComplex& c, int k);

/** Boundary wedge matrix: rows degree k, columns degree (dim-k). */
SpMat boundary_wedge(const SimplicialComplex& boundary, int k);

/** Weak codifferential: r = D_{k-1}^T mass[k] omega (a weak (k-1)-cochain).
 *  The missing boundary term encodes the natural condition i*(star omega)=0. */
Cochain weak_codifferential(const GalerkinStructures& gs, const Cochain& omega);

/** Solve mass[k] x = r to convert a weak bulk cochain to a strong one. */
Cochain weak_to_strong(const GalerkinStructures& gs, const Cochain& r);

}  // namespace hodgedtn
