#pragma once
/**
 * Discretization of the boundary operators Phi, Psi and the second column
 * of the block operator Pi, via mixed finite element solves of the harmonic
 * field boundary value problems.
 *
 * For tangential (Dirichlet) data phi on boundary k-forms, the problem
 *   Delta omega = 0,  i* omega = phi,  i* (star omega) = 0
 * is discretized with unknowns sigma ~ delta omega (all (k-1)-DOFs, so the
 * natural condition i*(star omega) = 0 is imposed weakly) and the interior
 * k-DOFs of omega (the trace DOFs are pinned to phi).  The outputs are
 *   Phi  phi = i* (star d omega)   -- a weak boundary functional,
 *   Psi  phi = i* (delta omega)    -- a strong boundary (k-1)-cochain.
 *
 * For natural (Neumann-type) data psi on boundary j-forms, the adjoint
 * problem at bulk degree n-j reuses the same factorized system with the
 * data entering through the boundary wedge pairing; its outputs give
 * strong-representation Phi and weak-representation Psi on degree j.
 */

#include <Eigen/SparseLU>
#include <memory>
#include <vector>

#include "hodgedtn/galerkin.hpp"
#include "hodgedtn/signs.hpp"

namespace hodgedtn {

/** Solution of one harmonic-field BVP at bulk degree k. */
struct HarmonicSolution {
    Cochain omega;     ///< strong bulk k-cochain
    Cochain sigma;     ///< strong bulk (k-1)-cochain (empty for k = 0)
    Cochain flux;      ///< weak boundary k-functional (= Phi output)
    Cochain psi;       ///< strong boundary (k-1)-cochain (= Psi output)
    double residual = 0.0;  ///< relative interior equation residual
};

class DtnAssembler {
  public:
    DtnAssembler(const SimplicialComplex& bulk, const BoundaryComplex& bnd,
                 const GalerkinStructures& gs);

    int n() const { return bulk_->dim; }
    const SignTable& signs() const { return signs_; }

    /** Phi_k as a matrix: strong boundary k-cochains -> weak k-functionals. */
    const Eigen::MatrixXd& phi_weak(int k);
    /** Psi_k as a matrix: strong k-cochains -> strong (k-1)-cochains. */
    const Eigen::MatrixXd& psi_strong(int k);
    /** Phi_j with strong output (from the natural-data problem), j<=n-1. */
    const Eigen::MatrixXd& phi_strong(int j);
    /** Psi_j with weak (n-j)-functional output (natural-data problem). */
    const Eigen::MatrixXd& psi_weak(int j);

    /** Solve the tangential-data BVP for a single boundary k-cochain. */
    HarmonicSolution solve_bvp(const Cochain& phi);

    /** Interior k-simplex indices (bulk numbering). */
    const std::vector<int>& interior(int k) const { return interior_[k]; }

    /**
     * Discrete harmonic Neumann fields at degree k: a basis of
     * { h : D_k h = 0, D_{k-1}^T M_k h = 0 }, whose traces span ker Phi_k.
     */
    Eigen::MatrixXd harmonic_neumann_fields(int k);

  private:
    struct DegreeSystem {
        int k = 0;
        SpMat A;
        std::unique_ptr<Eigen::SparseLU<SpMat>> lu;
        SpMat proj;  ///< interior selector P_I (rows: interior, cols: bulk)
    };

    DegreeSystem& system(int k);
    void assemble_tangential(int k);  ///< fills phi_weak_/psi_strong_ at k
    void assemble_natural(int j);     ///< fills phi_strong_/psi_weak_ at j
    Eigen::MatrixXd solve_chunked(DegreeSystem& sys, const SpMat& rhs);

    const SimplicialComplex* bulk_;
    const BoundaryComplex* bnd_;
    const GalerkinStructures* gs_;
    SignTable signs_;

    std::vector<std::vector<int>> interior_;
    std::vector<std::unique_ptr<DegreeSystem>> systems_;
    std::vector<Eigen::MatrixXd> phi_weak_, psi_strong_, phi_strong_, psi_weak_;
    std::vector<char> have_tangential_, have_natural_;
};

}  // namespace hodgedtn
