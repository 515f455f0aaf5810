#pragma once
/**
 * Boundary operator algebra built on top of the DtN solves: degree- and
 * representation-annotated matrices, the composite operators Lambda, Pi,
 * G, Theta, PsiTilde, the boundary Hilbert transform, and the identity
 * suite that measures every composition law of the calculus.
 *
 * A weak cochain indexed by j-simplices represents an (n-1-j)-form through
 * the boundary wedge pairing f_e = int w_e ^ alpha.  Compositions are only
 * legal when the index degree and the representation of adjacent factors
 * match; compose() enforces this, which catches unit mismatches at runtime
 * instead of producing silently wrong matrices.
 */

#include <string>
#include <vector>

#include "hodgedtn/dtn.hpp"

namespace hodgedtn {

/** A matrix with domain/codomain annotations (index degree + representation). */
struct OpMatrix {
    Eigen::MatrixXd M;
    int in_deg = 0;
    Rep in_rep = Rep::Strong;
    int out_deg = 0;
    Rep out_rep = Rep::Strong;
};

/** A * B with domain/codomain checking; throws std::logic_error on mismatch. */
OpMatrix compose(const OpMatrix& A, const OpMatrix& B);
/** A + c * B, requiring identical annotations. */
OpMatrix add(const OpMatrix& A, const OpMatrix& B, double c = 1.0);

struct IdentityResult {
    std::string name;
    int degree = 0;
    double residual = 0.0;
};

class OperatorAlgebra {
  public:
    OperatorAlgebra(DtnAssembler& dtn, const GalerkinStructures& gs);

    int n() const { return dtn_->n(); }

    // Primitive operators (k is the boundary form degree of the input).
    OpMatrix phi(int k);         ///< weak output
    OpMatrix psi(int k);         ///< strong output (zero-row matrix at k = 0)
    OpMatrix phi_strong(int k);  ///< strong output (natural-data solve)
    OpMatrix psi_weak(int k);    ///< weak output (natural-data solve)

    // Boundary structure operators.
    OpMatrix strong_d(int k);  ///< exterior derivative on strong cochains
    OpMatrix weak_d(int j);    ///< exterior derivative on weak functionals
    OpMatrix to_weak(int j);   ///< wedge conversion, strong j -> weak (n-1-j)
    OpMatrix star(int k);      ///< Galerkin boundary Hodge star (strong)

    // Composite operators.
    OpMatrix lambda(int k);         ///< Lambda_k, weak output
    OpMatrix lambda_strong(int k);  ///< Lambda_k, strong output
    OpMatrix pi_block(int k);       ///< full 2x2 block matrix of Pi on degree k
    OpMatrix g(int k, bool via_lambda);  ///< complete DN map, two routes
    OpMatrix theta(int k);               ///< d Psi d (strong, canonical)
    OpMatrix theta_alt_dphi2(int k);     ///< +- d Phi^2 (weak output)
    OpMatrix theta_alt_phi2d(int k);     ///< +- Phi^2 d (weak output)
    OpMatrix psi_tilde(int k);           ///< adjoint chain map (strong)

    /** Minimum-norm pseudo-inverse of Phi_k (weak k -> strong k), cached. */
    const Eigen::MatrixXd& pinv_phi(int k);

    /**
     * Boundary Hilbert transform T = d Phi^{-1} applied to a weak
     * k-functional; *residual receives the relative consistency residual
     * ||Phi x - psi|| / ||psi|| of the least-squares solve.
     */
    Eigen::VectorXd hilbert_transform(int k, const Eigen::VectorXd& weak_psi,
                                      double* residual = nullptr);

    /**
     * Residuals of all composition identities on every valid degree.
     *
     * Identities are compared on a fixed set of smooth probe cochains (the
     * lowest eigenmodes of the boundary Hodge Laplacian per degree), because
     * the identities hold for the continuum operators: comparing raw finite
     * element matrices would be dominated by grid-scale modes where any
     * lowest-order discretization differs O(1), masking the convergence that
     * the calculus actually exhibits.
     */
    std::vector<IdentityResult> identity_suite();

    /** Mass-orthonormal low-frequency probe basis at boundary degree k. */
    const Eigen::MatrixXd& smooth_basis(int k);

    /** Probe projection of an operator (plain small matrix). */
    Eigen::MatrixXd probed(const OpMatrix& op);

  private:
    DtnAssembler* dtn_;
    const GalerkinStructures* gs_;
    std::vector<Eigen::MatrixXd> pinv_phi_;
    std::vector<char> have_pinv_;
    std::vector<Eigen::MatrixXd> smooth_;
    std::vector<char> have_smooth_;
};

}  // namespace hodgedtn
