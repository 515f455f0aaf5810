#pragma once
/**
 * Topology recovery from boundary operator matrices: numerical rank
 * detection by singular value gaps, Betti numbers from ker Phi, the
 * Psi-homology dimensions, echo dimensions, and subspace containment
 * diagnostics.
 *
 * All singular value computations are done in metric coordinates: strong
 * cochain inputs/outputs are transformed by the Cholesky factor of the
 * boundary mass matrix, weak functional outputs by its inverse factor
 * (the dual norm), so that ranks and angles are mesh-independent.
 */

#include <map>

#include "hodgedtn/operators.hpp"

namespace hodgedtn {

struct RankReport {
    int rank = 0;
    int null_dim = 0;
    double gap = 0.0;     ///< singular value ratio at the chosen cut
    bool ambiguous = false;  ///< gap below the decision threshold
    Eigen::VectorXd singvals;
};

/**
 * Rank by the largest multiplicative gap in the singular value spectrum.
 * Values are floored at 1e-12 * sigma_max; a virtual floor value is
 * appended so a full-rank spectrum yields the gap sigma_min / floor.
 * The result is flagged ambiguous when the best gap is below gap_threshold.
 */
RankReport numerical_rank(const Eigen::VectorXd& singvals, int ncols,
                          double gap_threshold = 1e3);
RankReport numerical_rank(const Eigen::MatrixXd& A,
                          double gap_threshold = 1e3);

/** Transform an operator matrix into metric (orthonormal) coordinates. */
Eigen::MatrixXd weighted_matrix(const OpMatrix& op,
                                const GalerkinStructures& gs);

struct FredholmReport {
    RankReport rank;
    int ker_dim = 0;
    int coker_dim = 0;
    double ortho_residual = 0.0;  ///< evaluation of im Phi on ker Phi
    int index() const { return ker_dim - coker_dim; }
};

struct PsiHomologyReport {
    int dim = 0;  ///< dim ker Psi_k - rank Psi_{k+1}
    RankReport ker_report, im_report;
};

class TopologyAnalyzer {
  public:
    TopologyAnalyzer(OperatorAlgebra& alg, const GalerkinStructures& gs,
                     double gap_threshold = 1e3);

    int n() const { return alg_->n(); }
    double gap_threshold() const { return gap_threshold_; }

    /** Theorem: beta_k(M) = dim ker Phi_k. */
    RankReport phi_rank(int k);
    int betti_from_phi(int k) { return phi_rank(k).null_dim; }

    /** dim ker Psi_k - rank Psi_{k+1} = b_rel[k+1] + b_abs[k]. */
    PsiHomologyReport psi_homology(int k);

    /** psi_homology(k) - dim ker Phi_k = dim of the "echo" summand. */
    int echo_dimension(int k);

    /** dim ker(d Phi^2) - dim ker Phi at k = 0, recovering beta_{n-1}. */
    int cor3_dimension();

    /** Index-zero check for the square operator Phi_k. */
    FredholmReport fredholm(int k);

    /** Largest principal angle of ker Phi_k inside ker Psi_k (radians). */
    double ker_containment_angle(int k);

    /** Relative least-squares residual of im Psi_k inside im Phi_{n-k}. */
    double image_containment_residual(int k);

    /** Cohomology dimension of the PsiTilde cochain complex at degree k. */
    int psi_tilde_cohomology(int k);

    /** Cohomology dimension of the Theta cochain complex at degree k. */
    int theta_cohomology(int k);

    /** Orthonormal kernel basis (metric coordinates) of a matrix. */
    static Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& A,
                                        double gap_threshold);

  private:
    OperatorAlgebra* alg_;
    const GalerkinStructures* gs_;
    double gap_threshold_;
    std::map<int, RankReport> phi_rank_cache_;
    std::map<int, PsiHomologyReport> psi_hom_cache_;
};

}  // namespace hodgedtn
