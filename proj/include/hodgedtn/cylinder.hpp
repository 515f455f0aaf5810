#pragma once
/**
 * Analytic oracle on the flat cylinder S^1 x [0, L] (n = 2), boundary two
 * circles: t = 0 with the induced boundary orientation -dtheta and t = L
 * with +dtheta.  Everything separates into Fourier modes; each mode m >= 1
 * carries a 4-dimensional space of boundary data per degree, ordered
 *
 *   [ cos(m theta) @ t=0,  cos(m theta) @ t=L,
 *     sin(m theta) @ t=0,  sin(m theta) @ t=L ],
 *
 * with 0-forms expanded in {cos, sin} and 1-forms in {cos dtheta, sin dtheta}.
 * The mode m = 0 is 2-dimensional (constants / dtheta at the two circles).
 *
 * All operator blocks below are closed-form solutions of the harmonic
 * boundary value problems; they serve as the ground truth that pins every
 * sign in SignTable and cross-checks the finite element pipeline.
 */

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hodgedtn/signs.hpp"

namespace hodgedtn {

struct ModeBlock {
    int m = 0;
    double L = 1.0;
    int dim = 4;  // 2 for m = 0

    // Dirichlet-to-Neumann blocks from the harmonic field BVP.
    Eigen::MatrixXd phi0, phi1;  // Phi on 0-forms / 1-forms
    Eigen::MatrixXd psi1;        // Psi on 1-forms (Psi on 0-forms vanishes)

    // Second-column blocks of Pi (input: natural data on 1-forms).
    Eigen::MatrixXd pi12, pi22;

    // Boundary structure on S^1 u S^1 restricted to the mode.
    Eigen::MatrixXd d0;       // boundary exterior derivative on 0-forms
    Eigen::MatrixXd star0;    // boundary Hodge star, 0-forms -> 1-forms
    Eigen::MatrixXd star1;    // boundary Hodge star, 1-forms -> 0-forms
    Eigen::MatrixXd mass;     // L^2 Gram matrix (same for both degrees)
    Eigen::MatrixXd wedge01;  // pairing (f, b) -> int_dM f ^ b

    // Direct (independently derived) values of composite operators.
    Eigen::MatrixXd lambda1_direct;  // Lambda on 1-forms from its own BVP
};

/** Solve all mode-m boundary value problems in closed form. */
ModeBlock mode_solve(int m, double L);

/** DN eigenvalue of the unit disk on the Fourier mode m (0-forms). */
double disk_dtn_mode(int m);

struct OracleResidual {
    std::string name;
    int m = 0;
    double residual = 0.0;
};

/**
 * Evaluate every operator identity on modes 0..m_max and return relative
 * residuals ||LHS - RHS|| / (||LHS|| + ||RHS|| + eps).  Identities that the
 * calculus asserts are exactly zero are measured against the norms of their
 * factors instead.
 */
std::vector<OracleResidual> oracle_identity_suite(int m_max, double L);

double oracle_max_residual(const std::vector<OracleResidual>& rs);

/**
 * Per-mode kernel/homology accounting summed over modes 0..m_max:
 * dim ker Phi_k recovers the Betti numbers of the cylinder, and the
 * Psi-homology dimensions recover H^{k+1}(M, dM) + H^k(M).
 */
struct OracleTopology {
    int ker_phi0 = 0, ker_phi1 = 0;
    int psi_hom0 = 0, psi_hom1 = 0;
};
OracleTopology oracle_psi_accounting(int m_max, double L);

}  // namespace hodgedtn
