#include "hodgedtn/topology.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hodgedtn {

RankReport numerical_rank(const Eigen::VectorXd& s, int ncols,
                          double gap_threshold) {
    RankReport rep;
    rep.singvals = s;
    const int m = static_cast<int>(s.size());
    if (m == 0 || s(0) <= 0.0) {
        rep.rank = 0;
        rep.null_dim = ncols;
        rep.gap = std::numeric_limits<double>::infinity();
        rep.ambiguous = false;
        return rep;
    }
    const double floor_val = 1e-12 * s(0);
    auto sv = [&](int i) { return (i < m) ? std::max(s(i), floor_val) : floor_val; };
    int best_r = 1;
    double best_gap = 0.0;
    for (int r = 1; r <= m; ++r) {
        double gap = sv(r - 1) / sv(r);
        if (gap > best_gap) {
            best_gap = gap;
            best_r = r;
        }
    }
    rep.rank = best_r;
    rep.null_dim = ncols - best_r;
    rep.gap = best_gap;
    rep.ambiguous = best_gap < gap_threshold;
    return rep;
}

RankReport numerical_rank(const Eigen::MatrixXd& A, double gap_threshold) {
    if (A.rows() == 0 || A.cols() == 0) {
        RankReport rep;
        rep.rank = 0;
        rep.null_dim = static_cast<int>(A.cols());
        rep.gap = std::numeric_limits<double>::infinity();
        return rep;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    return numerical_rank(svd.singularValues(), static_cast<int>(A.cols()),
                          gap_threshold);
}

Eigen::MatrixXd weighted_matrix(const OpMatrix& op,
                                const GalerkinStructures& gs) {
    if (op.in_rep != Rep::Strong)
        throw std::logic_error("weighted_matrix: weak inputs unsupported");
    Eigen::MatrixXd A = op.M;
    if (A.cols() > 0) {
        Eigen::MatrixXd Lin = gs.bmass_llt[op.in_deg].matrixL();
        // right-multiply by L^{-T}: orthonormalize the input basis
        A = Lin.triangularView<Eigen::Lower>().solve(A.transpose()).transpose();
    }
    if (A.rows() > 0) {
        Eigen::MatrixXd Lout = gs.bmass_llt[op.out_deg].matrixL();
        if (op.out_rep == Rep::Strong)
            A = Lout.transpose() * A;
        else  // dual norm for functionals
            A = Lout.triangularView<Eigen::Lower>().solve(A);
    }
    return A;
}

Eigen::MatrixXd TopologyAnalyzer::kernel_basis(const Eigen::MatrixXd& A,
                                               double gap_threshold) {
    if (A.rows() == 0)
        return Eigen::MatrixXd::Identity(A.cols(), A.cols());
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    RankReport rep = numerical_rank(svd.singularValues(),
                                    static_cast<int>(A.cols()), gap_threshold);
    return svd.matrixV().rightCols(rep.null_dim);
}

TopologyAnalyzer::TopologyAnalyzer(OperatorAlgebra& alg,
                                   const GalerkinStructures& gs,
                                   double gap_threshold)
    : alg_(&alg), gs_(&gs), gap_threshold_(gap_threshold) {}

RankReport TopologyAnalyzer::phi_rank(int k) {
    auto it = phi_rank_cache_.find(k);
    if (it != phi_rank_cache_.end()) return it->second;
    RankReport rep =
        numerical_rank(weighted_matrix(alg_->phi(k), *gs_), gap_threshold_);
    phi_rank_cache_[k] = rep;
    return rep;
}

PsiHomologyReport TopologyAnalyzer::psi_homology(int k) {
    auto it = psi_hom_cache_.find(k);
    if (it != psi_hom_cache_.end()) return it->second;
    PsiHomologyReport rep;
    if (k == 0) {
        // Psi on 0-forms is the zero map; its kernel is everything.
        rep.ker_report.rank = 0;
        rep.ker_report.null_dim = static_cast<int>(alg_->phi(0).M.cols());
        rep.ker_report.gap = std::numeric_limits<double>::infinity();
    } else {
        rep.ker_report =
            numerical_rank(weighted_matrix(alg_->psi(k), *gs_), gap_threshold_);
    }
    if (k + 1 <= n() - 1)
        rep.im_report = numerical_rank(weighted_matrix(alg_->psi(k + 1), *gs_),
                                       gap_threshold_);
    rep.dim = rep.ker_report.null_dim - rep.im_report.rank;
    psi_hom_cache_[k] = rep;
    return rep;
}

int TopologyAnalyzer::echo_dimension(int k) {
    return psi_homology(k).dim - phi_rank(k).null_dim;
}

int TopologyAnalyzer::cor3_dimension() {
    Eigen::MatrixXd T = weighted_matrix(alg_->theta(0), *gs_);
    RankReport theta_rep = numerical_rank(T, gap_threshold_);
    return theta_rep.null_dim - phi_rank(0).null_dim;
}

FredholmReport TopologyAnalyzer::fredholm(int k) {
    FredholmReport rep;
    rep.rank = phi_rank(k);
    rep.ker_dim = rep.rank.null_dim;
    rep.coker_dim = static_cast<int>(alg_->phi(k).M.rows()) - rep.rank.rank;
    // Evaluate image functionals on the kernel in original coordinates,
    // where the weak/strong duality pairing is the plain dot product.
    const Eigen::MatrixXd& Phi = alg_->phi(k).M;
    Eigen::MatrixXd K = kernel_basis(Phi, gap_threshold_);
    if (K.cols() > 0)
        rep.ortho_residual = (K.transpose() * Phi).norm() / (Phi.norm() + 1e-300);
    return rep;
}

double TopologyAnalyzer::ker_containment_angle(int k) {
    Eigen::MatrixXd Kphi =
        kernel_basis(weighted_matrix(alg_->phi(k), *gs_), gap_threshold_);
    if (Kphi.cols() == 0 || k == 0) return 0.0;  // Psi_0 = 0 contains anything
    Eigen::MatrixXd Kpsi =
        kernel_basis(weighted_matrix(alg_->psi(k), *gs_), gap_threshold_);
    if (Kpsi.cols() < Kphi.cols()) return std::acos(0.0);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(Kpsi.transpose() * Kphi);
    double smin = svd.singularValues().minCoeff();
    return std::acos(std::clamp(smin, 0.0, 1.0));
}

double TopologyAnalyzer::image_containment_residual(int k) {
    Eigen::MatrixXd B = weighted_matrix(alg_->psi_weak(k), *gs_);
    if (B.rows() == 0 || B.norm() == 0.0) return 0.0;
    Eigen::MatrixXd A = weighted_matrix(alg_->phi(n() - k), *gs_);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
    RankReport rep = numerical_rank(svd.singularValues(),
                                    static_cast<int>(A.cols()), gap_threshold_);
    Eigen::MatrixXd U = svd.matrixU().leftCols(rep.rank);
    return (B - U * (U.transpose() * B)).norm() / B.norm();
}

int TopologyAnalyzer::psi_tilde_cohomology(int k) {
    int ker_dim;
    if (k <= n() - 2) {
        ker_dim = numerical_rank(weighted_matrix(alg_->psi_tilde(k), *gs_),
                                 gap_threshold_)
                      .null_dim;
    } else {
        ker_dim = gs_->boundary->count(k);  // no outgoing map at top degree
    }
    int im_rank = 0;
    if (k >= 1)
        im_rank = numerical_rank(weighted_matrix(alg_->psi_tilde(k - 1), *gs_),
                                 gap_threshold_)
                      .rank;
    return ker_dim - im_rank;
}

int TopologyAnalyzer::theta_cohomology(int k) {
    int ker_dim;
    if (k <= n() - 2) {
        ker_dim = numerical_rank(weighted_matrix(alg_->theta(k), *gs_),
                                 gap_threshold_)
                      .null_dim;
    } else {
        ker_dim = gs_->boundary->count(k);
    }
    int im_rank = 0;
    if (k >= 1)
        im_rank = numerical_rank(weighted_matrix(alg_->theta(k - 1), *gs_),
                                 gap_threshold_)
                      .rank;
    return ker_dim - im_rank;
}

}  // namespace hodgedtn
