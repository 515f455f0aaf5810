#include "hodgedtn/operators.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

namespace hodgedtn {

namespace {

std::string rep_name(Rep r) { return r == Rep::Strong ? "strong" : "weak"; }

double sgn(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

OpMatrix scaled(OpMatrix A, double c) {
    A.M *= c;
    return A;
}

double zero_residual(const Eigen::MatrixXd& M, double scale) {
    return M.norm() / (scale + 1e-300);
}

double rel_residual(const Eigen::MatrixXd& L, const Eigen::MatrixXd& R) {
    return (L - R).norm() / (L.norm() + R.norm() + 1e-300);
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A.rows(),
                                                                A.cols());
    cod.setThreshold(1e-10);
    cod.compute(A);
    return cod.pseudoInverse();
}

}  // namespace

OpMatrix compose(const OpMatrix& A, const OpMatrix& B) {
    if (A.in_deg != B.out_deg || A.in_rep != B.out_rep)
        throw std::logic_error(
            "operator composition mismatch: expected (" +
            std::to_string(A.in_deg) + "," + rep_name(A.in_rep) + "), got (" +
            std::to_string(B.out_deg) + "," + rep_name(B.out_rep) + ")");
    if (A.M.cols() != B.M.rows())
        throw std::logic_error("operator composition dimension mismatch");
    return {A.M * B.M, B.in_deg, B.in_rep, A.out_deg, A.out_rep};
}

OpMatrix add(const OpMatrix& A, const OpMatrix& B, double c) {
    if (A.in_deg != B.in_deg || A.in_rep != B.in_rep ||
        A.out_deg != B.out_deg || A.out_rep != B.out_rep ||
        A.M.rows() != B.M.rows() || A.M.cols() != B.M.cols())
        throw std::logic_error("operator addition annotation mismatch");
    return {A.M + c * B.M, A.in_deg, A.in_rep, A.out_deg, A.out_rep};
}

OperatorAlgebra::OperatorAlgebra(DtnAssembler& dtn,
                                 const GalerkinStructures& gs)
    : dtn_(&dtn), gs_(&gs) {
    pinv_phi_.resize(n());
    have_pinv_.assign(n(), 0);
    smooth_.resize(n());
    have_smooth_.assign(n(), 0);
}

const Eigen::MatrixXd& OperatorAlgebra::smooth_basis(int k) {
    if (k < 0 || k >= n()) throw std::out_of_range("smooth_basis degree");
    if (have_smooth_[k]) return smooth_[k];
    const SimplicialComplex& bc = gs_->boundary->complex;
    const Eigen::MatrixXd& M = gs_->bmass_dense[k];
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(M.rows(), M.cols());
    if (k <= n() - 2) {
        Eigen::MatrixXd D = Eigen::MatrixXd(bc.D[k]);
        lap += D.transpose() * gs_->bmass_dense[k + 1] * D;
    }
    if (k >= 1) {
        Eigen::MatrixXd Ddown = Eigen::MatrixXd(bc.D[k - 1]);
        Eigen::MatrixXd MD = M * Ddown;
        lap += MD * gs_->bmass_llt[k - 1].solve(MD.transpose());
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(lap, M);
    const int p = std::min<int>(16, static_cast<int>(M.cols()));
    smooth_[k] = es.eigenvectors().leftCols(p);  // M-orthonormal, smoothest
    have_smooth_[k] = 1;
    return smooth_[k];
}

Eigen::MatrixXd OperatorAlgebra::probed(const OpMatrix& op) {
    if (op.M.rows() == 0 || op.M.cols() == 0)
        return Eigen::MatrixXd::Zero(op.M.rows() == 0 ? 0 : 1, 0);
    if (op.in_rep != Rep::Strong)
        throw std::logic_error("probed: weak inputs unsupported");
    Eigen::MatrixXd AV = op.M * smooth_basis(op.in_deg);
    const Eigen::MatrixXd& U = smooth_basis(op.out_deg);
    // Weak functionals pair with strong cochains by the plain dot product;
    // strong outputs are paired through the mass matrix.
    if (op.out_rep == Rep::Weak) return U.transpose() * AV;
    return U.transpose() * (gs_->bmass_dense[op.out_deg] * AV);
}

OpMatrix OperatorAlgebra::phi(int k) {
    return {dtn_->phi_weak(k), k, Rep::Strong, k, Rep::Weak};
}

OpMatrix OperatorAlgebra::psi(int k) {
    return {dtn_->psi_strong(k), k, Rep::Strong, k - 1, Rep::Strong};
}

OpMatrix OperatorAlgebra::phi_strong(int k) {
    return {dtn_->phi_strong(k), k, Rep::Strong, n() - 1 - k, Rep::Strong};
}

OpMatrix OperatorAlgebra::psi_weak(int k) {
    return {dtn_->psi_weak(k), k, Rep::Strong, n() - k, Rep::Weak};
}

OpMatrix OperatorAlgebra::strong_d(int k) {
    if (k < 0 || k > n() - 2) throw std::out_of_range("strong_d degree");
    const SpMat& D = gs_->boundary->complex.D[k];
    return {Eigen::MatrixXd(D), k, Rep::Strong, k + 1, Rep::Strong};
}

OpMatrix OperatorAlgebra::weak_d(int j) {
    // Stokes on the closed boundary: (d f)_e = (-1)^j f(d* e) on functionals
    // representing (n-1-j)-forms.
    if (j < 1 || j > n() - 1) throw std::out_of_range("weak_d degree");
    const SpMat& D = gs_->boundary->complex.D[j - 1];
    return {sgn(j) * Eigen::MatrixXd(D.transpose()), j, Rep::Weak, j - 1,
            Rep::Weak};
}

OpMatrix OperatorAlgebra::to_weak(int j) {
    if (j < 0 || j > n() - 1) throw std::out_of_range("to_weak degree");
    return {Eigen::MatrixXd(gs_->wedge[n() - 1 - j]), j, Rep::Strong,
            n() - 1 - j, Rep::Weak};
}

OpMatrix OperatorAlgebra::star(int k) {
    const int d = n() - 1;
    if (k < 0 || k > d) throw std::out_of_range("star degree");
    Eigen::MatrixXd W = Eigen::MatrixXd(gs_->wedge[d - k]);
    Eigen::MatrixXd S = sgn(k * (d - k)) * gs_->bmass_llt[d - k].solve(W);
    return {S, k, Rep::Strong, d - k, Rep::Strong};
}

const Eigen::MatrixXd& OperatorAlgebra::pinv_phi(int k) {
    if (k < 0 || k >= n()) throw std::out_of_range("pinv_phi degree");
    if (!have_pinv_[k]) {
        pinv_phi_[k] = pseudo_inverse(dtn_->phi_weak(k));
        have_pinv_[k] = 1;
    }
    return pinv_phi_[k];
}

OpMatrix OperatorAlgebra::lambda(int k) {
    if (k == 0) return phi(0);  // Psi vanishes on 0-forms
    OpMatrix inv{pinv_phi(n() - k), n() - k, Rep::Weak, n() - k, Rep::Strong};
    OpMatrix tail = compose(psi_weak(n() - k), compose(inv, psi_weak(k)));
    return add(phi(k), tail, dtn_->signs().lambda(k));
}

OpMatrix OperatorAlgebra::lambda_strong(int k) {
    if (k == 0) return phi_strong(0);
    OpMatrix inv{pinv_phi(n() - k), n() - k, Rep::Weak, n() - k, Rep::Strong};
    OpMatrix tail = compose(psi(n() - k), compose(inv, psi_weak(k)));
    return add(phi_strong(k), tail, dtn_->signs().lambda(k));
}

OpMatrix OperatorAlgebra::pi_block(int k) {
    if (k < 1 || k > n() - 1) throw std::out_of_range("pi_block degree");
    const SignTable& s = dtn_->signs();
    const Eigen::MatrixXd& p11 = dtn_->phi_weak(k);
    const Eigen::MatrixXd& p21 = dtn_->psi_strong(k);
    Eigen::MatrixXd p12 =
        s.pi12_for_input(n() - k) * dtn_->psi_weak(n() - k);
    Eigen::MatrixXd p22 =
        s.pi22_for_input(n() - k) * dtn_->phi_strong(n() - k);
    Eigen::MatrixXd P(p11.rows() + p21.rows(), p11.cols() + p12.cols());
    P << p11, p12, p21, p22;
    // The block matrix mixes representations; annotate by the first column.
    return {P, k, Rep::Strong, k, Rep::Weak};
}

OpMatrix OperatorAlgebra::g(int k, bool via_lambda) {
    if (k < 0 || k > n() - 1) throw std::out_of_range("g degree");
    if (k == n() - 1) return lambda(k);  // d into degree n-1 vanishes
    const int m = n() - k - 2;  // degree of the middle inverted operator
    Eigen::MatrixXd mid =
        via_lambda ? pseudo_inverse(lambda(m).M) : pinv_phi(m);
    OpMatrix inv{mid, m, Rep::Weak, m, Rep::Strong};
    OpMatrix tail = compose(
        to_weak(m + 1),
        compose(strong_d(m), compose(inv, compose(to_weak(k + 1), strong_d(k)))));
    return add(lambda(k), tail, dtn_->signs().g(k));
}

OpMatrix OperatorAlgebra::theta(int k) {
    if (k < 0 || k > n() - 2) throw std::out_of_range("theta degree");
    return compose(strong_d(k), compose(psi(k + 1), strong_d(k)));
}

OpMatrix OperatorAlgebra::theta_alt_dphi2(int k) {
    if (k < 0 || k > n() - 2) throw std::out_of_range("theta degree");
    OpMatrix T = compose(weak_d(n() - 1 - k), compose(phi(n() - 1 - k), phi_strong(k)));
    return scaled(T, dtn_->signs().theta_dphi2(k));
}

OpMatrix OperatorAlgebra::theta_alt_phi2d(int k) {
    if (k < 0 || k > n() - 2) throw std::out_of_range("theta degree");
    OpMatrix T =
        compose(phi(n() - k - 2), compose(phi_strong(k + 1), strong_d(k)));
    return scaled(T, dtn_->signs().theta_phi2d(k));
}

OpMatrix OperatorAlgebra::psi_tilde(int k) {
    if (k < 0 || k > n() - 2) throw std::out_of_range("psi_tilde degree");
    OpMatrix T =
        compose(star(n() - 2 - k), compose(psi(n() - 1 - k), star(k)));
    return scaled(T, dtn_->signs().psitilde(k));
}

Eigen::VectorXd OperatorAlgebra::hilbert_transform(
    int k, const Eigen::VectorXd& weak_psi, double* residual) {
    if (k < 0 || k > n() - 2) throw std::out_of_range("hilbert degree");
    Eigen::VectorXd x = pinv_phi(k) * weak_psi;
    double r = (dtn_->phi_weak(k) * x - weak_psi).norm() /
               (weak_psi.norm() + 1e-300);
    if (residual)
        *residual = r;
    else if (r > 1e-6)
        throw std::domain_error(
            "hilbert_transform: datum not in the image of Phi (residual " +
            std::to_string(r) + ")");
    return strong_d(k).M * x;
}

std::vector<IdentityResult> OperatorAlgebra::identity_suite() {
    std::vector<IdentityResult> out;
    const int nn = n();
    auto push = [&](const std::string& name, int k, double r) {
        out.push_back({name, k, r});
    };
    auto smax = [](const Eigen::MatrixXd& A) {
        if (A.rows() == 0 || A.cols() == 0) return 0.0;
        Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
        return svd.singularValues()(0);
    };
    // L = c * R, compared on the smooth probe subspaces.
    auto prel = [&](const OpMatrix& L, const OpMatrix& R, double c) {
        Eigen::MatrixXd PL = probed(L), PR = c * probed(R);
        return (PL - PR).norm() / (PL.norm() + PR.norm() + 1e-300);
    };
    // composite == 0, measured against the probed factor magnitudes.
    auto pzero = [&](const OpMatrix& comp, double scale) {
        return smax(probed(comp)) / (scale + 1e-300);
    };

    // Lemma-type composition laws of Phi and Psi.
    for (int k = 1; k <= nn - 1; ++k)
        push("lemma_phi_psi", k,
             prel(compose(phi(k - 1), psi(k)), compose(weak_d(k), phi(k)),
                  sgn(k)));
    for (int k = 2; k <= nn - 1; ++k) {
        OpMatrix A = psi(k - 1), B = psi(k);
        push("lemma_psi_sq", k,
             pzero(compose(A, B), smax(probed(A)) * smax(probed(B))));
    }
    for (int k = 0; k <= nn - 2; ++k)
        push("lemma_psi_phi", k,
             prel(compose(psi_weak(nn - 1 - k), phi_strong(k)),
                  compose(phi(k + 1), strong_d(k)), sgn(k + 1)));
    for (int k = 0; k <= nn - 2; ++k) {
        OpMatrix lhs = compose(phi(nn - 1 - k), phi_strong(k));
        OpMatrix rhs = compose(psi_weak(k + 1), strong_d(k));
        if (k >= 1) rhs = add(rhs, compose(weak_d(nn - k), psi_weak(k)));
        push("lemma_phi_sq", k, prel(lhs, rhs, sgn(k * nn)));
    }

    // Remark-type laws of Lambda.
    for (int k = 1; k <= nn - 1; ++k) {
        OpMatrix L = lambda(k), D = strong_d(k - 1);
        push("remark_lambda_d", k,
             pzero(compose(L, D), smax(probed(L)) * smax(probed(D))));
        push("remark_d_lambda", k,
             pzero(compose(weak_d(k), L),
                   smax(probed(L)) * smax(probed(strong_d(k - 1)))));
    }
    for (int k = 0; k <= nn - 1; ++k) {
        OpMatrix A = lambda(nn - 1 - k), B = lambda_strong(k);
        push("remark_lambda_sq", k,
             pzero(compose(A, B), smax(probed(A)) * smax(probed(B))));
    }

    // Internal consistency of the two Lambda representations.
    for (int k = 0; k <= nn - 1; ++k)
        push("lambda_reps", k,
             prel(lambda(k), compose(to_weak(nn - 1 - k), lambda_strong(k)),
                  1.0));

    // Theta: the three expressions agree.
    for (int k = 0; k <= nn - 2; ++k) {
        OpMatrix canon = compose(to_weak(k + 1), theta(k));
        push("theta_dphi2", k, prel(theta_alt_dphi2(k), canon, 1.0));
        push("theta_phi2d", k, prel(theta_alt_phi2d(k), canon, 1.0));
    }

    // PsiTilde is the mass adjoint of Psi, and a cochain map.
    for (int k = 0; k <= nn - 2; ++k) {
        const Eigen::MatrixXd& U = smooth_basis(k + 1);
        const Eigen::MatrixXd& V = smooth_basis(k);
        Eigen::MatrixXd lhs =
            U.transpose() * gs_->bmass_dense[k + 1] * psi_tilde(k).M * V;
        Eigen::MatrixXd rhs = (smooth_basis(k).transpose() *
                               gs_->bmass_dense[k] * psi(k + 1).M * U)
                                  .transpose();
        push("psitilde_adjoint", k,
             (lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1e-300));
    }
    for (int k = 0; k <= nn - 3; ++k) {
        OpMatrix A = psi_tilde(k + 1), B = psi_tilde(k);
        push("psitilde_sq", k,
             pzero(compose(A, B), smax(probed(A)) * smax(probed(B))));
    }

    // G: the two middle-factor routes agree; G kills exact data.
    for (int k = 0; k <= nn - 2; ++k)
        push("g_routes", k, prel(g(k, true), g(k, false), 1.0));
    for (int k = 1; k <= nn - 2; ++k) {
        OpMatrix Gk = g(k, false), D = strong_d(k - 1);
        push("g_d", k,
             pzero(compose(Gk, D), smax(probed(Gk)) * smax(probed(D))));
    }
    return out;
}

}  // namespace hodgedtn
