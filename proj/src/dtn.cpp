#include "hodgedtn/dtn.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

namespace hodgedtn {

namespace {

/** Interior selector P (rows: listed indices, cols: all bulk k-simplices). */
SpMat selector(const std::vector<int>& idx, int ncols) {
    SpMat P(static_cast<int>(idx.size()), ncols);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(idx.size());
    for (int r = 0; r < static_cast<int>(idx.size()); ++r)
        trips.emplace_back(r, idx[r], 1.0);
    P.setFromTriplets(trips.begin(), trips.end());
    return P;
}

/** Stack [[A, B], [C, D]] into one sparse matrix. */
SpMat block2x2(const SpMat& A, const SpMat& B, const SpMat& C, const SpMat& D) {
    const int r0 = A.rows(), r1 = C.rows(), c0 = A.cols(), c1 = B.cols();
    SpMat M(r0 + r1, c0 + c1);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(A.nonZeros() + B.nonZeros() + C.nonZeros() + D.nonZeros());
    auto add = [&](const SpMat& S, int ro, int co) {
        for (int c = 0; c < S.outerSize(); ++c)
            for (SpMat::InnerIterator it(S, c); it; ++it)
                trips.emplace_back(static_cast<int>(it.row()) + ro,
                                   static_cast<int>(it.col()) + co, it.value());
    };
    add(A, 0, 0);
    add(B, 0, c0);
    add(C, r0, 0);
    add(D, r0, c0);
    M.setFromTriplets(trips.begin(), trips.end());
    return M;
}

}  // namespace

DtnAssembler::DtnAssembler(const SimplicialComplex& bulk,
                           const BoundaryComplex& bnd,
                           const GalerkinStructures& gs)
    : bulk_(&bulk), bnd_(&bnd), gs_(&gs) {
    const int n = bulk.dim;
    signs_.n = n;
    interior_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        std::vector<char> on_bnd(bulk.count(k), 0);
        if (k <= n - 1)
            for (int b : bnd.incl[k]) on_bnd[b] = 1;
        for (int i = 0; i < bulk.count(k); ++i)
            if (!on_bnd[i]) interior_[k].push_back(i);
    }
    systems_.resize(n + 1);
    phi_weak_.resize(n);
    psi_strong_.resize(n);
    phi_strong_.resize(n);
    psi_weak_.resize(n);
    have_tangential_.assign(n, 0);
    have_natural_.assign(n, 0);
}

DtnAssembler::DegreeSystem& DtnAssembler::system(int k) {
    if (k < 0 || k > n()) throw std::out_of_range("DtnAssembler::system degree");
    if (systems_[k]) return *systems_[k];
    auto sys = std::make_unique<DegreeSystem>();
    sys->k = k;
    sys->proj = selector(interior_[k], bulk_->count(k));
    const SpMat& P = sys->proj;
    if (k == 0) {
        sys->A = SpMat(P * gs_->stiffness[0] * P.transpose());
    } else {
        const SpMat& Mk = gs_->mass[k];
        const SpMat& Mkm = gs_->mass[k - 1];
        const SpMat& Dkm = bulk_->D[k - 1];
        const SpMat& Kk = gs_->stiffness[k];
        SpMat B = SpMat(-(Dkm.transpose() * (Mk * P.transpose())));
        SpMat C = SpMat(P * (Mk * Dkm));
        SpMat Dblk = SpMat(P * Kk * P.transpose());
        sys->A = block2x2(Mkm, B, C, Dblk);
    }
    sys->A.makeCompressed();
    sys->lu = std::make_unique<Eigen::SparseLU<SpMat>>();
    sys->lu->compute(sys->A);
    if (sys->lu->info() != Eigen::Success)
        throw std::runtime_error("mixed system factorization failed at degree " +
                                 std::to_string(k));
    systems_[k] = std::move(sys);
    return *systems_[k];
}

Eigen::MatrixXd DtnAssembler::solve_chunked(DegreeSystem& sys, const SpMat& rhs) {
    const int cols = static_cast<int>(rhs.cols());
    Eigen::MatrixXd X(rhs.rows(), cols);
    const int chunk = 64;
    for (int c0 = 0; c0 < cols; c0 += chunk) {
        const int w = std::min(chunk, cols - c0);
        Eigen::MatrixXd dense = Eigen::MatrixXd(rhs.middleCols(c0, w));
        X.middleCols(c0, w) = sys.lu->solve(dense);
        if (sys.lu->info() != Eigen::Success)
            throw std::runtime_error("mixed system solve failed");
    }
    return X;
}

void DtnAssembler::assemble_tangential(int k) {
    if (have_tangential_[k]) return;
    const int n = this->n();
    DegreeSystem& sys = system(k);
    const SpMat& P = sys.proj;
    const SpMat& T = gs_->trace_mats[k];
    const int nb = static_cast<int>(T.rows());
    const SpMat& Kk = gs_->stiffness[k];

    if (k == 0) {
        SpMat rhs = SpMat(-(P * (Kk * T.transpose())));
        Eigen::MatrixXd U = solve_chunked(sys, rhs);
        // omega = T^T + P^T U, column e = harmonic extension of basis datum e
        Eigen::MatrixXd Omega =
            Eigen::MatrixXd(T.transpose()) + P.transpose() * U;
        phi_weak_[0] = signs_.flux() * (T * (Kk * Omega));
        psi_strong_[0] = Eigen::MatrixXd::Zero(0, nb);
        have_tangential_[0] = 1;
        return;
    }

    const SpMat& Mk = gs_->mass[k];
    const SpMat& Dkm = bulk_->D[k - 1];
    const int ns = bulk_->count(k - 1);
    SpMat top = SpMat(Dkm.transpose() * (Mk * T.transpose()));
    SpMat bot = SpMat(-(P * (Kk * T.transpose())));
    SpMat rhs = block2x2(top, SpMat(top.rows(), 0), bot, SpMat(bot.rows(), 0));
    Eigen::MatrixXd X = solve_chunked(sys, rhs);
    Eigen::MatrixXd Sigma = X.topRows(ns);
    Eigen::MatrixXd Omega =
        Eigen::MatrixXd(T.transpose()) + P.transpose() * X.bottomRows(X.rows() - ns);
    phi_weak_[k] = signs_.flux() * (T * (Mk * (Dkm * Sigma) + Kk * Omega));
    psi_strong_[k] = signs_.sigma() * (gs_->trace_mats[k - 1] * Sigma);
    (void)n;
    have_tangential_[k] = 1;
}

void DtnAssembler::assemble_natural(int j) {
    if (have_natural_[j]) return;
    const int n = this->n();
    const int k = n - j;  // bulk degree of the adjoint problem, 1 <= k <= n
    DegreeSystem& sys = system(k);
    const SpMat& P = sys.proj;
    const SpMat& Tkm = gs_->trace_mats[k - 1];
    const SpMat& W = gs_->wedge[k - 1];  // rows deg k-1, cols deg j
    const int nb = static_cast<int>(W.cols());
    const int ns = bulk_->count(k - 1);

    SpMat top = SpMat(-(Tkm.transpose() * W));
    SpMat rhs = block2x2(top, SpMat(top.rows(), 0),
                         SpMat(static_cast<int>(P.rows()), nb), SpMat(P.rows(), 0));
    Eigen::MatrixXd X = solve_chunked(sys, rhs);
    Eigen::MatrixXd Sigma = X.topRows(ns);
    Eigen::MatrixXd Eps = P.transpose() * X.bottomRows(X.rows() - ns);

    phi_strong_[j] = signs_.pi22_for_input(j) * (Tkm * Sigma);
    if (k == n) {
        psi_weak_[j] = Eigen::MatrixXd::Zero(0, nb);
    } else {
        const SpMat& Mk = gs_->mass[k];
        const SpMat& Dkm = bulk_->D[k - 1];
        const SpMat& Kk = gs_->stiffness[k];
        psi_weak_[j] = signs_.pi12_for_input(j) *
                       (gs_->trace_mats[k] * (Mk * (Dkm * Sigma) + Kk * Eps));
    }
    have_natural_[j] = 1;
}

const Eigen::MatrixXd& DtnAssembler::phi_weak(int k) {
    if (k < 0 || k >= n()) throw std::out_of_range("phi_weak degree");
    assemble_tangential(k);
    return phi_weak_[k];
}

const Eigen::MatrixXd& DtnAssembler::psi_strong(int k) {
    if (k < 0 || k >= n()) throw std::out_of_range("psi_strong degree");
    assemble_tangential(k);
    return psi_strong_[k];
}

const Eigen::MatrixXd& DtnAssembler::phi_strong(int j) {
    if (j < 0 || j >= n()) throw std::out_of_range("phi_strong degree");
    assemble_natural(j);
    return phi_strong_[j];
}

const Eigen::MatrixXd& DtnAssembler::psi_weak(int j) {
    if (j < 0 || j >= n()) throw std::out_of_range("psi_weak degree");
    assemble_natural(j);
    return psi_weak_[j];
}

HarmonicSolution DtnAssembler::solve_bvp(const Cochain& phi) {
    if (phi.domain != Domain::Boundary || phi.rep != Rep::Strong)
        throw std::invalid_argument("solve_bvp expects strong boundary data");
    const int k = phi.degree;
    if (k < 0 || k >= n()) throw std::out_of_range("solve_bvp degree");
    DegreeSystem& sys = system(k);
    const SpMat& P = sys.proj;
    const SpMat& T = gs_->trace_mats[k];
    const SpMat& Kk = gs_->stiffness[k];

    HarmonicSolution sol;
    sol.omega = {k, Domain::Bulk, Rep::Strong, Eigen::VectorXd()};
    sol.flux = {k, Domain::Boundary, Rep::Weak, Eigen::VectorXd()};
    sol.psi = {k - 1, Domain::Boundary, Rep::Strong, Eigen::VectorXd()};

    if (k == 0) {
        Eigen::VectorXd rhs = -(P * (Kk * (T.transpose() * phi.values)));
        Eigen::VectorXd u = sys.lu->solve(rhs);
        Eigen::VectorXd omega = T.transpose() * phi.values + P.transpose() * u;
        sol.omega.values = omega;
        sol.sigma = {-1, Domain::Bulk, Rep::Strong, Eigen::VectorXd()};
        sol.flux.values = signs_.flux() * (T * (Kk * omega));
        Eigen::VectorXd res = P * (Kk * omega);
        sol.residual = res.norm() / (omega.norm() * Kk.norm() + 1e-300);
        return sol;
    }

    const SpMat& Mk = gs_->mass[k];
    const SpMat& Dkm = bulk_->D[k - 1];
    const int ns = bulk_->count(k - 1);
    Eigen::VectorXd rhs(sys.A.rows());
    rhs.head(ns) = Dkm.transpose() * (Mk * (T.transpose() * phi.values));
    rhs.tail(rhs.size() - ns) = -(P * (Kk * (T.transpose() * phi.values)));
    Eigen::VectorXd x = sys.lu->solve(rhs);
    Eigen::VectorXd sigma = x.head(ns);
    Eigen::VectorXd omega =
        T.transpose() * phi.values + P.transpose() * x.tail(x.size() - ns);
    sol.omega.values = omega;
    sol.sigma = {k - 1, Domain::Bulk, Rep::Strong, sigma};
    Eigen::VectorXd bulk_flux = Mk * (Dkm * sigma) + Kk * omega;
    sol.flux.values = signs_.flux() * (T * bulk_flux);
    sol.psi.values = signs_.sigma() * (gs_->trace_mats[k - 1] * sigma);
    Eigen::VectorXd res = P * bulk_flux;
    sol.residual =
        res.norm() / (bulk_flux.norm() + omega.norm() + sigma.norm() + 1e-300);
    return sol;
}

Eigen::MatrixXd DtnAssembler::harmonic_neumann_fields(int k) {
    // Kernel vectors of Phi_k give boundary data whose harmonic extensions
    // satisfy d omega = 0 and delta omega = 0 exactly (the quadratic form
    // phi^T Phi phi equals ||d omega||^2 + ||sigma||^2).
    const Eigen::MatrixXd& Phi = phi_weak(k);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(Phi, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double tol = 1e-8 * (s.size() ? s(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++rank;
    const int null_dim = static_cast<int>(Phi.cols()) - rank;
    Eigen::MatrixXd H(bulk_->count(k), null_dim);
    for (int j = 0; j < null_dim; ++j) {
        Cochain phi{k, Domain::Boundary, Rep::Strong,
                    svd.matrixV().col(rank + j)};
        H.col(j) = solve_bvp(phi).omega.values;
    }
    return H;
}

}  // namespace hodgedtn
