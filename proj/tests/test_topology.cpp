#include <doctest.h>

#include <memory>

#include "hodgedtn/generators.hpp"
#include "hodgedtn/topology.hpp"

using namespace hodgedtn;

namespace {

struct Fixture {
    SimplicialComplex bulk;
    BoundaryComplex bnd;
    GalerkinStructures gs;
    std::unique_ptr<DtnAssembler> dtn;
    std::unique_ptr<OperatorAlgebra> alg;
    std::unique_ptr<TopologyAnalyzer> topo;

    explicit Fixture(const char* name, int res)
        : bulk(make_mesh(name, res)) {
        bnd = extract_boundary(bulk);
        gs = assemble_galerkin(bulk, bnd);
        dtn = std::make_unique<DtnAssembler>(bulk, bnd, gs);
        alg = std::make_unique<OperatorAlgebra>(*dtn, gs);
        topo = std::make_unique<TopologyAnalyzer>(*alg, gs);
    }
};

}  // namespace

TEST_CASE("numerical rank by largest singular value gap") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(6, 6);
    RankReport r = numerical_rank(I, 1e3);
    CHECK(r.rank == 6);
    CHECK(r.null_dim == 0);
    CHECK_FALSE(r.ambiguous);

    Eigen::VectorXd d(3);
    d << 1.0, 1.0, 1e-9;
    RankReport r2 = numerical_rank(Eigen::MatrixXd(d.asDiagonal()), 1e3);
    CHECK(r2.rank == 2);
    CHECK(r2.null_dim == 1);
    CHECK_FALSE(r2.ambiguous);

    // a smooth decay all the way to the floor has no convincing gap
    Eigen::VectorXd s(16);
    for (int i = 0; i < 16; ++i) s(i) = std::pow(10.0, -i);
    RankReport r3 = numerical_rank(s, 16, 1e3);
    CHECK(r3.ambiguous);
}

TEST_CASE("numerical rank is scale invariant") {
    Eigen::MatrixXd A(3, 3);
    A << 1, 2, 3, 4, 5, 6, 7, 8, 9;  // rank 2
    for (double c : {1e-6, 1.0, 1e6}) {
        RankReport r = numerical_rank(Eigen::MatrixXd(c * A), 1e3);
        CHECK(r.rank == 2);
        CHECK_FALSE(r.ambiguous);
    }
}

TEST_CASE("zero and empty matrices") {
    RankReport r = numerical_rank(Eigen::MatrixXd::Zero(4, 5), 1e3);
    CHECK(r.rank == 0);
    CHECK(r.null_dim == 5);
    RankReport e = numerical_rank(Eigen::MatrixXd(0, 3), 1e3);
    CHECK(e.null_dim == 3);
}

TEST_CASE("kernel basis is orthonormal and annihilated") {
    Eigen::MatrixXd A(2, 3);
    A << 1, 0, 1, 0, 1, 1;
    Eigen::MatrixXd K = TopologyAnalyzer::kernel_basis(A, 1e3);
    CHECK(K.cols() == 1);
    CHECK((A * K).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(K.col(0).norm() == doctest::Approx(1.0));
}

TEST_CASE("weighted_matrix refuses weak inputs") {
    Fixture f("annulus2d", 3);
    OpMatrix weak_in = f.alg->weak_d(1);
    CHECK_THROWS_AS(weighted_matrix(weak_in, f.gs), std::logic_error);
}

TEST_CASE("annulus boundary data recovers the full cohomology") {
    Fixture f("annulus2d", 4);
    CHECK(f.topo->betti_from_phi(0) == 1);
    CHECK(f.topo->betti_from_phi(1) == 1);
    CHECK(f.topo->psi_homology(0).dim == 2);
    CHECK(f.topo->psi_homology(1).dim == 2);
    CHECK(f.topo->echo_dimension(0) == 1);
    CHECK(f.topo->cor3_dimension() == 1);
    for (int k = 0; k <= 1; ++k) {
        FredholmReport fr = f.topo->fredholm(k);
        CHECK(fr.index() == 0);
        CHECK(fr.ortho_residual < 1e-8);
        CHECK(f.topo->ker_containment_angle(k) < 1e-6);
        CHECK(f.topo->image_containment_residual(k) < 1e-8);
    }
}

TEST_CASE("auxiliary cochain complexes on the boundary") {
    Fixture f("annulus2d", 4);
    // The Theta complex recovers the cohomology of the two boundary
    // circles exactly.
    CHECK(f.topo->theta_cohomology(0) == 2);
    CHECK(f.topo->theta_cohomology(1) == 2);
    // The PsiTilde complex is built from the Galerkin star, whose wedge
    // pairing has a grid-scale (checkerboard) kernel on circles with an
    // even number of edges; its cohomology count can only overshoot.
    CHECK(f.topo->psi_tilde_cohomology(0) >= f.topo->theta_cohomology(0));
}
