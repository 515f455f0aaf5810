#include <doctest.h>

#include <Eigen/Dense>

#include "hodgedtn/galerkin.hpp"
#include "hodgedtn/generators.hpp"

using namespace hodgedtn;

namespace {

SimplicialComplex unit_triangle() {
    Eigen::MatrixXd v(3, 2);
    v << 0, 0, 1, 0, 0, 1;
    return build_complex(v, {{0, 1, 2, -1}}, 2);
}

}  // namespace

TEST_CASE("vertex mass matrix of a single triangle") {
    SimplicialComplex c = unit_triangle();
    Eigen::MatrixXd M = Eigen::MatrixXd(whitney_mass(c, 0));
    const double area = 0.5;
    Eigen::MatrixXd want(3, 3);
    want << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    want *= area / 12.0;
    CHECK((M - want).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("top-degree mass is diagonal with 1/volume") {
    SimplicialComplex c = make_mesh("ball3d", 2);
    Eigen::MatrixXd M = Eigen::MatrixXd(whitney_mass(c, 3));
    for (int i = 0; i < c.count(3); ++i) {
        Eigen::MatrixXd coords = c.simplex_coords(3, i);
        Eigen::Matrix3d J;
        for (int r = 0; r < 3; ++r)
            J.row(r) = coords.row(r + 1) - coords.row(0);
        double vol = std::abs(J.determinant()) / 6.0;
        CHECK(M(i, i) == doctest::Approx(1.0 / vol).epsilon(1e-12));
        CHECK(M.row(i).sum() == doctest::Approx(M(i, i)).epsilon(1e-12));
    }
}

TEST_CASE("mass matrices are symmetric positive definite") {
    SimplicialComplex c = make_mesh("annulus2d", 3);
    BoundaryComplex bnd = extract_boundary(c);
    GalerkinStructures gs = assemble_galerkin(c, bnd);
    for (int k = 0; k <= c.dim; ++k) {
        Eigen::MatrixXd M = Eigen::MatrixXd(gs.mass[k]);
        CHECK((M - M.transpose()).norm() < 1e-12 * M.norm());
        Eigen::LLT<Eigen::MatrixXd> llt(M);
        CHECK(llt.info() == Eigen::Success);
    }
}

TEST_CASE("boundary wedge pairing is graded antisymmetric") {
    SimplicialComplex c = make_mesh("solidtorus3d", 2);
    BoundaryComplex bnd = extract_boundary(c);
    GalerkinStructures gs = assemble_galerkin(c, bnd);
    const int n = c.dim;
    for (int k = 0; k <= n - 1; ++k) {
        double sign = ((k * (n - 1 - k)) % 2 == 0) ? 1.0 : -1.0;
        SpMat diff = gs.wedge[n - 1 - k] - sign * SpMat(gs.wedge[k].transpose());
        CHECK(diff.norm() < 1e-12 * gs.wedge[k].norm());
    }
}

TEST_CASE("discrete Stokes theorem") {
    // int_M d(omega) = int_dM i* omega for Whitney (n-1)-forms.
    SimplicialComplex c = make_mesh("annulus2d", 4);
    BoundaryComplex bnd = extract_boundary(c);
    GalerkinStructures gs = assemble_galerkin(c, bnd);
    const int n = c.dim;
    // integration of a top form = pairing with the all-ones top cochain
    // through the (diagonal) top mass inverse times volume: for Whitney top
    // forms, the integral of basis form e is exactly its coefficient.
    Eigen::VectorXd omega = Eigen::VectorXd::Random(c.count(n - 1));
    double bulk = (c.D[n - 1] * omega).sum();
    Eigen::VectorXd tr = gs.trace_mats[n - 1] * omega;
    double bnd_int = tr.sum();
    CHECK(bulk == doctest::Approx(bnd_int).epsilon(1e-10));
}

TEST_CASE("weak codifferential and weak_to_strong are mass-consistent") {
    SimplicialComplex c = make_mesh("disk2d", 5);
    BoundaryComplex bnd = extract_boundary(c);
    GalerkinStructures gs = assemble_galerkin(c, bnd);
    Cochain omega;
    omega.degree = 1;
    omega.values = Eigen::VectorXd::Random(c.count(1));
    Cochain r = weak_codifferential(gs, omega);
    CHECK(r.rep == Rep::Weak);
    CHECK(r.degree == 0);
    Cochain s = weak_to_strong(gs, r);
    // <s, f>_M = r(f) for all f by construction
    Eigen::VectorXd back = gs.mass[0] * s.values;
    CHECK((back - r.values).norm() < 1e-10 * r.values.norm());
}
