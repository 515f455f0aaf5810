#include <doctest.h>

#include "hodgedtn/cylinder.hpp"

using namespace hodgedtn;

TEST_CASE("disk DN eigenvalues") {
    CHECK(disk_dtn_mode(0) == 0.0);
    CHECK(disk_dtn_mode(3) == 3.0);
    CHECK(disk_dtn_mode(-4) == 4.0);
}

TEST_CASE("mode blocks satisfy the closed-form structure") {
    for (int m : {0, 1, 2, 7}) {
        ModeBlock b = mode_solve(m, 1.0);
        CHECK(b.dim == (m == 0 ? 2 : 4));
        // Phi_0 squares to m^2 (B^2 = m^2 I for m >= 1, B_0^2 = 0)
        Eigen::MatrixXd sq = b.phi0 * b.phi0;
        if (m == 0) {
            CHECK(sq.norm() == doctest::Approx(0.0).epsilon(1e-14));
        } else {
            Eigen::MatrixXd want =
                double(m) * double(m) *
                Eigen::MatrixXd::Identity(b.dim, b.dim);
            CHECK((sq - want).norm() < 1e-12 * want.norm());
        }
        // star star = +1 on 0-forms of a 1-dimensional boundary
        Eigen::MatrixXd ss = b.star1 * b.star0;
        CHECK((ss - Eigen::MatrixXd::Identity(b.dim, b.dim)).norm() < 1e-14);
        // wedge pairing is the mass pairing twisted by the star
        CHECK((b.wedge01 - b.mass * b.star1.inverse()).norm() <
              1e-12 * b.mass.norm());
    }
}

TEST_CASE("oracle identity suite is exact") {
    auto rs = oracle_identity_suite(20, 1.0);
    CHECK(rs.size() > 0);
    CHECK(oracle_max_residual(rs) < 1e-12);
    // a different cylinder length as well
    CHECK(oracle_max_residual(oracle_identity_suite(12, 0.35)) < 1e-11);
}

TEST_CASE("per-mode topology accounting") {
    OracleTopology t = oracle_psi_accounting(20, 1.0);
    CHECK(t.ker_phi0 == 1);   // H^0 of the cylinder
    CHECK(t.ker_phi1 == 1);   // H^1 of the cylinder
    CHECK(t.psi_hom0 == 2);   // H^1(M, dM) + H^0(M)
    CHECK(t.psi_hom1 == 2);   // H^2(M, dM) + H^1(M)
}
