#include <doctest.h>

#include "hodgedtn/generators.hpp"
#include "hodgedtn/mesh.hpp"

using namespace hodgedtn;

namespace {

const char* kSquareMesh =
    "# unit square, two triangles\n"
    "dim 2\n"
    "vertices 4\n"
    "0 0\n"
    "1 0\n"
    "0 1\n"
    "1 1\n"
    "cells 2\n"
    "0 1 2\n"
    "1 3 2\n";

}  // namespace

TEST_CASE("mesh text roundtrip") {
    SimplicialComplex c = load_mesh_text(kSquareMesh);
    CHECK(c.dim == 2);
    CHECK(c.count(0) == 4);
    CHECK(c.count(1) == 5);
    CHECK(c.count(2) == 2);
    SimplicialComplex c2 = load_mesh_text(write_mesh_text(c));
    CHECK(c2.count(1) == c.count(1));
    CHECK(c2.vertices.isApprox(c.vertices));
}

TEST_CASE("malformed mesh text throws") {
    CHECK_THROWS_AS(load_mesh_text("dim 5\nvertices 0\ncells 0\n"), MeshError);
    CHECK_THROWS_AS(load_mesh_text("vertices 3\n"), MeshError);
    // cell referencing a missing vertex
    CHECK_THROWS_AS(
        load_mesh_text("dim 2\nvertices 3\n0 0\n1 0\n0 1\ncells 1\n0 1 7\n"),
        MeshError);
}

TEST_CASE("non-manifold mesh rejected") {
    // three triangles sharing one edge
    const char* bad =
        "dim 2\nvertices 5\n0 0\n1 0\n0 1\n0 -1\n-1 0\n"
        "cells 3\n0 1 2\n0 1 3\n0 1 4\n";
    CHECK_THROWS_AS(load_mesh_text(bad), MeshError);
}

TEST_CASE("coboundary matrices are a complex") {
    for (const char* name : {"annulus2d", "solidtorus3d"}) {
        SimplicialComplex c = make_mesh(name, 3);
        for (int k = 0; k + 1 < c.dim; ++k) {
            SpMat z = c.D[k + 1] * c.D[k];
            CHECK(z.norm() == 0.0);
        }
    }
}

TEST_CASE("boundary extraction and induced orientation") {
    SimplicialComplex disk = make_mesh("disk2d", 5);
    BoundaryComplex bnd = extract_boundary(disk);
    CHECK(bnd.complex.dim == 1);
    CHECK(boundary_component_count(bnd) == 1);
    // closed boundary: every vertex meets exactly two edges, and the induced
    // orientation makes the boundary a cycle (D maps constants to zero).
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(bnd.count(0));
    CHECK((bnd.complex.D[0] * ones).norm() == doctest::Approx(0.0));

    SimplicialComplex ann = make_mesh("annulus2d", 3);
    CHECK(boundary_component_count(extract_boundary(ann)) == 2);
    SimplicialComplex shell = make_mesh("shell3d", 2);
    CHECK(boundary_component_count(extract_boundary(shell)) == 2);
}

TEST_CASE("trace restricts cochains to the boundary") {
    SimplicialComplex c = load_mesh_text(kSquareMesh);
    BoundaryComplex bnd = extract_boundary(c);
    Cochain f;
    f.degree = 0;
    f.values = Eigen::VectorXd::LinSpaced(c.count(0), 0.0, 3.0);
    Cochain g = trace(c, bnd, f);
    CHECK(g.domain == Domain::Boundary);
    for (int e = 0; e < bnd.count(0); ++e)
        CHECK(g.values(e) == f.values(bnd.incl[0][e]));
}

TEST_CASE("uniform refinement quadruples triangles") {
    SimplicialComplex c = make_mesh("annulus2d", 3);
    SimplicialComplex f = refine_uniform(c);
    CHECK(f.count(2) == 4 * c.count(2));
    CHECK(f.mesh_size() < c.mesh_size());
    // refinement preserves the boundary component count
    CHECK(boundary_component_count(extract_boundary(f)) == 2);
}

TEST_CASE("generators produce the advertised manifolds") {
    for (const char* name :
         {"disk2d", "annulus2d", "ball3d", "shell3d", "solidtorus3d"}) {
        SimplicialComplex c = make_mesh(name, default_resolution(name) > 4
                                                  ? 4
                                                  : default_resolution(name));
        CHECK(c.count(c.dim) > 0);
        CHECK_NOTHROW(extract_boundary(c));
    }
    CHECK_THROWS_AS(make_mesh("klein_bottle", 3), MeshError);
}
