#pragma once
/**
 * Built-in mesh generators for the test domains.  All generators produce
 * consistently oriented manifold meshes; the resolution parameter scales
 * the number of cells roughly quadratically (2d) or cubically (3d).
 */

#include "hodgedtn/mesh.hpp"

namespace hodgedtn {

/** Triangulated unit disk (polar grid + center fan). */
SimplicialComplex make_disk2d(int resolution);

/** Triangulated annulus with radii 1 and 2 (polar grid). */
SimplicialComplex make_annulus2d(int resolution);

/** Tetrahedralized cube [0,1]^3 (topological ball). */
SimplicialComplex make_ball3d(int resolution);

/** Cube with a concentric cubic cavity (topological spherical shell). */
SimplicialComplex make_shell3d(int resolution);

/** Square annulus extruded in z (topological solid torus). */
SimplicialComplex make_solidtorus3d(int resolution);

/** Axis-aligned rectangle [0,w] x [0,h] on a grid (testing helper). */
SimplicialComplex make_rectangle2d(double w, double h, int nx, int ny);

/** Dispatch by name: disk2d, annulus2d, ball3d, shell3d, solidtorus3d. */
SimplicialComplex make_mesh(const std::string& name, int resolution);

/** Default resolution per generator name. */
int default_resolution(const std::string& name);

}  // namespace hodgedtn
