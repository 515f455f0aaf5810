#pragma once
/**
 * Simplicial complexes for compact oriented Riemannian manifolds with
 * boundary, discretized as embedded simplicial meshes of dimension 2 or 3.
 *
 * Simplices are stored with sorted vertex tuples; the orientation of a
 * simplex is carried as a separate sign relative to the sorted tuple.
 * Top simplices are oriented positively with respect to the embedding;
 * boundary (n-1)-simplices carry the orientation induced by the outward
 * normal (equivalently, by Stokes' theorem applied to the oriented bulk).
 */

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace hodgedtn {

using SpMat = Eigen::SparseMatrix<double>;

/** Error raised for malformed, non-manifold or non-orientable meshes. */
struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/** Up to 4 vertex ids (n <= 3 means simplices have <= 4 vertices). */
using VertTuple = std::array<int, 4>;

/** One simplex dimension level of a complex. */
struct SimplexLevel {
    std::vector<VertTuple> verts;  ///< sorted vertex ids, unused slots = -1
    std::vector<int> orient;       ///< +-1, orientation relative to sorted tuple
    int count() const { return static_cast<int>(verts.size()); }
};

/**
 * A simplicial complex of dimension dim embedded in R^ambient, with all
 * sub-simplices enumerated and integer coboundary (signed incidence)
 * matrices D[k] : C^k -> C^{k+1} satisfying D[k+1] * D[k] = 0 exactly.
 */
struct SimplicialComplex {
    int dim = 0;                 ///< intrinsic dimension n
    int ambient = 0;             ///< number of coordinates per vertex
    Eigen::MatrixXd vertices;    ///< (#vertices) x ambient coordinates
    std::vector<SimplexLevel> levels;  ///< levels[k] = k-simplices, k=0..dim
    std::vector<SpMat> D;              ///< D[k], k=0..dim-1, entries in {-1,0,1}

    int count(int k) const { return levels.at(k).count(); }

    /** Index of the sorted tuple in level k, or -1 if absent. */
    int find(int k, const VertTuple& sorted) const;

    /** Coordinates of the vertices of simplex (k, i), one row per vertex. */
    Eigen::MatrixXd simplex_coords(int k, int i) const;

    /** Longest edge length over the whole complex. */
    double mesh_size() const;

    // internal lookup tables built by finalize()
    std::vector<std::vector<std::pair<VertTuple, int>>> lookup;
    void finalize();  ///< sort lookup tables and assemble D[k]
};

/**
 * The boundary complex of a bulk complex: an (n-1)-dimensional closed
 * complex whose top simplices carry the induced (outward-normal-first)
 * orientation, together with the inclusion maps into the bulk.
 */
struct BoundaryComplex {
    SimplicialComplex complex;               ///< intrinsic boundary complex
    std::vector<std::vector<int>> incl;      ///< incl[k][e] = bulk index
    std::vector<std::vector<int>> incl_sign; ///< orientation sign of inclusion
    int count(int k) const { return complex.count(k); }

    /** Signed trace matrix T_k : bulk k-cochains -> boundary k-cochains. */
    SpMat trace_matrix(const SimplicialComplex& bulk, int k) const;
};

/** Representation tag for cochains and operator domains/codomains. */
enum class Rep { Strong, Weak };

/** Where a cochain lives. */
enum class Domain { Bulk, Boundary };

/**
 * A k-cochain: one value per k-simplex.  Weak cochains are functionals
 * (mass- or wedge-paired values); strong cochains are coefficient vectors
 * in the Whitney basis.
 */
struct Cochain {
    int degree = 0;
    Domain domain = Domain::Bulk;
    Rep rep = Rep::Strong;
    Eigen::VectorXd values;
};

/** Parse the mesh text format (dim/vertices/cells records, '#' comments). */
SimplicialComplex load_mesh_text(const std::string& text);

/** Load a mesh file; throws MeshError on malformed or inconsistent input. */
SimplicialComplex load_mesh(const std::string& path);

/** Serialize a complex back to the text format (top cells only). */
std::string write_mesh_text(const SimplicialComplex& c);

/**
 * Build a complex from raw vertices and top cells.  Checks manifoldness
 * (every (n-1)-simplex in at most two tops), orients all top simplices
 * positively with respect to the embedding, and verifies that induced
 * orientations cancel on interior faces.
 */
SimplicialComplex build_complex(const Eigen::MatrixXd& vertices,
                                const std::vector<VertTuple>& cells, int dim);

/** Extract the boundary complex with induced orientation; throws if empty. */
BoundaryComplex extract_boundary(const SimplicialComplex& bulk);

/** Pull a bulk strong k-cochain back to the boundary (i^* = restriction). */
Cochain trace(const SimplicialComplex& bulk, const BoundaryComplex& bnd,
              const Cochain& omega);

/** Number of connected components of the boundary. */
int boundary_component_count(const BoundaryComplex& bnd);

/** Uniform 4:1 refinement for dim == 2 meshes (midpoint subdivision). */
SimplicialComplex refine_uniform(const SimplicialComplex& c);

}  // namespace hodgedtn
