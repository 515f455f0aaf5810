#pragma once
/**
 * Exact rank of sparse integer matrices over the rationals, used by the
 * simplicial cohomology oracle.  Elimination prefers unit pivots (which
 * collapse simplicial coboundary matrices almost entirely) and falls back
 * to exact rational pivots for any remainder, so the result carries no
 * floating-point uncertainty.
 */

#include <Eigen/Sparse>
#include <vector>

#include "hodgedtn/mesh.hpp"

namespace hodgedtn {

/** Sparse integer matrix in triplet form. */
struct IntTriplets {
    int rows = 0, cols = 0;
    std::vector<int> r, c;
    std::vector<long long> v;
    void add(int i, int j, long long x) {
        r.push_back(i);
        c.push_back(j);
        v.push_back(x);
    }
};

/** Exact rank over Q. */
int exact_rank(const IntTriplets& m);

/** Convert a +-1 incidence matrix (doubles holding exact integers). */
IntTriplets to_int_triplets(const SpMat& m);

/** Exact absolute and relative Betti numbers of a complex with boundary.
 *  Relative cochains are those vanishing on all boundary simplices. */
struct BettiTable {
    std::vector<int> absolute;  ///< beta_k(M), k = 0..n
    std::vector<int> relative;  ///< beta_k(M, dM), k = 0..n
};

BettiTable simplicial_betti(const SimplicialComplex& bulk,
                            const BoundaryComplex& boundary);

}  // namespace hodgedtn
