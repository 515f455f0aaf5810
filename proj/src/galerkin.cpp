#include "hodgedtn/galerkin.hpp"

#include <cmath>
#include <functional>

namespace hodgedtn {

namespace {

/** Geometry of one d-simplex embedded in R^a: unsigned volume and the
 *  barycentric gradients (rows), computed intrinsically via the pseudo-
 *  inverse so the same code serves bulk and boundary simplices. */
struct ElementGeometry {
    double volume = 0;
    Eigen::MatrixXd grads;  ///< (d+1) x a, grads.row(i) = dlambda_i
    Eigen::MatrixXd edges;  ///< a x d, columns p_i - p_0
};

ElementGeometry element_geometry(const Eigen::MatrixXd& pts) {
    const int d = static_cast<int>(pts.rows()) - 1;
    const int a = static_cast<int>(pts.cols());
    ElementGeometry g;
    g.edges.resize(a, d);
    for (int i = 1; i <= d; ++i) g.edges.col(i - 1) = (pts.row(i) - pts.row(0)).transpose();
    Eigen::MatrixXd gram = g.edges.transpose() * g.edges;
    double det = gram.determinant();
    if (det <= 0) throw MeshError("degenerate simplex in element geometry");
    double dfac = 1;
    for (int i = 2; i <= d; ++i) dfac *= i;
    g.volume = std::sqrt(det) / dfac;
    Eigen::MatrixXd gi = gram.inverse();
    g.grads.resize(d + 1, a);
    g.grads.bottomRows(d) = gi * g.edges.transpose();
    g.grads.row(0) = -g.grads.bottomRows(d).colwise().sum();
    return g;
}

/** All k-subsets of {0..d} in lexicographic order. */
std::vector<std::vector<int>> subsets(int d, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k + 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= d; ++v) {
            cur[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/** Gram determinant of two lists of barycentric gradients. */
double gram_det(const ElementGeometry& g, const std::vector<int>& a,
                const std::vector<int>& b) {
    const int k = static_cast<int>(a.size());
    if (k == 0) return 1.0;
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m(i, j) = g.grads.row(a[i]).dot(g.grads.row(b[j]));
    return m.determinant();
}

/** mass contribution: <w_sigma, w_tau> over one top d-simplex.
 *  w_sigma = k! sum_i (-1)^i lambda_{s_i} dlambda_{s_0}^...^(omit i)^...  */
double whitney_inner(const ElementGeometry& g, int d, const std::vector<int>& s,
                     const std::vector<int>& t) {
    const int k = static_cast<int>(s.size()) - 1;
    const double scale = factorial(k) * factorial(k);
    const double base = g.volume / ((d + 1.0) * (d + 2.0));
    double acc = 0;
    std::vector<int> si, tj;
    for (int i = 0; i <= k; ++i) {
        si.clear();
        for (int q = 0; q <= k; ++q)
            if (q != i) si.push_back(s[q]);
        for (int j = 0; j <= k; ++j) {
            tj.clear();
            for (int q = 0; q <= k; ++q)
                if (q != j) tj.push_back(t[q]);
            double ii = base * (1.0 + (s[i] == t[j] ? 1.0 : 0.0));
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * ii * gram_det(g, si, tj);
        }
    }
    return scale * acc;
}

}  // namespace

SpMat whitney_mass(const SimplicialComplex& c, int k) {
    const int d = c.dim;
    std::vector<Eigen::Triplet<double>> trips;
    auto subs = subsets(d, k);
    for (int top = 0; top < c.count(d); ++top) {
        ElementGeometry g = element_geometry(c.simplex_coords(d, top));
        const VertTuple& tv = c.levels[d].verts[top];
        // global indices and signs of the k-faces of this top simplex
        std::vector<int> idx(subs.size());
        std::vector<int> sgn(subs.size());
        for (size_t a = 0; a < subs.size(); ++a) {
            VertTuple f{-1, -1, -1, -1};
            for (size_t q = 0; q < subs[a].size(); ++q) f[q] = tv[subs[a][q]];
            idx[a] = c.find(k, f);
            sgn[a] = c.levels[k].orient[idx[a]];
        }
        for (size_t a = 0; a < subs.size(); ++a)
            for (size_t b = 0; b < subs.size(); ++b) {
                double val = sgn[a] * sgn[b] * whitney_inner(g, d, subs[a], subs[b]);
                trips.emplace_back(idx[a], idx[b], val);
            }
    }
    SpMat m(c.count(k), c.count(k));
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

SpMat boundary_wedge(const SimplicialComplex& c, int k) {
    const int d = c.dim;  // boundary dimension n-1
    const int l = d - k;
    std::vector<Eigen::Triplet<double>> trips;
    auto subs_k = subsets(d, k);
    auto subs_l = subsets(d, l);
    const double scale = factorial(k) * factorial(l) / factorial(d);

    for (int top = 0; top < c.count(d); ++top) {
        ElementGeometry g = element_geometry(c.simplex_coords(d, top));
        const VertTuple& tv = c.levels[d].verts[top];
        const int s_top = c.levels[d].orient[top];  // induced orientation sign

        auto face_of = [&](const std::vector<int>& sub, int deg) {
            VertTuple f{-1, -1, -1, -1};
            for (size_t q = 0; q < sub.size(); ++q) f[q] = tv[sub[q]];
            return c.find(deg, f);
        };

        // evaluate a constant d-form (wedge of d gradient covectors, given
        // as local vertex indices) on the oriented edge frame of the simplex
        auto dform = [&](const std::vector<int>& covs) {
            Eigen::MatrixXd m(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    m(i, j) = g.grads.row(covs[i]).dot(g.edges.col(j));
            return m.determinant();
        };

        std::vector<int> covs(d);
        for (const auto& s : subs_k) {
            int es = face_of(s, k);
            int sg_s = c.levels[k].orient[es];
            for (const auto& t : subs_l) {
                int et = face_of(t, l);
                int sg_t = c.levels[l].orient[et];
                double acc = 0;
                for (int i = 0; i <= k; ++i) {
                    for (int j = 0; j <= l; ++j) {
                        int m = 0;
                        for (int q = 0; q <= k; ++q)
                            if (q != i) covs[m++] = s[q];
                        for (int q = 0; q <= l; ++q)
                            if (q != j) covs[m++] = t[q];
                        double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                        // exact integral of lambda_{s_i} lambda_{t_j} times a
                        // constant d-form over the simplex
                        double lam = (1.0 + (s[i] == t[j] ? 1.0 : 0.0)) /
                                     ((d + 1.0) * (d + 2.0));
                        acc += sign * lam * dform(covs);
                    }
                }
                double val = scale * s_top * sg_s * sg_t * acc;
                trips.emplace_back(es, et, val);
            }
        }
    }
    SpMat m(c.count(k), c.count(l));
    m.setFromTriplets(trips.begin(), trips.end());
    m.prune([](int, int, double v) { return std::abs(v) > 0; });
    return m;
}

GalerkinStructures assemble_galerkin(const SimplicialComplex& bulk,
                                     const BoundaryComplex& boundary) {
    const int n = bulk.dim;
    GalerkinStructures gs;
    gs.bulk = &bulk;
    gs.boundary = &boundary;
    gs.mass.resize(n + 1);
    for (int k = 0; k <= n; ++k) gs.mass[k] = whitney_mass(bulk, k);
    gs.bmass.resize(n);
    gs.wedge.resize(n);
    gs.bmass_dense.resize(n);
    gs.bmass_llt.resize(n);
    for (int k = 0; k <= n - 1; ++k) {
        gs.bmass[k] = whitney_mass(boundary.complex, k);
        gs.wedge[k] = boundary_wedge(boundary.complex, k);
        gs.bmass_dense[k] = Eigen::MatrixXd(gs.bmass[k]);
        gs.bmass_llt[k].compute(gs.bmass_dense[k]);
        if (gs.bmass_llt[k].info() != Eigen::Success)
            throw MeshError("boundary mass matrix is not SPD");
    }
    gs.trace_mats.resize(n);
    for (int k = 0; k <= n - 1; ++k) gs.trace_mats[k] = boundary.trace_matrix(bulk, k);
    gs.stiffness.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        if (k < n)
            gs.stiffness[k] = bulk.D[k].transpose() * gs.mass[k + 1] * bulk.D[k];
        else
            gs.stiffness[k] = SpMat(bulk.count(n), bulk.count(n));
    }
    return gs;
}

Cochain weak_codifferential(const GalerkinStructures& gs, const Cochain& omega) {
    if (omega.domain != Domain::Bulk || omega.rep != Rep::Strong)
        throw MeshError("weak_codifferential expects a strong bulk cochain");
    const int k = omega.degree;
    if (k < 1 || k > gs.bulk->dim)
        throw MeshError("weak_codifferential degree out of range");
    Cochain r;
    r.degree = k - 1;
    r.domain = Domain::Bulk;
    r.rep = Rep::Weak;
    r.values = gs.bulk->D[k - 1].transpose() * (gs.mass[k] * omega.values);
    return r;
}

Cochain weak_to_strong(const GalerkinStructures& gs, const Cochain& r) {
    if (r.rep != Rep::Weak) throw MeshError("weak_to_strong expects a weak cochain");
    if (r.domain != Domain::Bulk)
        throw MeshError("weak_to_strong operates on bulk cochains");
    Eigen::SimplicialLLT<SpMat> llt(gs.mass[r.degree]);
    if (llt.info() != Eigen::Success) throw MeshError("mass matrix factorization failed");
    Cochain s;
    s.degree = r.degree;
    s.domain = r.domain;
    s.rep = Rep::Strong;
    s.values = llt.solve(r.values);
    return s;
}

}  // namespace hodgedtn
