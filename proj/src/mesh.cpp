#include "hodgedtn/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace hodgedtn {

namespace {

VertTuple to_tuple(const std::vector<int>& v) {
    VertTuple t{-1, -1, -1, -1};
    for (size_t i = 0; i < v.size(); ++i) t[i] = v[i];
    return t;
}

int tuple_size(const VertTuple& t) {
    int s = 0;
    while (s < 4 && t[s] >= 0) ++s;
    return s;
}

/** Sort a tuple in place, returning the permutation sign. */
int sort_tuple(VertTuple& t, int len) {
    int sign = 1;
    for (int i = 0; i < len; ++i)
        for (int j = 0; j + 1 < len - i; ++j)
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                sign = -sign;
            }
    return sign;
}

VertTuple remove_vertex(const VertTuple& t, int len, int pos) {
    VertTuple f{-1, -1, -1, -1};
    int m = 0;
    for (int i = 0; i < len; ++i)
        if (i != pos) f[m++] = t[i];
    return f;
}

}  // namespace

int SimplicialComplex::find(int k, const VertTuple& sorted) const {
    const auto& tab = lookup.at(k);
    auto it = std::lower_bound(tab.begin(), tab.end(), sorted,
                               [](const std::pair<VertTuple, int>& a,
                                  const VertTuple& b) { return a.first < b; });
    if (it == tab.end() || it->first != sorted) return -1;
    return it->second;
}

Eigen::MatrixXd SimplicialComplex::simplex_coords(int k, int i) const {
    Eigen::MatrixXd pts(k + 1, ambient);
    for (int j = 0; j <= k; ++j)
        pts.row(j) = vertices.row(levels[k].verts[i][j]);
    return pts;
}

double SimplicialComplex::mesh_size() const {
    double h = 0;
    for (int e = 0; e < count(1); ++e) {
        const auto& t = levels[1].verts[e];
        h = std::max(h, (vertices.row(t[0]) - vertices.row(t[1])).norm());
    }
    return h;
}

void SimplicialComplex::finalize() {
    lookup.assign(dim + 1, {});
    for (int k = 0; k <= dim; ++k) {
        lookup[k].reserve(count(k));
        for (int i = 0; i < count(k); ++i)
            lookup[k].push_back({levels[k].verts[i], i});
        std::sort(lookup[k].begin(), lookup[k].end());
    }
    D.assign(dim, SpMat());
    for (int k = 0; k + 1 <= dim; ++k) {
        std::vector<Eigen::Triplet<double>> trips;
        for (int t = 0; t < count(k + 1); ++t) {
            const VertTuple& tau = levels[k + 1].verts[t];
            for (int j = 0; j <= k + 1; ++j) {
                VertTuple face = remove_vertex(tau, k + 2, j);
                int s = find(k, face);
                if (s < 0) throw MeshError("missing face in complex");
                double val = levels[k + 1].orient[t] * levels[k].orient[s] *
                             ((j % 2 == 0) ? 1.0 : -1.0);
                trips.emplace_back(t, s, val);
            }
        }
        D[k] = SpMat(count(k + 1), count(k));
        D[k].setFromTriplets(trips.begin(), trips.end());
    }
}

SimplicialComplex build_complex(const Eigen::MatrixXd& vertices,
                                const std::vector<VertTuple>& cells, int dim) {
    if (dim != 2 && dim != 3) throw MeshError("dim must be 2 or 3");
    if (vertices.cols() != dim)
        throw MeshError("vertex coordinate count must equal dim");

    SimplicialComplex c;
    c.dim = dim;
    c.ambient = dim;
    c.vertices = vertices;
    c.levels.assign(dim + 1, SimplexLevel{});

    const int nv = static_cast<int>(vertices.rows());

    // vertices
    c.levels[0].verts.resize(nv);
    c.levels[0].orient.assign(nv, 1);
    for (int i = 0; i < nv; ++i) c.levels[0].verts[i] = {i, -1, -1, -1};

    // top simplices: sort tuples and orient positively w.r.t. the embedding
    for (const VertTuple& cell : cells) {
        VertTuple t = cell;
        for (int j = 0; j <= dim; ++j)
            if (t[j] < 0 || t[j] >= nv) throw MeshError("cell vertex out of range");
        int perm = sort_tuple(t, dim + 1);
        for (int j = 0; j < dim; ++j)
            if (t[j] == t[j + 1]) throw MeshError("degenerate cell (repeated vertex)");

        Eigen::MatrixXd E(dim, dim);
        for (int j = 1; j <= dim; ++j)
            E.col(j - 1) = (vertices.row(t[j]) - vertices.row(t[0])).transpose();
        double det = E.determinant();
        double scale = std::pow(E.colwise().norm().prod(), 1.0);
        if (std::abs(det) < 1e-12 * std::max(scale, 1e-300))
            throw MeshError("degenerate (zero-volume) cell");
        // orientation of the *sorted* tuple in the embedding
        int embed_sign = det > 0 ? 1 : -1;
        (void)perm;  // original file orientation is ignored; embedding decides
        c.levels[dim].verts.push_back(t);
        c.levels[dim].orient.push_back(embed_sign);
    }

    // enumerate all sub-simplices (k = 1..dim-1), orientation +1 (sorted)
    for (int k = dim - 1; k >= 1; --k) {
        std::map<VertTuple, int> seen;
        auto add_faces_of = [&](const VertTuple& t, int len) {
            for (int j = 0; j < len; ++j) {
                VertTuple f = remove_vertex(t, len, j);
                seen.emplace(f, 0);
            }
        };
        for (const auto& t : c.levels[k + 1].verts) add_faces_of(t, k + 2);
        c.levels[k].verts.reserve(seen.size());
        for (const auto& [f, unused] : seen) {
            (void)unused;
            c.levels[k].verts.push_back(f);
            c.levels[k].orient.push_back(1);
        }
    }

    c.finalize();

    // manifoldness + global consistency of induced orientations:
    // every (n-1)-simplex belongs to one top (boundary) or two tops with
    // cancelling induced signs (interior).
    std::vector<int> face_tops(c.count(dim - 1), 0);
    std::vector<int> face_sign(c.count(dim - 1), 0);
    for (int t = 0; t < c.count(dim); ++t) {
        const VertTuple& tau = c.levels[dim].verts[t];
        for (int j = 0; j <= dim; ++j) {
            VertTuple f = remove_vertex(tau, dim + 1, j);
            int s = c.find(dim - 1, f);
            face_tops[s] += 1;
            face_sign[s] += c.levels[dim].orient[t] * ((j % 2 == 0) ? 1 : -1);
        }
    }
    for (int s = 0; s < c.count(dim - 1); ++s) {
        if (face_tops[s] > 2)
            throw MeshError("non-manifold incidence: facet shared by >2 cells");
        if (face_tops[s] == 2 && face_sign[s] != 0)
            throw MeshError("inconsistent orientation (non-orientable complex)");
    }
    return c;
}

BoundaryComplex extract_boundary(const SimplicialComplex& bulk) {
    const int n = bulk.dim;

    // collect boundary facets with induced orientation sign
    std::vector<int> face_tops(bulk.count(n - 1), 0);
    std::vector<int> face_sign(bulk.count(n - 1), 0);
    for (int t = 0; t < bulk.count(n); ++t) {
        const VertTuple& tau = bulk.levels[n].verts[t];
        for (int j = 0; j <= n; ++j) {
            VertTuple f = remove_vertex(tau, n + 1, j);
            int s = bulk.find(n - 1, f);
            face_tops[s] += 1;
            face_sign[s] += bulk.levels[n].orient[t] * ((j % 2 == 0) ? 1 : -1);
        }
    }

    std::vector<int> bfaces;
    for (int s = 0; s < bulk.count(n - 1); ++s)
        if (face_tops[s] == 1) bfaces.push_back(s);
    if (bfaces.empty()) throw MeshError("mesh has empty boundary");

    // boundary vertex renumbering
    std::vector<int> v_new(bulk.count(0), -1);
    std::vector<int> v_old;
    for (int s : bfaces) {
        const VertTuple& f = bulk.levels[n - 1].verts[s];
        for (int j = 0; j <= n - 1; ++j)
            if (v_new[f[j]] < 0) {
                v_new[f[j]] = static_cast<int>(v_old.size());
                v_old.push_back(f[j]);
            }
    }

    BoundaryComplex b;
    SimplicialComplex& bc = b.complex;
    bc.dim = n - 1;
    bc.ambient = bulk.ambient;
    bc.vertices.resize(v_old.size(), bulk.ambient);
    for (size_t i = 0; i < v_old.size(); ++i)
        bc.vertices.row(i) = bulk.vertices.row(v_old[i]);

    bc.levels.assign(n, SimplexLevel{});
    bc.levels[0].verts.resize(v_old.size());
    bc.levels[0].orient.assign(v_old.size(), 1);
    for (size_t i = 0; i < v_old.size(); ++i)
        bc.levels[0].verts[i] = {static_cast<int>(i), -1, -1, -1};

    // top boundary simplices with induced orientation
    for (int s : bfaces) {
        const VertTuple& f = bulk.levels[n - 1].verts[s];
        VertTuple g{-1, -1, -1, -1};
        for (int j = 0; j <= n - 1; ++j) g[j] = v_new[f[j]];
        int perm = sort_tuple(g, n);  // renumbering may break sortedness
        bc.levels[n - 1].verts.push_back(g);
        bc.levels[n - 1].orient.push_back(perm * face_sign[s]);
    }

    // intermediate boundary simplices (n == 3: edges), sorted, orient +1
    for (int k = n - 2; k >= 1; --k) {
        std::map<VertTuple, int> seen;
        for (const auto& t : bc.levels[k + 1].verts)
            for (int j = 0; j <= k + 1; ++j) seen.emplace(remove_vertex(t, k + 2, j), 0);
        for (const auto& [f, unused] : seen) {
            (void)unused;
            bc.levels[k].verts.push_back(f);
            bc.levels[k].orient.push_back(1);
        }
    }
    bc.finalize();

    // closedness of the boundary: every (n-2)-simplex is in exactly two facets
    if (n - 2 >= 0 && bc.dim >= 1) {
        std::vector<int> cnt(bc.count(bc.dim - 1), 0);
        for (int t = 0; t < bc.count(bc.dim); ++t)
            for (int j = 0; j <= bc.dim; ++j) {
                VertTuple f = remove_vertex(bc.levels[bc.dim].verts[t], bc.dim + 1, j);
                cnt[bc.find(bc.dim - 1, f)] += 1;
            }
        for (int x : cnt)
            if (x != 2) throw MeshError("boundary complex is not closed");
    }

    // inclusion maps (bulk simplices are sorted with orient +1 below top level,
    // so the inclusion sign is the boundary orientation for k = n-1, else +1)
    b.incl.assign(n, {});
    b.incl_sign.assign(n, {});
    for (int k = 0; k <= n - 1; ++k) {
        b.incl[k].resize(bc.count(k));
        b.incl_sign[k].resize(bc.count(k));
        for (int i = 0; i < bc.count(k); ++i) {
            VertTuple t = bc.levels[k].verts[i];
            VertTuple bt{-1, -1, -1, -1};
            for (int j = 0; j <= k; ++j) bt[j] = v_old[t[j]];
            int perm = sort_tuple(bt, k + 1);
            int idx = bulk.find(k, bt);
            if (idx < 0) throw MeshError("boundary simplex missing from bulk");
            b.incl[k][i] = idx;
            b.incl_sign[k][i] =
                perm * bc.levels[k].orient[i] * bulk.levels[k].orient[idx];
        }
    }
    return b;
}

SpMat BoundaryComplex::trace_matrix(const SimplicialComplex& bulk, int k) const {
    if (k < 0 || k > complex.dim)
        throw MeshError("trace degree out of range for the boundary");
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < complex.count(k); ++i)
        trips.emplace_back(i, incl[k][i], static_cast<double>(incl_sign[k][i]));
    SpMat T(complex.count(k), bulk.count(k));
    T.setFromTriplets(trips.begin(), trips.end());
    return T;
}

Cochain trace(const SimplicialComplex& bulk, const BoundaryComplex& bnd,
              const Cochain& omega) {
    if (omega.domain != Domain::Bulk || omega.rep != Rep::Strong)
        throw MeshError("trace expects a strong bulk cochain");
    if (omega.degree >= bulk.dim)
        throw MeshError("trace undefined at degree n (no boundary n-simplices)");
    Cochain r;
    r.degree = omega.degree;
    r.domain = Domain::Boundary;
    r.rep = Rep::Strong;
    r.values = bnd.trace_matrix(bulk, omega.degree) * omega.values;
    return r;
}

int boundary_component_count(const BoundaryComplex& bnd) {
    const SimplicialComplex& c = bnd.complex;
    std::vector<int> parent(c.count(0));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < c.count(1); ++e) {
        int a = root(c.levels[1].verts[e][0]);
        int bb = root(c.levels[1].verts[e][1]);
        if (a != bb) parent[a] = bb;
    }
    int comps = 0;
    for (int v = 0; v < c.count(0); ++v)
        if (root(v) == v) ++comps;
    return comps;
}

// ------------------------------------------------------------------ file IO

SimplicialComplex load_mesh_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_tokens = [&](std::vector<std::string>& out) -> bool {
        while (std::getline(in, line)) {
            auto h = line.find('#');
            if (h != std::string::npos) line = line.substr(0, h);
            std::istringstream ls(line);
            out.clear();
            std::string tok;
            while (ls >> tok) out.push_back(tok);
            if (!out.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> tok;
    if (!next_tokens(tok) || tok.size() != 2 || tok[0] != "dim")
        throw MeshError("expected 'dim n' header");
    int dim = std::stoi(tok[1]);
    if (dim != 2 && dim != 3) throw MeshError("dim must be 2 or 3");

    if (!next_tokens(tok) || tok.size() != 2 || tok[0] != "vertices")
        throw MeshError("expected 'vertices V' record");
    int nv = std::stoi(tok[1]);
    if (nv <= 0) throw MeshError("vertex count must be positive");
    Eigen::MatrixXd verts(nv, dim);
    for (int i = 0; i < nv; ++i) {
        if (!next_tokens(tok) || static_cast<int>(tok.size()) != dim)
            throw MeshError("bad vertex line");
        for (int j = 0; j < dim; ++j) verts(i, j) = std::stod(tok[j]);
    }

    if (!next_tokens(tok) || tok.size() != 2 || tok[0] != "cells")
        throw MeshError("expected 'cells C' record");
    int nc = std::stoi(tok[1]);
    if (nc <= 0) throw MeshError("cell count must be positive");
    std::vector<VertTuple> cells(nc);
    for (int i = 0; i < nc; ++i) {
        if (!next_tokens(tok) || static_cast<int>(tok.size()) != dim + 1)
            throw MeshError("bad cell line");
        std::vector<int> ids(dim + 1);
        for (int j = 0; j <= dim; ++j) ids[j] = std::stoi(tok[j]);
        cells[i] = to_tuple(ids);
    }
    if (next_tokens(tok)) throw MeshError("trailing content after cells");
    return build_complex(verts, cells, dim);
}

SimplicialComplex load_mesh(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw MeshError("cannot open mesh file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return load_mesh_text(ss.str());
}

std::string write_mesh_text(const SimplicialComplex& c) {
    std::ostringstream out;
    out.precision(17);
    out << "dim " << c.dim << "\n";
    out << "vertices " << c.count(0) << "\n";
    for (int i = 0; i < c.count(0); ++i) {
        for (int j = 0; j < c.ambient; ++j) out << (j ? " " : "") << c.vertices(i, j);
        out << "\n";
    }
    out << "cells " << c.count(c.dim) << "\n";
    for (int i = 0; i < c.count(c.dim); ++i) {
        VertTuple t = c.levels[c.dim].verts[i];
        // emit an even permutation of the positively oriented tuple
        if (c.levels[c.dim].orient[i] < 0) std::swap(t[0], t[1]);
        for (int j = 0; j <= c.dim; ++j) out << (j ? " " : "") << t[j];
        out << "\n";
    }
    return out.str();
}

SimplicialComplex refine_uniform(const SimplicialComplex& c) {
    if (c.dim != 2)
        throw MeshError("uniform refinement implemented for dim == 2 only");
    const int nv = c.count(0);
    Eigen::MatrixXd verts(nv + c.count(1), c.ambient);
    verts.topRows(nv) = c.vertices;
    for (int e = 0; e < c.count(1); ++e) {
        const VertTuple& t = c.levels[1].verts[e];
        verts.row(nv + e) = 0.5 * (c.vertices.row(t[0]) + c.vertices.row(t[1]));
    }
    auto mid = [&](int a, int b) {
        VertTuple q{std::min(a, b), std::max(a, b), -1, -1};
        return nv + c.find(1, q);
    };
    std::vector<VertTuple> cells;
    for (int f = 0; f < c.count(2); ++f) {
        const VertTuple& t = c.levels[2].verts[f];
        int m01 = mid(t[0], t[1]), m02 = mid(t[0], t[2]), m12 = mid(t[1], t[2]);
        cells.push_back({t[0], m01, m02, -1});
        cells.push_back({m01, t[1], m12, -1});
        cells.push_back({m02, m12, t[2], -1});
        cells.push_back({m01, m12, m02, -1});
    }
    return build_complex(verts, cells, 2);
}

}  // namespace hodgedtn
