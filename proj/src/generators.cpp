#include "hodgedtn/generators.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace hodgedtn {

namespace {
constexpr double kPi = 3.14159265358979323846;

/** Tetrahedralize an axis-aligned unit cell grid over the kept cells.
 *  Uses the 6-tet Kuhn split along the (0,0,0)-(1,1,1) diagonal, which is
 *  conforming across neighbouring cells. */
SimplicialComplex grid3d(int nx, int ny, int nz, double hx, double hy, double hz,
                         const std::function<bool(int, int, int)>& keep) {
    auto vid = [&](int i, int j, int k) { return (k * (ny + 1) + j) * (nx + 1) + i; };
    Eigen::MatrixXd verts((nx + 1) * (ny + 1) * (nz + 1), 3);
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i)
                verts.row(vid(i, j, k)) << i * hx, j * hy, k * hz;

    // Kuhn triangulation: one tet per permutation of (x,y,z) steps
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<VertTuple> cells;
    std::vector<bool> used(verts.rows(), false);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                if (!keep(i, j, k)) continue;
                for (const auto& p : perms) {
                    int c[3] = {i, j, k};
                    VertTuple t{};
                    t[0] = vid(c[0], c[1], c[2]);
                    for (int s = 0; s < 3; ++s) {
                        c[p[s]] += 1;
                        t[s + 1] = vid(c[0], c[1], c[2]);
                    }
                    cells.push_back(t);
                    for (int s = 0; s < 4; ++s) used[t[s]] = true;
                }
            }

    // drop unused vertices (cavities leave holes in the grid)
    std::vector<int> remap(verts.rows(), -1);
    int m = 0;
    for (int v = 0; v < verts.rows(); ++v)
        if (used[v]) remap[v] = m++;
    Eigen::MatrixXd kept(m, 3);
    for (int v = 0; v < verts.rows(); ++v)
        if (used[v]) kept.row(remap[v]) = verts.row(v);
    for (auto& t : cells)
        for (int s = 0; s < 4; ++s) t[s] = remap[t[s]];
    return build_complex(kept, cells, 3);
}

}  // namespace

SimplicialComplex make_disk2d(int resolution) {
    if (resolution < 1) throw MeshError("resolution must be >= 1");
    const int A = 8 * resolution;   // angular divisions
    const int R = 2 * resolution;   // radial rings
    auto vid = [&](int ring, int a) { return 1 + (ring - 1) * A + (a % A); };
    Eigen::MatrixXd verts(1 + R * A, 2);
    verts.row(0) << 0.0, 0.0;
    for (int ring = 1; ring <= R; ++ring)
        for (int a = 0; a < A; ++a) {
            double r = static_cast<double>(ring) / R;
            double th = 2.0 * kPi * a / A;
            verts.row(vid(ring, a)) << r * std::cos(th), r * std::sin(th);
        }
    std::vector<VertTuple> cells;
    for (int a = 0; a < A; ++a)
        cells.push_back({0, vid(1, a), vid(1, a + 1), -1});
    for (int ring = 1; ring < R; ++ring)
        for (int a = 0; a < A; ++a) {
            cells.push_back({vid(ring, a), vid(ring + 1, a), vid(ring + 1, a + 1), -1});
            cells.push_back({vid(ring, a), vid(ring + 1, a + 1), vid(ring, a + 1), -1});
        }
    return build_complex(verts, cells, 2);
}

SimplicialComplex make_annulus2d(int resolution) {
    if (resolution < 1) throw MeshError("resolution must be >= 1");
    const int A = 16 * resolution;
    const int R = 2 * resolution;  // radial layers between r=1 and r=2
    auto vid = [&](int ring, int a) { return ring * A + (a % A); };
    Eigen::MatrixXd verts((R + 1) * A, 2);
    for (int ring = 0; ring <= R; ++ring)
        for (int a = 0; a < A; ++a) {
            double r = 1.0 + static_cast<double>(ring) / R;
            double th = 2.0 * kPi * a / A;
            verts.row(vid(ring, a)) << r * std::cos(th), r * std::sin(th);
        }
    std::vector<VertTuple> cells;
    for (int ring = 0; ring < R; ++ring)
        for (int a = 0; a < A; ++a) {
            cells.push_back({vid(ring, a), vid(ring + 1, a), vid(ring + 1, a + 1), -1});
            cells.push_back({vid(ring, a), vid(ring + 1, a + 1), vid(ring, a + 1), -1});
        }
    return build_complex(verts, cells, 2);
}

SimplicialComplex make_rectangle2d(double w, double h, int nx, int ny) {
    auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
    Eigen::MatrixXd verts((nx + 1) * (ny + 1), 2);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            verts.row(vid(i, j)) << w * i / nx, h * j / ny;
    std::vector<VertTuple> cells;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), -1});
            cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1), -1});
        }
    return build_complex(verts, cells, 2);
}

SimplicialComplex make_ball3d(int resolution) {
    if (resolution < 1) throw MeshError("resolution must be >= 1");
    int n = 2 * resolution;
    double h = 1.0 / n;
    return grid3d(n, n, n, h, h, h, [](int, int, int) { return true; });
}

SimplicialComplex make_shell3d(int resolution) {
    if (resolution < 1) throw MeshError("resolution must be >= 1");
    int r = resolution;
    int n = 3 * r;
    double h = 1.0 / n;
    return grid3d(n, n, n, h, h, h, [r](int i, int j, int k) {
        return !(i >= r && i < 2 * r && j >= r && j < 2 * r && k >= r && k < 2 * r);
    });
}

SimplicialComplex make_solidtorus3d(int resolution) {
    if (resolution < 1) throw MeshError("resolution must be >= 1");
    int r = resolution;
    int n = 3 * r;
    double h = 1.0 / n;
    return grid3d(n, n, r, h, h, h, [r](int i, int j, int) {
        return !(i >= r && i < 2 * r && j >= r && j < 2 * r);
    });
}

SimplicialComplex make_mesh(const std::string& name, int resolution) {
    if (name == "disk2d") return make_disk2d(resolution);
    if (name == "annulus2d") return make_annulus2d(resolution);
    if (name == "ball3d") return make_ball3d(resolution);
    if (name == "shell3d") return make_shell3d(resolution);
    if (name == "solidtorus3d") return make_solidtorus3d(resolution);
    throw MeshError("unknown mesh generator: " + name);
}

int default_resolution(const std::string& name) {
    static const std::map<std::string, int> defaults = {
        {"disk2d", 13},       // ~5300 triangles
        {"annulus2d", 9},     // ~5200 triangles
        {"ball3d", 3},        // 1296 tets
        {"shell3d", 2},       // 1248 tets
        {"solidtorus3d", 3},  // 1296 tets
    };
    auto it = defaults.find(name);
    if (it == defaults.end()) throw MeshError("unknown mesh generator: " + name);
    return it->second;
}

}  // namespace hodgedtn
