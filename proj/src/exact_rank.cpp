#include "hodgedtn/exact_rank.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace hodgedtn {

namespace {

using BigInt = boost::multiprecision::cpp_int;

/**
 * Sparse exact elimination over Q.  Rows store integer numerators over a
 * per-row denominator, so all arithmetic is exact.  Pivots are chosen by
 * minimum column count (a min-degree heuristic): count-1 columns are free
 * simplicial collapses, and the +-1 entries that dominate coboundary
 * matrices keep growth negligible.
 */
struct Elim {
    int rows, cols;
    std::vector<std::map<int, BigInt>> row;  ///< active entries per row
    std::vector<BigInt> den;
    std::vector<std::set<int>> col_rows;
    std::vector<bool> row_done, col_done;

    explicit Elim(const IntTriplets& m)
        : rows(m.rows),
          cols(m.cols),
          row(m.rows),
          den(m.rows, 1),
          col_rows(m.cols),
          row_done(m.rows, false),
          col_done(m.cols, false) {
        for (size_t t = 0; t < m.v.size(); ++t)
            if (m.v[t] != 0) row[m.r[t]][m.c[t]] += m.v[t];
        for (int i = 0; i < rows; ++i)
            for (auto it = row[i].begin(); it != row[i].end();)
                if (it->second == 0)
                    it = row[i].erase(it);
                else {
                    col_rows[it->first].insert(i);
                    ++it;
                }
    }

    void normalize(int r) {
        BigInt g = den[r];
        for (auto it = row[r].begin(); it != row[r].end();) {
            if (it->second == 0) {
                col_rows[it->first].erase(r);
                it = row[r].erase(it);
            } else {
                g = boost::multiprecision::gcd(g, it->second);
                ++it;
            }
        }
        if (row[r].empty()) {
            den[r] = 1;
            return;
        }
        if (g < 0) g = -g;
        if (g > 1) {
            den[r] /= g;
            for (auto& [c, a] : row[r]) a /= g;
        }
        if (den[r] < 0) {
            den[r] = -den[r];
            for (auto& [c, a] : row[r]) a = -a;
        }
    }

    /** Pivot on (pr, pc), updating every other row that touches pc. */
    void eliminate(int pr, int pc) {
        const BigInt pnum = row[pr][pc];
        std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (int r2 : targets) {
            if (r2 == pr || row_done[r2]) continue;
            const BigInt arc = row[r2][pc];
            // (row2/den2) - (arc/den2)*(rowP/pnum): common denom den2*pnum
            for (auto& [c, a] : row[r2]) a *= pnum;
            for (const auto& [c, p] : row[pr]) {
                if (col_done[c]) continue;
                auto it = row[r2].find(c);
                if (it == row[r2].end()) {
                    BigInt nv = -arc * p;
                    if (nv != 0) {
                        row[r2].emplace(c, std::move(nv));
                        col_rows[c].insert(r2);
                    }
                } else {
                    it->second -= arc * p;
                }
            }
            den[r2] *= pnum;
            normalize(r2);
        }
        row_done[pr] = true;
        col_done[pc] = true;
        for (const auto& [c, a] : row[pr]) col_rows[c].erase(pr);
        row[pr].clear();
    }
};

}  // namespace

IntTriplets to_int_triplets(const SpMat& m) {
    IntTriplets t;
    t.rows = static_cast<int>(m.rows());
    t.cols = static_cast<int>(m.cols());
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it)
            t.add(static_cast<int>(it.row()), static_cast<int>(it.col()),
                  static_cast<long long>(std::llround(it.value())));
    return t;
}

int exact_rank(const IntTriplets& m) {
    Elim e(m);
    int rank = 0;

    using Entry = std::pair<size_t, int>;  // (column count, column)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    for (int c = 0; c < e.cols; ++c)
        if (!e.col_rows[c].empty()) heap.emplace(e.col_rows[c].size(), c);

    while (!heap.empty()) {
        auto [cnt, c] = heap.top();
        heap.pop();
        if (e.col_done[c] || e.col_rows[c].empty()) continue;
        if (cnt != e.col_rows[c].size()) {  // stale entry: reinsert
            heap.emplace(e.col_rows[c].size(), c);
            continue;
        }
        // inside the column pick the row with fewest active entries,
        // preferring unit pivots
        int best = -1;
        size_t best_nnz = 0;
        bool best_unit = false;
        for (int r : e.col_rows[c]) {
            bool unit = (e.den[r] == 1) &&
                        (e.row[r][c] == 1 || e.row[r][c] == -1);
            size_t nnz = e.row[r].size();
            if (best < 0 || (unit && !best_unit) ||
                (unit == best_unit && nnz < best_nnz)) {
                best = r;
                best_nnz = nnz;
                best_unit = unit;
            }
        }
        // remember which columns gain entries so their heap keys refresh
        std::vector<int> touched;
        for (const auto& [cc, a] : e.row[best])
            if (!e.col_done[cc]) touched.push_back(cc);
        e.eliminate(best, c);
        ++rank;
        for (int cc : touched)
            if (!e.col_done[cc] && !e.col_rows[cc].empty())
                heap.emplace(e.col_rows[cc].size(), cc);
    }
    return rank;
}

namespace {

/** Restrict a coboundary matrix to interior rows and columns. */
IntTriplets restrict_interior(const SpMat& d, const std::vector<char>& row_keep,
                              const std::vector<char>& col_keep) {
    std::vector<int> rmap(row_keep.size(), -1), cmap(col_keep.size(), -1);
    int nr = 0, nc = 0;
    for (size_t i = 0; i < row_keep.size(); ++i)
        if (row_keep[i]) rmap[i] = nr++;
    for (size_t j = 0; j < col_keep.size(); ++j)
        if (col_keep[j]) cmap[j] = nc++;
    IntTriplets t;
    t.rows = nr;
    t.cols = nc;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) {
            int r = rmap[it.row()], c = cmap[it.col()];
            if (r >= 0 && c >= 0)
                t.add(r, c, static_cast<long long>(std::llround(it.value())));
        }
    return t;
}

}  // namespace

BettiTable simplicial_betti(const SimplicialComplex& bulk,
                            const BoundaryComplex& boundary) {
    const int n = bulk.dim;
    BettiTable out;
    out.absolute.assign(n + 1, 0);
    out.relative.assign(n + 1, 0);

    std::vector<int> rank_abs(n + 1, 0);  // rank D_k (D_n := 0)
    for (int k = 0; k < n; ++k) rank_abs[k] = exact_rank(to_int_triplets(bulk.D[k]));

    // interior flags per degree (relative cochains vanish on the boundary)
    std::vector<std::vector<char>> interior(n + 1);
    for (int k = 0; k <= n; ++k) interior[k].assign(bulk.count(k), 1);
    for (int k = 0; k <= n - 1; ++k)
        for (int idx : boundary.incl[k]) interior[k][idx] = 0;

    std::vector<int> rank_rel(n + 1, 0);
    std::vector<int> count_rel(n + 1, 0);
    for (int k = 0; k <= n; ++k)
        for (char f : interior[k]) count_rel[k] += f;
    for (int k = 0; k < n; ++k)
        rank_rel[k] =
            exact_rank(restrict_interior(bulk.D[k], interior[k + 1], interior[k]));

    for (int k = 0; k <= n; ++k) {
        int prev_abs = (k > 0) ? rank_abs[k - 1] : 0;
        int prev_rel = (k > 0) ? rank_rel[k - 1] : 0;
        out.absolute[k] = bulk.count(k) - rank_abs[k] - prev_abs;
        out.relative[k] = count_rel[k] - rank_rel[k] - prev_rel;
    }
    return out;
}

}  // namespace hodgedtn
