#pragma once

/*
  flipforge/oracle.hpp

  Brute-force ground truth at small n: exhaustive triangulation
  enumeration by flip-graph search, exact flip distances, exhaustive
  simultaneous-flip minima, subhamiltonicity with witnesses, and minimum
  biarc counts via edge-subset subdivision.

  Everything here is exponential and guarded by explicit budgets; callers
  get a flip_error rather than a silently truncated answer.
*/

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "flipforge/generators.hpp"
#include "flipforge/planar_graph.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

/// Result of exhausting the search space without finding a witness.
inline constexpr int kNoSolution = std::numeric_limits<int>::max();

// ---------------------------------------------------------------------------
// flip-graph enumeration

/// The complete isomorphism-class flip graph on n vertices: one
/// representative per class, classes keyed by canonical code, and class
/// adjacency under single edge flips.
struct FlipGraphIndex {
    int n = 0;
    std::vector<Triangulation> reps;
    std::map<std::string, int> index;  // canonical code -> class id
    std::vector<std::set<int>> adj;

    int classes() const { return static_cast<int>(reps.size()); }
};

/// Breadth-first search of the flip graph from a stacked seed with
/// canonical-code deduplication. Flip graphs are connected, so this
/// reaches every class.
inline FlipGraphIndex enumerate_triangulations(int n) {
    if (n < 4) throw flip_error("enumerate_triangulations: n must be >= 4");
    if (n > 10) throw flip_error("enumerate_triangulations: budget exceeded (n > 10)");
    FlipGraphIndex fg;
    fg.n = n;
    Triangulation seed = make_stacked_deterministic(n - 4);
    fg.index.emplace(canonical_code_string(seed), 0);
    fg.reps.push_back(seed);
    fg.adj.emplace_back();
    for (int id = 0; id < static_cast<int>(fg.reps.size()); ++id) {
        Triangulation cur = fg.reps[id];  // copy: reps may reallocate below
        for (const Edge& e : cur.edges()) {
            if (!is_flippable(cur, e)) continue;
            Triangulation next = flip(cur, e).first;
            std::string code = canonical_code_string(next);
            auto [it, fresh] = fg.index.emplace(code, static_cast<int>(fg.reps.size()));
            if (fresh) {
                fg.reps.push_back(next);
                fg.adj.emplace_back();
            }
            int other = it->second;
            if (other != id) {
                fg.adj[id].insert(other);
                fg.adj[other].insert(id);
            }
        }
    }
    return fg;
}

/// Exact flip distance between a and b, up to relabeling of b. A labeled
/// flip sequence projects to a walk between isomorphism classes, and any
/// class walk lifts to a labeled sequence of the same length (each flip
/// can be mimicked through an isomorphism), so the class-graph distance
/// is the labeled distance to the nearest relabeling of b.
inline int flip_distance(const Triangulation& a, const Triangulation& b) {
    if (a.n() != b.n()) throw flip_error("flip_distance: vertex counts differ");
    FlipGraphIndex fg = enumerate_triangulations(a.n());
    int from = fg.index.at(canonical_code_string(a));
    int to = fg.index.at(canonical_code_string(b));
    std::vector<int> dist(fg.classes(), -1);
    std::queue<int> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == to) return dist[v];
        for (int w : fg.adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    throw flip_error("flip_distance: flip graph not connected (bug sentinel)");
}

// ---------------------------------------------------------------------------
// exhaustive simultaneous-flip minimum

namespace detail {

/// Visits all k-subsets of {0..m-1} until the callback returns true.
template <typename F>
bool for_each_subset(int m, int k, F&& visit) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        if (visit(pick)) return true;
        int i = k - 1;
        while (i >= 0 && pick[i] == m - k + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace detail

/// Minimum size of a valid simultaneous flip set whose result is
/// 4-connected, by exhaustive subset search in increasing size. Returns
/// kNoSolution if no subset of any size works.
inline int min_simflip_to_4connected(const Triangulation& t,
                                     long long budget = 20'000'000) {
    if (t.n() > 12) throw flip_error("min_simflip_to_4connected: budget exceeded (n > 12)");
    std::vector<Edge> es = t.edges();
    int m = static_cast<int>(es.size());
    long long used = 0;
    for (int k = 0; k <= m; ++k) {
        bool found = detail::for_each_subset(m, k, [&](const std::vector<int>& pick) {
            if (++used > budget)
                throw flip_error("min_simflip_to_4connected: budget exceeded");
            std::set<Edge> F;
            for (int i : pick) F.insert(es[i]);
            try {
                return is_four_connected(simultaneous_flip(t, F).first);
            } catch (const flip_error&) {
                return false;  // invalid simultaneous set
            }
        });
        if (found) return k;
    }
    return kNoSolution;
}

// ---------------------------------------------------------------------------
// subhamiltonicity

/// A yes/no answer plus, for yes, the cyclic vertex order and a two-page
/// assignment of the edges (true = above) that has no same-page crossing.
struct SubhamResult {
    bool subhamiltonian = false;
    std::vector<int> order;
    std::map<Edge, bool> above;
};

namespace detail {

/// Union-find with parity and rollback, for incremental two-coloring of
/// the chord-conflict graph during order backtracking.
struct ParityDSU {
    std::vector<int> parent, rnk;
    std::vector<char> parity;  // relative to parent
    std::vector<std::pair<int, int>> undo;  // (child made non-root, old rank of its root)

    explicit ParityDSU(int n) : parent(n), rnk(n, 0), parity(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    std::pair<int, int> find(int x) const {
        int p = 0;
        while (parent[x] != x) {
            p ^= parity[x];
            x = parent[x];
        }
        return {x, p};
    }
    /// Adds the constraint color(a) != color(b); false on contradiction.
    bool join_unequal(int a, int b) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return pa != pb;
        if (rnk[ra] < rnk[rb]) {
            std::swap(ra, rb);
            std::swap(pa, pb);
        }
        undo.push_back({rb, rnk[ra]});
        parent[rb] = ra;
        parity[rb] = static_cast<char>(pa ^ pb ^ 1);
        if (rnk[ra] == rnk[rb]) ++rnk[ra];
        return true;
    }
    std::size_t mark() const { return undo.size(); }
    void rollback(std::size_t to) {
        while (undo.size() > to) {
            auto [child, oldrank] = undo.back();
            undo.pop_back();
            rnk[parent[child]] = oldrank;
            parent[child] = child;
            parity[child] = 0;
        }
    }
};

struct SubhamSearch {
    const PlanarGraph& g;
    std::vector<Edge> es;
    ParityDSU dsu;
    std::vector<int> pos;       // vertex -> position, -1 if unplaced
    std::vector<int> order;     // positions -> vertex
    // chords with both endpoints placed, as position intervals (a < b)
    std::vector<std::pair<std::pair<int, int>, int>> chords;  // ((a,b), edge index)
    long long* budget;

    SubhamSearch(const PlanarGraph& gg, long long* b)
        : g(gg), es(gg.edges()), dsu(static_cast<int>(es.size())),
          pos(gg.n, -1), budget(b) {}

    int edge_index(int u, int v) const {
        Edge e(u, v);
        return static_cast<int>(std::lower_bound(es.begin(), es.end(), e) - es.begin());
    }

    bool dfs() {
        int placed = static_cast<int>(order.size());
        if (placed == g.n) return true;
        for (int v = 0; v < g.n; ++v) {
            if (pos[v] >= 0) continue;
            // orientation symmetry break: mirrored orders swap the vertices
            // at positions 1 and n-1, so demand order[1] < order[n-1]
            if (placed == g.n - 1 && g.n > 2 && order[1] > v) continue;
            if (--*budget < 0) throw flip_error("is_subhamiltonian: budget exceeded");
            std::size_t m = dsu.mark();
            std::size_t nchords = chords.size();
            bool ok = true;
            for (int w : g.rot[v]) {
                if (pos[w] < 0) continue;
                int ei = edge_index(std::min(v, w), std::max(v, w));
                std::pair<int, int> iv{pos[w], placed};
                for (const auto& [jv, ej] : chords) {
                    bool interleave = (iv.first < jv.first && jv.first < iv.second &&
                                       iv.second < jv.second) ||
                                      (jv.first < iv.first && iv.first < jv.second &&
                                       jv.second < iv.second);
                    if (interleave && !dsu.join_unequal(ei, ej)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
                chords.push_back({iv, ei});
            }
            if (ok) {
                pos[v] = placed;
                order.push_back(v);
                if (dfs()) return true;
                order.pop_back();
                pos[v] = -1;
            }
            chords.resize(nchords);
            dsu.rollback(m);
        }
        return false;
    }
};

/// Core search without the public-precondition size cap, shared with
/// min_biarcs (whose subdivisions push n past the documented limit).
inline SubhamResult subhamiltonian_search(const PlanarGraph& g, long long* budget) {
    SubhamResult r;
    if (g.n == 0) {
        r.subhamiltonian = true;
        return r;
    }
    SubhamSearch s(g, budget);
    s.pos[0] = 0;
    s.order.push_back(0);
    if (!s.dfs()) return r;
    r.subhamiltonian = true;
    r.order = s.order;
    for (std::size_t i = 0; i < s.es.size(); ++i) {
        auto [root, parity] = s.dsu.find(static_cast<int>(i));
        (void)root;
        r.above[s.es[i]] = parity == 0;
    }
    return r;
}

}  // namespace detail

/// True iff some cyclic vertex order admits a two-page (crossing-free)
/// assignment of the edges, i.e. the graph is subhamiltonian. Exhaustive
/// over cyclic orders with vertex 0 pinned and orientation fixed.
inline SubhamResult is_subhamiltonian(const PlanarGraph& g,
                                      long long budget = 200'000'000) {
    if (g.n > 12) throw flip_error("is_subhamiltonian: budget exceeded (n > 12)");
    return detail::subhamiltonian_search(g, &budget);
}

// ---------------------------------------------------------------------------
// minimum biarcs

/// Minimum k such that subdividing some k edges once each yields a
/// subhamiltonian graph. A plane arc diagram with k biarcs exists exactly
/// when such a subset does, so this is the exact optimum the drawing
/// pipeline is measured against.
inline int min_biarcs(const PlanarGraph& g, long long budget = 2'000'000'000) {
    if (g.n > 8) throw flip_error("min_biarcs: budget exceeded (n > 8)");
    std::vector<Edge> es = g.edges();
    int m = static_cast<int>(es.size());
    for (int k = 0; k <= m; ++k) {
        bool found = detail::for_each_subset(m, k, [&](const std::vector<int>& pick) {
            PlanarGraph h = g;
            for (int i : pick) h.subdivide(es[i]);
            return detail::subhamiltonian_search(h, &budget).subhamiltonian;
        });
        if (found) return k;
    }
    return kNoSolution;
}

inline int min_biarcs(const Triangulation& t, long long budget = 2'000'000'000) {
    return min_biarcs(PlanarGraph(t), budget);
}

}  // namespace flipforge
