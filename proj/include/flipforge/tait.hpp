#pragma once

/*
  flipforge/tait.hpp

  Proper 4-colorings of triangulations and the induced 3-partition of
  the edges by color pair. In every triangle (facial or separating) the
  three edges fall into three different classes, and each class has
  exactly n-2 edges.
*/

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "flipforge/triangulation.hpp"

namespace flipforge {

/// Proper vertex coloring with colors 0..3, found by saturation-ordered
/// backtracking. Deterministic. Throws if the node budget is exhausted
/// (which would require an extremely adversarial instance).
inline std::vector<int> four_coloring(const Triangulation& t,
                                      std::uint64_t node_budget = 20'000'000) {
    int n = t.n();
    std::vector<int> color(n, -1);
    // neighbor color usage counts, per vertex
    std::vector<std::array<int, 4>> used(n, {0, 0, 0, 0});
    std::vector<int> trail;
    trail.reserve(n);
    std::uint64_t nodes = 0;

    auto saturation = [&](int v) {
        int s = 0;
        for (int c = 0; c < 4; ++c)
            if (used[v][c]) ++s;
        return s;
    };
    auto pick = [&]() {
        int best = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            int s = saturation(v);
            int d = t.degree(v);
            if (s > best_sat || (s == best_sat && d > best_deg)) {
                best = v;
                best_sat = s;
                best_deg = d;
            }
        }
        return best;
    };

    auto assign = [&](int v, int c) {
        color[v] = c;
        for (int w : t.rotation(v)) ++used[w][c];
    };
    auto unassign = [&](int v) {
        int c = color[v];
        color[v] = -1;
        for (int w : t.rotation(v)) --used[w][c];
    };

    // iterative backtracking over the dynamic DSATUR order
    std::vector<std::pair<int, int>> stack;  // (vertex, next color to try)
    int v0 = pick();
    stack.emplace_back(v0, 0);
    while (!stack.empty()) {
        auto& [v, c] = stack.back();
        if (color[v] >= 0) unassign(v);
        while (c < 4 && used[v][c]) ++c;
        if (c == 4) {
            stack.pop_back();
            continue;
        }
        if (++nodes > node_budget) throw flip_error("four_coloring: node budget exhausted");
        assign(v, c);
        ++c;  // resume point on backtrack
        int next = pick();
        if (next < 0) return color;
        stack.emplace_back(next, 0);
    }
    throw flip_error("four_coloring: no coloring found (graph not 4-colorable?)");
}

/// The three edge classes induced by a 4-coloring: color pairs
/// {0,1}/{2,3} -> class 0, {0,2}/{1,3} -> class 1, {0,3}/{1,2} -> class 2.
struct TaitPartition {
    std::array<std::vector<Edge>, 3> classes;
    std::vector<int> coloring;
    std::map<Edge, int> class_of;
};

inline int color_pair_class(int cu, int cv) {
    int lo = std::min(cu, cv), hi = std::max(cu, cv);
    if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3)) return 0;
    if ((lo == 0 && hi == 2) || (lo == 1 && hi == 3)) return 1;
    return 2;
}

inline TaitPartition tait_partition(const Triangulation& t) {
    TaitPartition p;
    p.coloring = four_coloring(t);
    for (const Edge& e : t.edges()) {
        int k = color_pair_class(p.coloring[e.u], p.coloring[e.v]);
        p.classes[k].push_back(e);
        p.class_of.emplace(e, k);
    }
    return p;
}

/// Check that a claimed partition is a genuine 3-partition of the edge
/// set in which every triangle, facial or separating, carries exactly
/// one edge of each class. Also checks the class sizes of n-2 each.
inline Diagnostic verify_tait_partition(const Triangulation& t, const TaitPartition& p) {
    std::map<Edge, int> cls;
    for (int k = 0; k < 3; ++k) {
        for (const Edge& e : p.classes[k]) {
            if (!t.has_edge(e))
                return Diagnostic::bad("class " + std::to_string(k) + " lists unknown edge " +
                                       to_string(e));
            if (!cls.emplace(e, k).second)
                return Diagnostic::bad("edge " + to_string(e) + " appears in two classes");
        }
        if (static_cast<int>(p.classes[k].size()) != t.n() - 2)
            return Diagnostic::bad("class " + std::to_string(k) + " has " +
                                   std::to_string(p.classes[k].size()) + " edges, expected n-2 = " +
                                   std::to_string(t.n() - 2));
    }
    if (static_cast<int>(cls.size()) != t.edge_count())
        return Diagnostic::bad("classes cover " + std::to_string(cls.size()) + " of " +
                               std::to_string(t.edge_count()) + " edges");
    for (const Triangle& tri : all_triangles(t)) {
        std::array<int, 3> seen{0, 0, 0};
        for (const Edge& e : tri.edges()) ++seen[cls.at(e)];
        if (seen != std::array<int, 3>{1, 1, 1})
            return Diagnostic::bad("triangle " + to_string(tri) +
                                   " does not carry one edge per class");
    }
    return Diagnostic::good();
}

}  // namespace flipforge
