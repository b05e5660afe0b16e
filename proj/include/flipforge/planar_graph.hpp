#pragma once

/*
  flipforge/planar_graph.hpp

  Plain embedded planar graphs (rotation systems without the maximality
  requirement). Used for edge subdivisions, augmentation inputs and the
  arc-diagram pipeline.
*/

#include <algorithm>
#include <set>
#include <vector>

#include "flipforge/triangulation.hpp"

namespace flipforge {

struct PlanarGraph {
    int n = 0;
    std::vector<std::vector<int>> rot;  // CCW neighbor cycles

    PlanarGraph() = default;
    explicit PlanarGraph(int nn) : n(nn), rot(nn) {}
    PlanarGraph(int nn, std::vector<std::vector<int>> r) : n(nn), rot(std::move(r)) {}
    explicit PlanarGraph(const Triangulation& t) : n(t.n()), rot(t.rotations()) {}

    int degree(int v) const { return static_cast<int>(rot[v].size()); }
    bool has_edge(int a, int b) const {
        return std::find(rot[a].begin(), rot[a].end(), b) != rot[a].end();
    }
    bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }
    int edge_count() const {
        std::size_t deg = 0;
        for (const auto& r : rot) deg += r.size();
        return static_cast<int>(deg / 2);
    }
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int v = 0; v < n; ++v)
            for (int w : rot[v])
                if (v < w) out.emplace_back(v, w);
        std::sort(out.begin(), out.end());
        return out;
    }

    int succ(int at, int from) const {
        const auto& r = rot[at];
        auto it = std::find(r.begin(), r.end(), from);
        if (it == r.end())
            throw flip_error("succ: " + std::to_string(from) + " is not a neighbor of " +
                             std::to_string(at));
        ++it;
        return it == r.end() ? r.front() : *it;
    }

    /// Face orbits under (u,v) -> (v, succ_v(u)); walks may repeat
    /// vertices when the graph is not 2-connected.
    std::vector<std::vector<int>> face_walks() const {
        std::vector<std::vector<int>> walks;
        std::set<std::pair<int, int>> seen;
        for (int v = 0; v < n; ++v) {
            for (int w : rot[v]) {
                if (seen.count({v, w})) continue;
                std::vector<int> walk;
                int a = v, b = w;
                do {
                    walk.push_back(a);
                    seen.insert({a, b});
                    int c = succ(b, a);
                    a = b;
                    b = c;
                } while (!(a == v && b == w));
                walks.push_back(std::move(walk));
            }
        }
        return walks;
    }

    /// Replace edge e by a new degree-2 vertex adjacent to both endpoints.
    /// The new vertex takes id n; the embedding is preserved.
    int subdivide(const Edge& e) {
        if (!has_edge(e)) throw flip_error("unknown edge " + to_string(e));
        int x = n++;
        rot.emplace_back(std::vector<int>{e.u, e.v});
        *std::find(rot[e.u].begin(), rot[e.u].end(), e.v) = x;
        *std::find(rot[e.v].begin(), rot[e.v].end(), e.u) = x;
        return x;
    }

    /// Insert edge (u,w) inside the face corner u -> via -> w:
    /// in rot(u) the new neighbor goes right before `via`, in rot(w)
    /// right after `via`, splitting that face locally.
    void add_edge_at_corner(int u, int via_u, int w, int via_w) {
        auto& ru = rot[u];
        auto itu = std::find(ru.begin(), ru.end(), via_u);
        ru.insert(itu, w);
        auto& rw = rot[w];
        auto itw = std::find(rw.begin(), rw.end(), via_w);
        rw.insert(std::next(itw), u);
    }
};

/// Subdivide one edge of a triangulation; the result is planar but no
/// longer maximal (the new vertex has degree two).
inline PlanarGraph subdivide_edge(const Triangulation& t, const Edge& e) {
    PlanarGraph g(t);
    g.subdivide(e);
    return g;
}

inline bool is_connected(const PlanarGraph& g) {
    if (g.n == 0) return true;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.rot[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.n;
}

}  // namespace flipforge
