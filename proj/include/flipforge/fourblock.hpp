#pragma once

/*
  flipforge/fourblock.hpp

  Rooted 4-block tree of a triangulation: the decomposition along
  separating triangles into maximal pieces without them, rooted at the
  block containing the outer face. Blocks keep per-node flip/dummy
  counters for the connectivity algorithm, carried across rebuilds.
*/

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "flipforge/generators.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

struct BlockNode {
    Triangulation block;         // local vertex ids; outer face = boundary (local)
    std::vector<int> to_global;  // local id -> host vertex id
    Triangle boundary;           // host ids; for the root, the host's outer face
    int parent = -1;
    std::vector<int> children;
    int flips_used = 0;
    int dummies_used = 0;

    int interior_size() const { return block.n() - 3; }
    bool is_leaf() const { return children.empty(); }

    std::vector<int> global_vertices() const {
        std::vector<int> v = to_global;
        std::sort(v.begin(), v.end());
        return v;
    }
    Edge to_global_edge(const Edge& e) const { return Edge(to_global[e.u], to_global[e.v]); }
    Triangle to_global_triangle(const Triangle& t) const {
        return Triangle(to_global[t.v[0]], to_global[t.v[1]], to_global[t.v[2]], t.kind);
    }
};

struct FourBlockTree {
    std::vector<BlockNode> nodes;
    int root = 0;
    Triangulation host;

    const BlockNode& operator[](int i) const { return nodes[i]; }
    int size() const { return static_cast<int>(nodes.size()); }

    /// Boundary triangles of i's children (host ids): the triangles 𝒯_i
    /// the algorithm works against inside block i.
    std::vector<Triangle> child_triangles(int i) const {
        std::vector<Triangle> out;
        for (int c : nodes[i].children) out.push_back(nodes[c].boundary);
        return out;
    }
};

namespace detail {

/// Sub-triangulation induced on a vertex subset by restricting each
/// rotation. Valid when the subset is one side of a separating triangle
/// (plus the triangle itself).
inline std::pair<Triangulation, std::vector<int>> restrict_to(
    const Triangulation& t, const std::set<int>& keep, const Triangle& outer) {
    std::vector<int> to_old(keep.begin(), keep.end());
    std::vector<int> to_new(t.n(), -1);
    for (int i = 0; i < static_cast<int>(to_old.size()); ++i) to_new[to_old[i]] = i;
    std::vector<std::vector<int>> rot(to_old.size());
    for (int i = 0; i < static_cast<int>(to_old.size()); ++i)
        for (int w : t.rotation(to_old[i]))
            if (to_new[w] >= 0) rot[i].push_back(to_new[w]);
    std::array<int, 3> o{to_new[outer.v[0]], to_new[outer.v[1]], to_new[outer.v[2]]};
    return {Triangulation(static_cast<int>(to_old.size()), std::move(rot), o), to_old};
}

inline int decompose(const Triangulation& t, const std::vector<int>& to_global,
                     const Triangle& boundary_global, std::vector<BlockNode>& nodes) {
    auto seps = separating_triangles(t);
    if (seps.empty()) {
        nodes.push_back({t, to_global, boundary_global});
        return static_cast<int>(nodes.size()) - 1;
    }
    // split along the separating triangle that is lexicographically
    // smallest in host vertex ids
    auto global_of = [&](const Triangle& tr) {
        return Triangle(to_global[tr.v[0]], to_global[tr.v[1]], to_global[tr.v[2]]);
    };
    Triangle S = seps[0];
    for (const Triangle& c : seps)
        if (global_of(c) < global_of(S)) S = c;

    // two dual components once the three dual edges through S are cut
    auto fs = faces(t);
    std::map<Edge, std::vector<int>> by_edge;
    for (int f = 0; f < static_cast<int>(fs.size()); ++f)
        for (const Edge& e : fs[f].edges()) by_edge[e].push_back(f);
    auto s_edges = S.edges();
    std::set<Edge> cut(s_edges.begin(), s_edges.end());
    std::vector<int> comp(fs.size(), -1);
    int ncomp = 0;
    for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
        if (comp[f] >= 0) continue;
        std::vector<int> queue{f};
        comp[f] = ncomp;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (const Edge& e : fs[queue[qi]].edges()) {
                if (cut.count(e)) continue;
                for (int g : by_edge.at(e))
                    if (comp[g] < 0) {
                        comp[g] = ncomp;
                        queue.push_back(g);
                    }
            }
        ++ncomp;
    }
    if (ncomp != 2)
        throw flip_error("4-block split: expected 2 dual components, got " +
                         std::to_string(ncomp));
    Triangle outer_tri(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
    int outer_comp = comp[static_cast<int>(
        std::find(fs.begin(), fs.end(), outer_tri) - fs.begin())];

    std::set<int> outside_v, inside_v;
    for (int f = 0; f < static_cast<int>(fs.size()); ++f)
        for (int v : fs[f].v) (comp[f] == outer_comp ? outside_v : inside_v).insert(v);

    auto [t_out, map_out_local] = restrict_to(t, outside_v, outer_tri);
    auto [t_in, map_in_local] = restrict_to(t, inside_v, S);
    std::vector<int> map_out, map_in;
    for (int x : map_out_local) map_out.push_back(to_global[x]);
    for (int x : map_in_local) map_in.push_back(to_global[x]);

    int before = static_cast<int>(nodes.size());
    int out_root = decompose(t_out, map_out, boundary_global, nodes);
    int out_end = static_cast<int>(nodes.size());
    Triangle S_global = global_of(S);
    int in_root = decompose(t_in, map_in, S_global, nodes);

    // S is a face of exactly one block on the outside
    int attach = -1;
    for (int idx = before; idx < out_end; ++idx) {
        const BlockNode& nd = nodes[idx];
        std::array<int, 3> loc;
        bool present = true;
        for (int k = 0; k < 3 && present; ++k) {
            auto it = std::find(nd.to_global.begin(), nd.to_global.end(), S_global.v[k]);
            if (it == nd.to_global.end()) present = false;
            else loc[k] = static_cast<int>(it - nd.to_global.begin());
        }
        if (present && is_face(nd.block, Triangle(loc[0], loc[1], loc[2]))) {
            if (attach >= 0) throw flip_error("4-block split: ambiguous attachment");
            attach = idx;
        }
    }
    if (attach < 0) throw flip_error("4-block split: no attachment block");
    nodes[attach].children.push_back(in_root);
    nodes[in_root].parent = attach;
    return out_root;
}

}  // namespace detail

inline FourBlockTree four_block_tree(const Triangulation& t) {
    if (auto d = validate(t); !d.ok) throw flip_error("four_block_tree: " + d.message);
    FourBlockTree bt;
    bt.host = t;
    std::vector<int> identity(t.n());
    for (int v = 0; v < t.n(); ++v) identity[v] = v;
    Triangle outer(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
    bt.root = detail::decompose(t, identity, outer, bt.nodes);
    for (const BlockNode& nd : bt.nodes)
        if (auto d = validate(nd.block); !d.ok)
            throw flip_error("four_block_tree: invalid block: " + d.message);
    return bt;
}

/// Reconstruct the represented triangulation by pooling block faces and
/// discarding both copies of every tree-edge triangle.
inline Triangulation glue_back(const FourBlockTree& bt) {
    std::map<Triangle, int> count;
    for (const BlockNode& nd : bt.nodes)
        for (const Triangle& f : faces(nd.block)) ++count[nd.to_global_triangle(f)];
    std::vector<std::array<int, 3>> face_list;
    for (const auto& [tri, c] : count) {
        if (c == 1) face_list.push_back(tri.v);
        else if (c != 2)
            throw flip_error("glue_back: face " + to_string(tri) + " appears " +
                             std::to_string(c) + " times");
    }
    return from_faces(bt.host.n(), face_list, bt.nodes[bt.root].boundary.v);
}

/// Internal nodes all of whose children are leaves, in id order.
inline std::vector<int> penultimate_nodes(const FourBlockTree& bt) {
    if (bt.size() < 2) throw flip_error("penultimate_nodes: tree has a single node");
    std::vector<int> out;
    for (int i = 0; i < bt.size(); ++i) {
        const BlockNode& nd = bt.nodes[i];
        if (nd.is_leaf()) continue;
        bool ok = true;
        for (int c : nd.children) ok = ok && bt.nodes[c].is_leaf();
        if (ok) out.push_back(i);
    }
    return out;
}

enum class EdgeClass { free_edge, singly_trapped, doubly_trapped, outer };

/// Classification of block i's edges (host ids) against the separating
/// triangles shared with i's children.
inline std::map<Edge, EdgeClass> classify_edges(const FourBlockTree& bt, int i) {
    const BlockNode& nd = bt.nodes[i];
    if (nd.is_leaf()) throw flip_error("classify_edges: node is a leaf");
    auto kids = bt.child_triangles(i);
    std::map<Edge, EdgeClass> out;
    for (const Edge& le : nd.block.edges()) {
        Edge e = nd.to_global_edge(le);
        if (nd.boundary.has_edge(e)) {
            out[e] = EdgeClass::outer;
            continue;
        }
        int hits = 0;
        for (const Triangle& tri : kids)
            if (tri.has_edge(e)) ++hits;
        out[e] = hits == 0   ? EdgeClass::free_edge
                 : hits == 1 ? EdgeClass::singly_trapped
                             : EdgeClass::doubly_trapped;
    }
    return out;
}

/// A non-leaf block is a checkerboard when every interior edge lies in
/// exactly one child triangle.
inline bool is_checkerboard(const FourBlockTree& bt, int i) {
    for (const auto& [e, cls] : classify_edges(bt, i))
        if (cls == EdgeClass::free_edge || cls == EdgeClass::doubly_trapped) return false;
    return true;
}

/// Counter carry for one algorithm step: the extra flips/dummies to be
/// credited to whatever block absorbs old node `node`.
struct CounterCarry {
    int node = -1;
    int f = 0;
    int d = 0;
};

/// Fresh decomposition of t', with counters carried over: every old node
/// maps to the unique new node whose vertex set contains it; merged
/// counters add up, and the step's own (f, d) is credited on top.
inline FourBlockTree rebuild_after(const FourBlockTree& bt, const Triangulation& t_next,
                                   const CounterCarry& carry = {}) {
    FourBlockTree next = four_block_tree(t_next);
    std::vector<std::set<int>> new_sets(next.size());
    for (int z = 0; z < next.size(); ++z)
        new_sets[z] = std::set<int>(next.nodes[z].to_global.begin(),
                                    next.nodes[z].to_global.end());
    auto absorber = [&](const BlockNode& old) {
        int found = -1;
        for (int z = 0; z < next.size(); ++z) {
            bool contains = true;
            for (int v : old.to_global)
                if (!new_sets[z].count(v)) {
                    contains = false;
                    break;
                }
            if (contains) {
                if (found >= 0) throw flip_error("rebuild_after: ambiguous counter carry");
                found = z;
            }
        }
        if (found < 0) throw flip_error("rebuild_after: old block has no absorbing node");
        return found;
    };
    for (int j = 0; j < bt.size(); ++j) {
        int z = absorber(bt.nodes[j]);
        next.nodes[z].flips_used += bt.nodes[j].flips_used;
        next.nodes[z].dummies_used += bt.nodes[j].dummies_used;
    }
    if (carry.node >= 0) {
        int z = absorber(bt.nodes[carry.node]);
        next.nodes[z].flips_used += carry.f;
        next.nodes[z].dummies_used += carry.d;
    }
    return next;
}

/// Per-node counter inequality that holds throughout the connectivity
/// algorithm whenever the tree is not yet a singleton.
inline Diagnostic check_block_counters(const FourBlockTree& bt) {
    if (bt.size() < 2) return Diagnostic::good();
    for (int i = 0; i < bt.size(); ++i) {
        const BlockNode& nd = bt.nodes[i];
        if (nd.interior_size() < 2 * nd.flips_used + 5 * nd.dummies_used + 1)
            return Diagnostic::bad("node " + std::to_string(i) + ": n_i=" +
                                   std::to_string(nd.interior_size()) + " < 2*" +
                                   std::to_string(nd.flips_used) + "+5*" +
                                   std::to_string(nd.dummies_used) + "+1");
    }
    return Diagnostic::good();
}

}  // namespace flipforge
