#pragma once

/*
  flipforge/fourconnect.hpp

  Making a triangulation 4-connected by flips.

  Two routes are provided:
   - sim_flip_set: a single simultaneous flip of at most floor((2n-7)/3)
     edges, taken as the smallest color class of a Tait partition
     restricted to the edges on separating triangles;
   - four_connect: the sequential block-merging algorithm that repeatedly
     merges a penultimate block with its leaf children by flipping a
     small connector, inserting a dummy vertex when the child triangles
     tile the block as a checkerboard. Total cost f + 2d <= (n-3)/2.
*/

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "flipforge/fourblock.hpp"
#include "flipforge/tait.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

// ---------------------------------------------------------------------------
// one-shot simultaneous flip

/// Edge set whose simultaneous flip makes t 4-connected. Empty when t
/// already is. The set is the smallest of the three Tait classes
/// restricted to edges on separating triangles; its size never exceeds
/// floor((2n-7)/3).
inline std::set<Edge> sim_flip_set(const Triangulation& t) {
    if (auto d = validate(t); !d.ok) throw flip_error("sim_flip_set: " + d.message);
    if (t.n() < 6) throw flip_error("sim_flip_set: n must be >= 6");
    if (is_four_connected(t)) return {};
    std::set<Edge> solid = edges_on_separating_triangles(t);
    TaitPartition p = tait_partition(t);
    std::set<Edge> best;
    bool have = false;
    for (int k = 0; k < 3; ++k) {
        std::set<Edge> mk;
        for (const Edge& e : p.classes[k])
            if (solid.count(e)) mk.insert(e);
        if (!have || mk.size() < best.size()) {
            best = std::move(mk);
            have = true;
        }
    }
    if (3 * static_cast<int>(best.size()) > 2 * t.n() - 7)
        throw flip_error("sim_flip_set: class size exceeds (2n-7)/3 bound");
    auto [result, recs] = simultaneous_flip(t, best);  // also checks preconditions
    if (!is_four_connected(result))
        throw flip_error("sim_flip_set: simultaneous flip did not reach 4-connectivity");
    return best;
}

// ---------------------------------------------------------------------------
// block-tree invariants

struct NodeInvariantStatus {
    int node = -1;
    int free_edges = 0;
    int free_interior = 0;
    bool f1 = true, f2 = true, f3 = true, pni = true;
    bool ok() const { return f1 && f2 && f3 && pni; }
};

struct InvariantReport {
    std::vector<NodeInvariantStatus> nodes;
    bool ok = true;

    std::string summary() const {
        std::ostringstream os;
        for (const auto& s : nodes) {
            os << "node " << s.node << ": free=" << s.free_edges
               << " free_interior=" << s.free_interior << " f1=" << s.f1 << " f2=" << s.f2
               << " f3=" << s.f3 << " pni=" << s.pni << '\n';
        }
        return os.str();
    }
};

/// Per-node budget invariants of the merging algorithm. Free edges are
/// counted against the separating triangles of the represented graph.
inline InvariantReport audit_invariants(const FourBlockTree& bt) {
    InvariantReport rep;
    std::set<Edge> solid = edges_on_separating_triangles(bt.host);
    bool singleton = bt.size() == 1;
    for (int i = 0; i < bt.size(); ++i) {
        const BlockNode& nd = bt.nodes[i];
        NodeInvariantStatus s;
        s.node = i;
        for (const Edge& le : nd.block.edges()) {
            Edge e = nd.to_global_edge(le);
            if (solid.count(e)) continue;
            ++s.free_edges;
            if (!nd.boundary.has_edge(e)) ++s.free_interior;
        }
        int budget = 6 * nd.flips_used + 15 * nd.dummies_used;
        if (singleton) s.f1 = s.free_edges >= budget + 3;
        else if (nd.is_leaf() && i != bt.root) s.f2 = s.free_interior >= budget + 3;
        else if (!nd.is_leaf())
            s.f3 = (nd.flips_used == 0 && nd.dummies_used == 0) ||
                   s.free_interior >= budget + 1;
        if (!singleton)
            s.pni = nd.interior_size() >= 2 * nd.flips_used + 5 * nd.dummies_used + 1;
        rep.ok = rep.ok && s.ok();
        rep.nodes.push_back(s);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// connectors

/// A set of block edges hitting each child triangle exactly once, taken
/// from one Tait class. Flipping it merges the block with all children.
struct Connector {
    std::set<Edge> edges;  // host vertex ids
    int source_class = -1;
    bool touches_boundary = false;
};

/// Optimal connector for penultimate node i: of the three class
/// restrictions, one of minimum cardinality, preferring those containing
/// a boundary edge, ties broken by class order. The partition is the one
/// computed on the original input; connector edges are original edges.
inline Connector optimal_connector(const FourBlockTree& bt, int i, const TaitPartition& p) {
    const BlockNode& nd = bt.nodes[i];
    if (nd.is_leaf()) throw flip_error("optimal_connector: node is a leaf");
    if (is_checkerboard(bt, i))
        throw flip_error("optimal_connector: node is a checkerboard; use the dummy route");
    auto kids = bt.child_triangles(i);
    if (kids.empty()) throw flip_error("optimal_connector: no child triangles");

    std::array<Connector, 3> cand;
    for (int k = 0; k < 3; ++k) {
        cand[k].source_class = k;
        for (const Triangle& tri : kids) {
            int hits = 0;
            for (const Edge& e : tri.edges()) {
                auto it = p.class_of.find(e);
                if (it == p.class_of.end())
                    throw flip_error("optimal_connector: triangle edge " + to_string(e) +
                                     " is not an original edge");
                if (it->second == k) {
                    cand[k].edges.insert(e);
                    cand[k].touches_boundary =
                        cand[k].touches_boundary || nd.boundary.has_edge(e);
                    ++hits;
                }
            }
            if (hits != 1)
                throw flip_error("optimal_connector: triangle " + to_string(tri) + " has " +
                                 std::to_string(hits) + " edges in class " + std::to_string(k));
        }
    }
    auto rank = [](const Connector& c) {
        return std::pair<std::size_t, int>(c.edges.size(), c.touches_boundary ? 0 : 1);
    };
    int bestk = 0;
    for (int k = 1; k < 3; ++k)
        if (rank(cand[k]) < rank(cand[bestk])) bestk = k;
    // connector edges must form a matching in the dual of the block
    const Connector& M = cand[bestk];
    for (const Triangle& f : faces(nd.block)) {
        int cnt = 0;
        for (const Edge& le : f.edges())
            if (M.edges.count(nd.to_global_edge(le))) ++cnt;
        if (cnt > 1)
            throw flip_error("optimal_connector: two connector edges on block face " +
                             to_string(nd.to_global_triangle(f)));
    }
    return M;
}

// ---------------------------------------------------------------------------
// dummy flips

struct DummyRecord {
    Triangle face;  // the face the dummy vertex was inserted into
    int vertex = -1;
    std::array<FlipRecord, 3> flips;
};

/// Insert a vertex into `face` and flip the face's three original edges.
/// Requires every edge of the face to be incident to a separating
/// triangle; then no parallel edges arise and no separating triangle is
/// created, while all separating triangles through the face's edges die.
inline std::pair<Triangulation, DummyRecord> dummy_flip(const Triangulation& t,
                                                        const Triangle& face) {
    if (!is_face(t, face)) throw flip_error("dummy_flip: " + to_string(face) + " is not a face");
    auto before = separating_triangles(t);
    std::set<Triangle> before_set(before.begin(), before.end());
    std::vector<Triangle> hit;
    for (const Edge& e : face.edges()) {
        bool covered = false;
        for (const Triangle& s : before)
            if (s.has_edge(e)) {
                covered = true;
                hit.push_back(s);
            }
        if (!covered)
            throw flip_error("dummy_flip: edge " + to_string(e) +
                             " of the face is on no separating triangle");
    }
    DummyRecord rec;
    rec.face = face;
    rec.vertex = t.n();
    Triangulation cur = stack_into_face(t, face);
    auto es = face.edges();
    for (int k = 0; k < 3; ++k) {
        auto [next, fr] = flip(cur, es[k]);
        fr.step_index = k;
        rec.flips[k] = fr;
        cur = std::move(next);
    }
    if (auto d = validate(cur); !d.ok) throw flip_error("dummy_flip: result invalid: " + d.message);
    auto after = separating_triangles(cur);
    for (const Triangle& s : after)
        if (!before_set.count(s))
            throw flip_error("dummy_flip: created separating triangle " + to_string(s));
    for (const Triangle& s : hit)
        if (std::find(after.begin(), after.end(), s) != after.end())
            throw flip_error("dummy_flip: separating triangle " + to_string(s) + " survived");
    return {std::move(cur), rec};
}

/// Face pair (F, H) for the checkerboard step: F a bounded face whose
/// three edges each lie on a distinct child triangle; H a bounded face
/// sharing an edge with the block boundary but none with F. Both in host
/// vertex ids, lexicographically smallest valid choices.
inline std::pair<Triangle, Triangle> predummy_choice(const FourBlockTree& bt, int i) {
    if (!is_checkerboard(bt, i)) throw flip_error("predummy_choice: node is not a checkerboard");
    const BlockNode& nd = bt.nodes[i];
    auto kids = bt.child_triangles(i);
    std::set<Triangle> kid_set(kids.begin(), kids.end());
    std::vector<Triangle> block_faces;
    for (const Triangle& f : faces(nd.block)) block_faces.push_back(nd.to_global_triangle(f));
    std::sort(block_faces.begin(), block_faces.end());

    auto adjacent_kids = [&](const Triangle& f) {
        int cnt = 0;
        for (const Triangle& k : kids)
            if (f.shared_edge(k)) ++cnt;
        return cnt;
    };
    std::optional<Triangle> F;
    for (const Triangle& f : block_faces) {
        if (f == nd.boundary || kid_set.count(f)) continue;
        if (adjacent_kids(f) == 3) {
            F = f;
            break;
        }
    }
    if (!F) throw flip_error("predummy_choice: no candidate face F (bug sentinel)");
    std::optional<Triangle> H;
    for (const Triangle& f : block_faces) {
        if (f == nd.boundary || f == *F) continue;
        if (f.shared_edge(nd.boundary) && !f.shared_edge(*F)) {
            H = f;
            break;
        }
    }
    if (!H) throw flip_error("predummy_choice: no candidate face H (bug sentinel)");
    return {*F, *H};
}

// ---------------------------------------------------------------------------
// the sequential algorithm

enum class StepKind { connector_flip, checkerboard };

struct StepTrace {
    int node = -1;
    StepKind kind = StepKind::connector_flip;
    std::vector<FlipRecord> flips;  // ordinary flips of this step
    std::optional<DummyRecord> dummy;
    InvariantReport invariant_report;
};

struct FourConnectResult {
    Triangulation final;
    std::vector<StepTrace> trace;
    int f_total = 0;
    int d_total = 0;
    std::vector<std::pair<int, Triangle>> dummy_vertices;
};

namespace detail {

inline std::string trace_dump(const std::vector<StepTrace>& trace) {
    std::ostringstream os;
    for (const StepTrace& st : trace) {
        os << "step node=" << st.node
           << " kind=" << (st.kind == StepKind::checkerboard ? "checkerboard" : "connector");
        if (st.dummy) os << " dummy_vertex=" << st.dummy->vertex;
        for (const FlipRecord& fr : st.flips)
            os << " flip " << to_string(fr.removed) << "->" << to_string(fr.created);
        os << '\n';
    }
    return os.str();
}

}  // namespace detail

/// Sequential 4-connectivity: merge penultimate blocks downward until
/// the tree is a singleton. Uses f ordinary flips and d dummy flips with
/// f + 2d <= (n-3)/2; every ordinary flip removes an edge of the
/// original input that lies on a separating triangle at flip time, and
/// no step creates a separating triangle.
inline FourConnectResult four_connect(const Triangulation& t) {
    if (auto d = validate(t); !d.ok) throw flip_error("four_connect: " + d.message);
    if (t.n() < 6) throw flip_error("four_connect: n must be >= 6");
    TaitPartition partition = tait_partition(t);
    std::set<Edge> original_edges;
    for (const Edge& e : t.edges()) original_edges.insert(e);

    FourConnectResult res;
    Triangulation cur = t;
    FourBlockTree bt = four_block_tree(t);
    while (bt.size() > 1) {
        int i = penultimate_nodes(bt).front();
        auto seps_before = separating_triangles(cur);
        std::set<Triangle> seps_before_set(seps_before.begin(), seps_before.end());
        std::set<Edge> solid = edges_on_separating_triangles(cur);
        const auto& ob = cur.outer_face();
        Triangle outer_before(ob[0], ob[1], ob[2]);

        StepTrace st;
        st.node = i;
        CounterCarry carry{i, 0, 0};
        if (!is_checkerboard(bt, i)) {
            st.kind = StepKind::connector_flip;
            Connector M = optimal_connector(bt, i, partition);
            for (const Edge& e : M.edges) {
                if (!original_edges.count(e))
                    throw flip_error("four_connect: connector edge " + to_string(e) +
                                     " is not original\n" + detail::trace_dump(res.trace));
                if (!solid.count(e))
                    throw flip_error("four_connect: connector edge " + to_string(e) +
                                     " not on a separating triangle\n" +
                                     detail::trace_dump(res.trace));
            }
            auto [next, recs] = simultaneous_flip(cur, M.edges);
            cur = std::move(next);
            st.flips = std::move(recs);
            carry.f = static_cast<int>(M.edges.size());
            res.f_total += carry.f;
        } else {
            st.kind = StepKind::checkerboard;
            auto [F, H] = predummy_choice(bt, i);
            auto shared = H.shared_edge(bt.nodes[i].boundary);
            if (!shared) throw flip_error("four_connect: H does not touch the boundary");
            int D = partition.class_of.at(*shared);
            auto [afterdummy, drec] = dummy_flip(cur, F);
            cur = std::move(afterdummy);
            st.dummy = drec;
            res.dummy_vertices.emplace_back(drec.vertex, F);
            res.d_total += 1;
            // flip the class-D edge of every child triangle F does not touch
            auto kids = bt.child_triangles(i);
            std::sort(kids.begin(), kids.end());
            int step_index = 0;
            for (const Triangle& tc : kids) {
                if (tc.shared_edge(F)) continue;
                std::optional<Edge> pick;
                for (const Edge& e : tc.edges())
                    if (partition.class_of.at(e) == D) pick = e;
                if (!pick)
                    throw flip_error("four_connect: child triangle " + to_string(tc) +
                                     " has no class-" + std::to_string(D) + " edge");
                if (!edges_on_separating_triangles(cur).count(*pick))
                    throw flip_error("four_connect: checkerboard flip edge " + to_string(*pick) +
                                     " not on a separating triangle\n" +
                                     detail::trace_dump(res.trace));
                auto [next, fr] = flip(cur, *pick);
                fr.step_index = step_index++;
                cur = std::move(next);
                st.flips.push_back(fr);
            }
            int expected = static_cast<int>(kids.size()) - 3;
            if (static_cast<int>(st.flips.size()) != expected)
                throw flip_error("four_connect: checkerboard step flipped " +
                                 std::to_string(st.flips.size()) + " edges, expected " +
                                 std::to_string(expected));
            carry.f = static_cast<int>(st.flips.size());
            carry.d = 1;
            res.f_total += carry.f;
        }
        // no step may create a separating triangle
        auto seps_after = separating_triangles(cur);
        std::set<Triangle> alive(seps_after.begin(), seps_after.end());
        for (const Triangle& s : seps_after)
            if (!seps_before_set.count(s))
                throw flip_error("four_connect: created separating triangle " + to_string(s) +
                                 "\n" + detail::trace_dump(res.trace));
        // Flipping an edge of the outer face forces a re-embedding. Put the
        // new outer face inside a surviving leaf block, next to that leaf's
        // boundary: the merged block then stays away from the root of the
        // rebuilt tree and its created edges stay interior, which the edge
        // budget relies on. The leaf's own slack drops by at most two free
        // edges, which its margin absorbs.
        const auto& oa = cur.outer_face();
        if (Triangle(oa[0], oa[1], oa[2]) != outer_before && !alive.empty()) {
            std::optional<Triangle> choice;
            for (const BlockNode& nd : bt.nodes) {
                if (!nd.is_leaf() || !alive.count(nd.boundary)) continue;
                std::set<int> inside;
                for (int v : nd.global_vertices())
                    if (!nd.boundary.has_vertex(v)) inside.insert(v);
                for (const Edge& e : nd.boundary.edges()) {
                    auto [c, d] = cur.face_apexes(e);
                    for (int w : {c, d})
                        if (inside.count(w)) {
                            Triangle cand(e.u, e.v, w);
                            if (!choice || cand < *choice) choice = cand;
                        }
                }
            }
            if (choice) cur = Triangulation(cur.n(), cur.rotations(), choice->v);
        }
        bt = rebuild_after(bt, cur, carry);
        st.invariant_report = audit_invariants(bt);
        res.trace.push_back(std::move(st));
        if (!res.trace.back().invariant_report.ok)
            throw flip_error("four_connect: invariant violation after step\n" +
                             res.trace.back().invariant_report.summary() +
                             detail::trace_dump(res.trace));
        if (auto d = check_block_counters(bt); !d.ok)
            throw flip_error("four_connect: " + d.message + "\n" + detail::trace_dump(res.trace));
    }
    res.final = cur;
    if (!is_four_connected(res.final))
        throw flip_error("four_connect: final graph is not 4-connected\n" +
                         detail::trace_dump(res.trace));
    if (2 * (res.f_total + 2 * res.d_total) > t.n() - 3)
        throw flip_error("four_connect: cost bound f+2d <= (n-3)/2 violated: f=" +
                         std::to_string(res.f_total) + " d=" + std::to_string(res.d_total));
    return res;
}

}  // namespace flipforge
