#pragma once

/*
  flipforge/bookembed.hpp

  Arc diagrams: canonical orderings, the incremental monotone-biarc
  construction, spine orders from Hamiltonian cycles, conversions between
  subdivisions and biarcs, and an exact plane-ness checker.

  An arc diagram places the vertices on a horizontal spine and draws
  every edge as one halfcircle (proper arc) or a chain of halfcircles.
  The monotone construction inserts vertices in canonical order and keeps
  two invariants: outer-cycle edges stay proper, and every biarc is
  down-up (below first, then above). That caps the biarcs at n-4.
*/

#include <algorithm>
#include <deque>
#include <list>
#include <map>
#include <set>
#include <vector>

#include "flipforge/hamiltonize.hpp"
#include "flipforge/planar_graph.hpp"
#include "flipforge/rational.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

// ---------------------------------------------------------------------------
// canonical orderings

/// Insertion record for one step: the leftmost and rightmost neighbor on
/// the current outer path, the neighbor count, and (once a drawing has
/// been produced) the below-spine split vertex, or -1 when none exists.
struct CanonicalStep {
    int left = -1;
    int right = -1;
    int degree = 0;
    int split = -1;
};

/// A vertex order v1..vn such that every prefix induces a biconnected,
/// internally triangulated subgraph whose outer cycle contains the edge
/// v1v2, and each next vertex attaches to a contiguous stretch of that
/// cycle. steps[i] describes the insertion of order[i] for i >= 3.
struct CanonicalOrdering {
    std::vector<int> order;
    std::vector<CanonicalStep> steps;
};

/// Canonical ordering by reverse deletion: repeatedly strip a boundary
/// vertex (other than v1, v2) that has no chord into the boundary cycle.
/// v1 is the smallest outer-face vertex and v2 its predecessor on the
/// outer walk; ties among strippable vertices go to the smallest id.
inline CanonicalOrdering canonical_ordering(const Triangulation& t) {
    if (auto d = validate(t); !d.ok) throw flip_error("canonical_ordering: " + d.message);
    int n = t.n();
    const auto& of = t.outer_face();
    auto walk = oriented_face(t, Triangle(of[0], of[1], of[2]));
    int v1 = std::min({walk[0], walk[1], walk[2]});
    while (walk[0] != v1) std::rotate(walk.begin(), walk.begin() + 1, walk.end());
    int v2 = walk[2];  // predecessor of v1 on the outer walk

    std::vector<int> nextC(n, -1), prevC(n, -1);
    std::vector<char> present(n, 1), onC(n, 0);
    std::vector<int> nc(n, 0);  // per vertex: neighbors currently on the boundary
    for (int k = 0; k < 3; ++k) {
        nextC[walk[k]] = walk[(k + 1) % 3];
        prevC[walk[k]] = walk[(k + 2) % 3];
        onC[walk[k]] = 1;
    }
    for (int v = 0; v < n; ++v)
        for (int w : t.rotation(v))
            if (onC[w]) ++nc[v];

    std::set<int> eligible;
    auto refresh = [&](int v) {
        bool e = present[v] && onC[v] && v != v1 && v != v2 && nc[v] == 2;
        if (e)
            eligible.insert(v);
        else
            eligible.erase(v);
    };
    for (int v = 0; v < n; ++v)
        if (onC[v]) refresh(v);

    CanonicalOrdering co;
    co.order.assign(n, -1);
    co.steps.assign(n, {});
    for (int i = n - 1; i >= 3; --i) {
        if (eligible.empty())
            throw flip_error("canonical_ordering: no strippable vertex (bug sentinel)");
        int u = *eligible.begin();
        int p = prevC[u], q = nextC[u];
        const auto& ru = t.rotation(u);
        co.order[i] = u;
        co.steps[i] = {p, q, static_cast<int>(ru.size()), -1};

        // the boundary replaces u by its interior neighbors; walking the
        // rotation backwards from p lists them in boundary order
        std::vector<int> path;
        int ip = static_cast<int>(std::find(ru.begin(), ru.end(), p) - ru.begin());
        int deg = static_cast<int>(ru.size());
        for (int k = 1; k < deg; ++k) {
            int x = ru[(ip - k + deg) % deg];
            if (x == q) break;
            if (!present[x] || onC[x])
                throw flip_error("canonical_ordering: boundary update hit vertex " +
                                 std::to_string(x) + " (bug sentinel)");
            path.push_back(x);
        }
        present[u] = 0;
        onC[u] = 0;
        eligible.erase(u);
        for (int y : ru)
            if (present[y]) --nc[y];
        int cur = p;
        for (int x : path) {
            nextC[cur] = x;
            prevC[x] = cur;
            onC[x] = 1;
            cur = x;
        }
        nextC[cur] = q;
        prevC[q] = cur;
        for (int x : path)
            for (int y : t.rotation(x))
                if (present[y]) ++nc[y];
        for (int y : ru)
            if (present[y] && onC[y]) refresh(y);
        for (int x : path) {
            refresh(x);
            for (int y : t.rotation(x))
                if (present[y] && onC[y]) refresh(y);
        }
    }
    int v3 = -1;
    for (int v = 0; v < n; ++v)
        if (present[v] && v != v1 && v != v2) v3 = v;
    co.order[0] = v1;
    co.order[1] = v2;
    co.order[2] = v3;
    return co;
}

/// Check a canonical ordering against its definition: each prefix is
/// biconnected and internally triangulated (via the edge-count identity
/// E = 3V - 3 - |outer cycle| and a simple outer path), v1v2 stays on
/// the boundary, and each inserted vertex attaches to a contiguous run.
inline Diagnostic verify_canonical_ordering(const Triangulation& t, const CanonicalOrdering& co) {
    int n = t.n();
    if (static_cast<int>(co.order.size()) != n) return Diagnostic::bad("order has wrong length");
    std::vector<char> seen(n, 0);
    for (int v : co.order) {
        if (v < 0 || v >= n || seen[v]) return Diagnostic::bad("order is not a permutation");
        seen[v] = 1;
    }
    int v1 = co.order[0], v2 = co.order[1], v3 = co.order[2];
    if (!t.has_edge(v1, v2) || !t.has_edge(v1, v3) || !t.has_edge(v2, v3))
        return Diagnostic::bad("first three vertices do not span a triangle");

    std::vector<int> nextC(n, -1), prevC(n, -1);
    std::vector<char> inserted(n, 0), onC(n, 0);
    nextC[v1] = v3;
    nextC[v3] = v2;
    prevC[v2] = v3;
    prevC[v3] = v1;
    inserted[v1] = inserted[v2] = inserted[v3] = 1;
    onC[v1] = onC[v2] = onC[v3] = 1;
    long long m = 3, boundary = 3;
    std::vector<char> isnb(n, 0);
    for (int i = 3; i < n; ++i) {
        int v = co.order[i];
        std::vector<int> nb;
        for (int w : t.rotation(v))
            if (inserted[w]) nb.push_back(w);
        if (nb.size() < 2) return Diagnostic::bad("vertex " + std::to_string(v) + " attaches to fewer than two vertices");
        for (int w : nb) {
            if (!onC[w])
                return Diagnostic::bad("neighbor " + std::to_string(w) + " of " +
                                       std::to_string(v) + " is not on the boundary");
            isnb[w] = 1;
        }
        int wl = -1;
        for (int w : nb)
            if (prevC[w] == -1 || !isnb[prevC[w]]) wl = (wl == -1 ? w : -2);
        if (wl < 0) {
            for (int w : nb) isnb[w] = 0;
            return Diagnostic::bad("neighbors of " + std::to_string(v) + " are not contiguous");
        }
        std::vector<int> run{wl};
        while (static_cast<int>(run.size()) < static_cast<int>(nb.size())) {
            int nx = nextC[run.back()];
            if (nx == -1 || !isnb[nx]) break;
            run.push_back(nx);
        }
        bool contiguous = run.size() == nb.size();
        for (int w : nb) isnb[w] = 0;
        if (!contiguous)
            return Diagnostic::bad("neighbors of " + std::to_string(v) + " are not contiguous");
        for (std::size_t k = 1; k + 1 < run.size(); ++k) onC[run[k]] = 0;
        nextC[run.front()] = v;
        prevC[v] = run.front();
        nextC[v] = run.back();
        prevC[run.back()] = v;
        onC[v] = 1;
        inserted[v] = 1;
        m += static_cast<long long>(nb.size());
        boundary += 3 - static_cast<long long>(run.size());
        if (m != 3LL * (i + 1) - 3 - boundary)
            return Diagnostic::bad("prefix through " + std::to_string(v) +
                                   " is not internally triangulated");
        if (!onC[v1] || !onC[v2] || (nextC[v1] == -1 && prevC[v1] == -1))
            return Diagnostic::bad("v1v2 left the boundary");
    }
    return Diagnostic::good();
}

// ---------------------------------------------------------------------------
// arc diagrams

/// A spine point: a graph vertex or a transition point where a biarc
/// crosses the spine.
struct SpinePoint {
    int vertex = -1;      // >= 0 for vertices
    int transition = -1;  // >= 0 for transition points
    Rational pos;
};

struct ArcPiece {
    Rational l, r;
    bool above = false;
};

struct Arc {
    Edge edge;
    std::vector<ArcPiece> pieces;
};

struct ArcDiagram {
    std::vector<SpinePoint> spine;
    std::vector<Arc> arcs;
};

struct BiarcStats {
    int proper_above = 0;
    int proper_below = 0;
    int biarcs_downup = 0;
    int biarcs_other = 0;

    int total() const { return proper_above + proper_below + biarcs_downup + biarcs_other; }
    int biarcs() const { return biarcs_downup + biarcs_other; }
};

inline BiarcStats diagram_stats(const ArcDiagram& d) {
    BiarcStats s;
    for (const Arc& a : d.arcs) {
        if (a.pieces.size() == 1) {
            ++(a.pieces[0].above ? s.proper_above : s.proper_below);
        } else if (a.pieces.size() == 2 && !a.pieces[0].above && a.pieces[1].above) {
            ++s.biarcs_downup;
        } else {
            ++s.biarcs_other;
        }
    }
    return s;
}

/// Exact crossing check: two halfcircle pieces on the same side cross
/// iff their spine intervals strictly interleave (or coincide). Also
/// validates the diagram structure: increasing spine positions, pieces
/// with l < r chaining across each arc.
inline Diagnostic verify_plane(const ArcDiagram& d) {
    std::set<std::pair<long long, long long>> positions;
    Rational prev;
    for (std::size_t i = 0; i < d.spine.size(); ++i) {
        const Rational& p = d.spine[i].pos;
        if (i > 0 && !(prev < p)) return Diagnostic::bad("spine positions are not increasing");
        positions.insert({p.num, p.den});
        prev = p;
    }
    struct P {
        Rational l, r;
        bool above;
        int arc;
    };
    std::vector<P> ps;
    for (std::size_t a = 0; a < d.arcs.size(); ++a) {
        const Arc& arc = d.arcs[a];
        if (arc.pieces.empty()) return Diagnostic::bad("edge " + to_string(arc.edge) + " has no pieces");
        for (std::size_t k = 0; k < arc.pieces.size(); ++k) {
            const ArcPiece& pc = arc.pieces[k];
            if (!(pc.l < pc.r))
                return Diagnostic::bad("degenerate piece on edge " + to_string(arc.edge));
            if (!positions.count({pc.l.num, pc.l.den}) || !positions.count({pc.r.num, pc.r.den}))
                return Diagnostic::bad("piece endpoint off the spine on edge " + to_string(arc.edge));
            if (k > 0) {
                const ArcPiece& pv = arc.pieces[k - 1];
                bool chain = pv.r == pc.l || pv.l == pc.r || pv.l == pc.l || pv.r == pc.r;
                if (!chain || arc.pieces[k - 1].above == pc.above)
                    return Diagnostic::bad("pieces of edge " + to_string(arc.edge) +
                                           " do not chain with alternating sides");
            }
            ps.push_back({pc.l, pc.r, pc.above, static_cast<int>(a)});
        }
    }
    // Same-side pieces are crossing-free iff their intervals are laminar
    // (no strict interleave) with no coincident pair from distinct arcs.
    // Checked by a sweep: a closing interval must sit on top of its
    // side's stack of open intervals. O(m log m) instead of pairwise.
    auto cross_diag = [&](int a, int b) {
        return Diagnostic::bad("pieces of " + to_string(d.arcs[a].edge) + " and " +
                               to_string(d.arcs[b].edge) + " cross");
    };
    std::vector<int> order(ps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (!(ps[a].l == ps[b].l)) return ps[a].l < ps[b].l;
        if (!(ps[a].r == ps[b].r)) return ps[a].r < ps[b].r;
        if (ps[a].above != ps[b].above) return ps[a].above < ps[b].above;
        return a < b;
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        const P &a = ps[order[i - 1]], &b = ps[order[i]];
        if (a.l == b.l && a.r == b.r && a.above == b.above && a.arc != b.arc)
            return cross_diag(a.arc, b.arc);
    }
    struct Ev {
        Rational pos;
        bool open;
        int piece;
    };
    std::vector<Ev> evs;
    evs.reserve(2 * ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        evs.push_back({ps[i].l, true, static_cast<int>(i)});
        evs.push_back({ps[i].r, false, static_cast<int>(i)});
    }
    std::sort(evs.begin(), evs.end(), [&](const Ev& a, const Ev& b) {
        if (!(a.pos == b.pos)) return a.pos < b.pos;
        if (a.open != b.open) return !a.open;  // closes first
        if (a.open) {
            if (!(ps[a.piece].r == ps[b.piece].r)) return ps[b.piece].r < ps[a.piece].r;
            return a.piece < b.piece;  // open wider intervals first
        }
        if (!(ps[a.piece].l == ps[b.piece].l)) return ps[b.piece].l < ps[a.piece].l;
        return b.piece < a.piece;  // close inner intervals first
    });
    std::vector<int> stack_above, stack_below;
    for (const Ev& ev : evs) {
        auto& st = ps[ev.piece].above ? stack_above : stack_below;
        if (ev.open) {
            st.push_back(ev.piece);
        } else {
            if (st.empty() || st.back() != ev.piece)
                return cross_diag(ps[st.empty() ? ev.piece : st.back()].arc, ps[ev.piece].arc);
            st.pop_back();
        }
    }
    return Diagnostic::good();
}

// ---------------------------------------------------------------------------
// triangulating a planar graph

/// Make an embedded planar graph maximal planar by connecting components
/// and fanning chords into every big face; returns the result plus the
/// added edges (for later removal from a drawing). Deterministic.
inline std::pair<Triangulation, std::vector<Edge>> augment_to_triangulation(const PlanarGraph& g) {
    if (g.n < 3) throw flip_error("augment_to_triangulation: need at least 3 vertices");
    PlanarGraph h = g;
    std::vector<Edge> added;
    // connect components; hanging a component inside a face of another
    // keeps the rotation system planar
    std::vector<int> comp(h.n, -1);
    int ncomp = 0;
    for (int s = 0; s < h.n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : h.rot[v])
                if (comp[w] == -1) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    for (int c = 1; c < ncomp; ++c) {
        int u = -1, w = -1;
        for (int v = 0; v < h.n && (u == -1 || w == -1); ++v) {
            if (comp[v] == 0 && u == -1) u = v;
            if (comp[v] == c && w == -1) w = v;
        }
        h.rot[u].push_back(w);
        h.rot[w].push_back(u);
        added.emplace_back(u, w);
        for (int v = 0; v < h.n; ++v)
            if (comp[v] == c) comp[v] = 0;
    }
    {
        long long f = static_cast<long long>(h.face_walks().size());
        if (h.n - static_cast<long long>(h.edge_count()) + f != 2)
            throw flip_error("augment_to_triangulation: input is not plane");
    }
    // fan chords into every face with more than three corners
    auto walks = h.face_walks();
    for (auto& w : walks) {
        while (w.size() > 3) {
            int k = static_cast<int>(w.size());
            int best = -1;
            for (int i = 0; i < k; ++i) {
                int p = w[i], q = w[(i + 2) % k];
                if (p == q || h.has_edge(p, q)) continue;
                if (best == -1 || Edge(p, q) < Edge(w[best], w[(best + 2) % k])) best = i;
            }
            if (best == -1)
                throw flip_error("augment_to_triangulation: stuck on a face");
            int p = w[best], via = w[(best + 1) % k], q = w[(best + 2) % k];
            h.add_edge_at_corner(p, via, q, via);
            added.emplace_back(p, q);
            w.erase(w.begin() + (best + 1) % k);
        }
    }
    // any triangular face may serve as the outer face; pick the smallest
    std::array<int, 3> outer{-1, -1, -1};
    for (const auto& w : h.face_walks()) {
        if (w.size() != 3) throw flip_error("augment_to_triangulation: non-triangular face left");
        std::array<int, 3> f{w[0], w[1], w[2]};
        std::sort(f.begin(), f.end());
        if (outer[0] == -1 || f < outer) outer = f;
    }
    Triangulation t(h.n, h.rot, outer);
    if (auto d = validate(t); !d.ok)
        throw flip_error("augment_to_triangulation: result invalid: " + d.message);
    return {std::move(t), std::move(added)};
}

// ---------------------------------------------------------------------------
// the monotone construction

namespace detail {

/// Intermediate form of the incremental drawing: the spine as an ordered
/// list of point ids (vertices below n, transition points from n up) and
/// per edge its shape.
struct Drawing {
    int n = 0;
    std::vector<int> spine;
    std::map<Edge, int> side;         // 1 proper below, 2 proper above, 3 biarc
    std::map<Edge, int> transition;   // biarc -> transition point id
    std::map<Edge, int> left_vertex;  // biarc -> vertex at its left end
};

/// Run the incremental algorithm over a canonical ordering. Each vertex
/// goes just right of the last below-spine boundary edge under its
/// neighbor run (creating nothing new), or just right of its leftmost
/// neighbor, bending that vertex's rightward above-arcs into down-up
/// biarcs. Fills the split fields of the ordering.
inline Drawing monotone_core(const Triangulation& t, CanonicalOrdering& co) {
    int n = t.n();
    Drawing d;
    d.n = n;
    std::list<int> spine;
    std::vector<std::list<int>::iterator> at(n);
    auto place_after = [&](std::list<int>::iterator it, int id) {
        return spine.insert(std::next(it), id);
    };

    int v1 = co.order[0], v2 = co.order[1], v3 = co.order[2];
    spine = {v1, v3, v2};
    at[v1] = spine.begin();
    at[v3] = std::next(spine.begin());
    at[v2] = std::next(spine.begin(), 2);
    d.side[Edge(v1, v3)] = d.side[Edge(v3, v2)] = d.side[Edge(v1, v2)] = 1;

    std::vector<int> nextC(n, -1), prevC(n, -1);
    std::vector<char> inserted(n, 0), onC(n, 0);
    nextC[v1] = v3;
    nextC[v3] = v2;
    prevC[v2] = v3;
    prevC[v3] = v1;
    inserted[v1] = inserted[v2] = inserted[v3] = 1;
    onC[v1] = onC[v2] = onC[v3] = 1;

    // per vertex: proper above-arcs leaving it to the right, innermost first
    std::vector<std::deque<Edge>> above_right(n);
    std::vector<char> isnb(n, 0);
    int next_trans = n;

    for (int i = 3; i < n; ++i) {
        int v = co.order[i];
        std::vector<int> nb;
        for (int u : t.rotation(v))
            if (inserted[u]) nb.push_back(u);
        for (int u : nb) {
            if (!onC[u]) throw flip_error("monotone: neighbor off the boundary (bug sentinel)");
            isnb[u] = 1;
        }
        int wl = -1;
        for (int u : nb)
            if (prevC[u] == -1 || !isnb[prevC[u]]) wl = u;
        std::vector<int> run{wl};
        while (static_cast<int>(run.size()) < static_cast<int>(nb.size())) {
            run.push_back(nextC[run.back()]);
            if (run.back() == -1 || !isnb[run.back()])
                throw flip_error("monotone: neighbor run not contiguous (bug sentinel)");
        }
        for (int u : nb) isnb[u] = 0;
        int m = static_cast<int>(run.size());

        // last below-spine boundary edge under the run, if any
        int s = -1;
        for (int j = 0; j + 1 < m; ++j) {
            auto it = d.side.find(Edge(run[j], run[j + 1]));
            if (it != d.side.end() && it->second == 1) s = j;
        }
        bool split = s >= 0;
        if (!split) s = 0;
        co.steps[i].left = run.front();
        co.steps[i].right = run.back();
        co.steps[i].degree = m;
        co.steps[i].split = split ? run[s] : -1;

        auto itv = place_after(at[run[s]], v);
        at[v] = itv;
        if (!split) {
            // bend every proper above-arc leaving the insertion spot to
            // the right; innermost first so the transition points end up
            // in nesting order
            for (const Edge& e : above_right[run[0]]) {
                int tp = next_trans++;
                place_after(itv, tp);
                at.push_back({});  // placeholder; transitions are not revisited
                d.side[e] = 3;
                d.transition[e] = tp;
                d.left_vertex[e] = run[0];
            }
            above_right[run[0]].clear();
        }

        int below_partner = split ? run[s + 1] : run[0];
        d.side[Edge(v, below_partner)] = 1;
        // the below edge must hug the spine
        auto side_ok = split ? (std::next(itv) != spine.end() && *std::next(itv) == below_partner)
                             : (itv != spine.begin() && *std::prev(itv) == below_partner);
        if (!side_ok) throw flip_error("monotone: below edge is not spine-adjacent (bug sentinel)");
        for (int j = 0; j < m; ++j)
            if (run[j] != below_partner) d.side[Edge(v, run[j])] = 2;
        for (int j = split ? s + 2 : 1; j < m; ++j) above_right[v].push_back(Edge(v, run[j]));
        if (split) {
            // the arc back to the leftmost neighbor runs above the spine
            if (s == 0)
                above_right[run[0]].push_front(Edge(run[0], v));
            else
                above_right[run[0]].push_back(Edge(run[0], v));
        }

        for (int j = 1; j + 1 < m; ++j) onC[run[j]] = 0;
        nextC[run.front()] = v;
        prevC[v] = run.front();
        nextC[v] = run.back();
        prevC[run.back()] = v;
        onC[v] = 1;
        inserted[v] = 1;
    }
    d.spine.assign(spine.begin(), spine.end());
    return d;
}

/// Materialize a drawing for a subset of edges. Vertices take integer
/// positions in spine order; each run of surviving transition points is
/// spread evenly so every one sits at the midpoint of its neighbors.
inline ArcDiagram build_diagram(const Drawing& d, const std::vector<Edge>& edges) {
    std::set<int> keep_trans;
    for (const Edge& e : edges) {
        auto it = d.transition.find(e);
        if (it != d.transition.end()) keep_trans.insert(it->second);
    }
    ArcDiagram out;
    std::map<int, Rational> pos;
    std::vector<int> pts;
    for (int p : d.spine)
        if (p < d.n || keep_trans.count(p)) pts.push_back(p);
    int vindex = 0;
    for (std::size_t i = 0; i < pts.size();) {
        if (pts[i] < d.n) {
            pos[pts[i]] = Rational(vindex++);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < pts.size() && pts[j] >= d.n) ++j;
        if (i == 0 || j == pts.size())
            throw flip_error("build_diagram: transition outside the vertex range (bug sentinel)");
        long long base = vindex - 1, k = static_cast<long long>(j - i);
        for (std::size_t x = i; x < j; ++x)
            pos[pts[x]] = Rational(base * (k + 1) + static_cast<long long>(x - i + 1), k + 1);
        i = j;
    }
    for (int p : pts) {
        SpinePoint sp;
        (p < d.n ? sp.vertex : sp.transition) = (p < d.n ? p : p - d.n);
        sp.pos = pos.at(p);
        out.spine.push_back(sp);
    }
    for (const Edge& e : edges) {
        auto it = d.side.find(e);
        if (it == d.side.end()) throw flip_error("build_diagram: edge " + to_string(e) + " not drawn");
        Arc arc{e, {}};
        Rational a = pos.at(e.u), b = pos.at(e.v);
        if (b < a) std::swap(a, b);
        if (it->second == 3) {
            Rational tp = pos.at(d.transition.at(e));
            Rational lv = pos.at(d.left_vertex.at(e));
            if (!(lv == a))
                throw flip_error("build_diagram: biarc orientation broken (bug sentinel)");
            arc.pieces.push_back({a, tp, false});
            arc.pieces.push_back({tp, b, true});
        } else {
            arc.pieces.push_back({a, b, it->second == 2});
        }
        out.arcs.push_back(std::move(arc));
    }
    return out;
}

}  // namespace detail

struct MonotoneResult {
    ArcDiagram diagram;
    BiarcStats stats;
    CanonicalOrdering ordering;
    std::vector<Edge> added_edges;  // augmentation edges, already removed from the diagram
};

/// Plane biarc diagram with at most n-4 biarcs, all down-up, for a
/// triangulation.
inline MonotoneResult monotone_biarc_diagram(const Triangulation& t) {
    if (t.n() < 4) throw flip_error("monotone_biarc_diagram: need at least 4 vertices");
    MonotoneResult res;
    res.ordering = canonical_ordering(t);
    detail::Drawing d = detail::monotone_core(t, res.ordering);
    res.diagram = detail::build_diagram(d, t.edges());
    res.stats = diagram_stats(res.diagram);
    if (res.stats.biarcs_other != 0)
        throw flip_error("monotone_biarc_diagram: non-down-up biarc (bug sentinel)");
    if (res.stats.proper_above + res.stats.proper_below < 2 * t.n() - 2)
        throw flip_error("monotone_biarc_diagram: proper-arc bound violated (bug sentinel)");
    if (res.stats.biarcs() > t.n() - 4)
        throw flip_error("monotone_biarc_diagram: biarc bound violated (bug sentinel)");
    return res;
}

/// General planar graphs: triangulate first, draw, then drop the helper
/// edges from the diagram.
inline MonotoneResult monotone_biarc_diagram(const PlanarGraph& g) {
    if (g.n < 4) throw flip_error("monotone_biarc_diagram: need at least 4 vertices");
    auto [t, added] = augment_to_triangulation(g);
    MonotoneResult res;
    res.ordering = canonical_ordering(t);
    detail::Drawing d = detail::monotone_core(t, res.ordering);
    {
        // the bound is established before the helper edges are removed
        BiarcStats full = diagram_stats(detail::build_diagram(d, t.edges()));
        if (full.biarcs_other != 0 || full.biarcs() > t.n() - 4 ||
            full.proper_above + full.proper_below < 2 * t.n() - 2)
            throw flip_error("monotone_biarc_diagram: invariant violated (bug sentinel)");
    }
    std::set<Edge> drop(added.begin(), added.end());
    std::vector<Edge> keep;
    for (const Edge& e : t.edges())
        if (!drop.count(e)) keep.push_back(e);
    res.diagram = detail::build_diagram(d, keep);
    res.stats = diagram_stats(res.diagram);
    res.added_edges = std::move(added);
    return res;
}

// ---------------------------------------------------------------------------
// spine orders from Hamiltonian cycles

namespace detail {

/// Page (above/below) per edge for the spine order given by a
/// Hamiltonian cycle of a planar supergraph: cycle edges go below, the
/// remaining chords are 2-colored along their interleaving conflicts.
inline std::map<Edge, bool> page_sides(const PlanarGraph& g, const HamCycle& h) {
    int n = g.n;
    if (static_cast<int>(h.order.size()) != n)
        throw flip_error("page_assignment: cycle does not cover the graph");
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = h.order[i];
        if (v < 0 || v >= n || pos[v] != -1)
            throw flip_error("page_assignment: invalid cycle order");
        pos[v] = i;
    }
    std::map<Edge, bool> side;
    std::vector<std::pair<int, int>> chords;
    std::vector<Edge> chord_edges;
    for (const Edge& e : g.edges()) {
        int a = pos[e.u], b = pos[e.v];
        if (b < a) std::swap(a, b);
        if (b - a == 1 || (a == 0 && b == n - 1)) {
            side[e] = false;  // cycle edges below; the closing edge nests around them
        } else {
            chords.push_back({a, b});
            chord_edges.push_back(e);
        }
    }
    int k = static_cast<int>(chords.size());
    std::vector<int> color(k, -1);
    for (int s = 0; s < k; ++s) {
        if (color[s] != -1) continue;
        color[s] = 1;  // component roots go above
        std::vector<int> queue{s};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (int y = 0; y < k; ++y) {
                auto [a, b] = chords[x];
                auto [c, dd] = chords[y];
                bool conflict = (a < c && c < b && b < dd) || (c < a && a < dd && dd < b);
                if (!conflict) continue;
                if (color[y] == color[x])
                    throw flip_error("page_assignment: conflict graph is not bipartite");
                if (color[y] == -1) {
                    color[y] = 1 - color[x];
                    queue.push_back(y);
                }
            }
        }
    }
    for (int s = 0; s < k; ++s) side[chord_edges[s]] = color[s] == 1;
    return side;
}

}  // namespace detail

/// Proper arc diagram from a Hamiltonian spine order (the cycle may come
/// from a planar supergraph; only edges of g are drawn).
inline ArcDiagram page_assignment(const PlanarGraph& g, const HamCycle& h) {
    auto side = detail::page_sides(g, h);
    ArcDiagram out;
    std::vector<int> pos(g.n);
    for (int i = 0; i < g.n; ++i) {
        pos[h.order[i]] = i;
        out.spine.push_back({h.order[i], -1, Rational(i)});
    }
    for (const auto& [e, above] : side) {
        int a = pos[e.u], b = pos[e.v];
        if (b < a) std::swap(a, b);
        out.arcs.push_back({e, {{Rational(a), Rational(b), above}}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// biarcs from subdivisions

/// Biarc diagram of the original graph from a subdivision witness: draw
/// the subdivided graph as a proper arc diagram along the witness cycle,
/// then erase each subdivision vertex, merging its two halfcircles into
/// a biarc — or a single proper arc when both lie on the same side.
inline std::pair<ArcDiagram, BiarcStats> biarc_from_subdivision(const Triangulation& g,
                                                                const SubdivisionResult& s) {
    // strip the augmentation edges; what remains is the subdivided graph
    PlanarGraph sub = s.witness;
    for (const Edge& e : s.witness_added) {
        auto erase_from = [&](int v, int w) {
            auto& r = sub.rot[v];
            r.erase(std::find(r.begin(), r.end(), w));
        };
        erase_from(e.u, e.v);
        erase_from(e.v, e.u);
    }
    auto side = detail::page_sides(sub, s.cycle);

    int n = g.n();
    std::map<int, Edge> edge_of_mid;
    for (const auto& [e, m] : s.midpoint) edge_of_mid[m] = e;
    std::vector<int> pos(sub.n);
    for (int i = 0; i < sub.n; ++i) pos[s.cycle.order[i]] = i;

    // decide per subdivided edge: merge (same side) or keep as biarc
    std::map<Edge, bool> merged;
    for (const auto& [e, m] : s.midpoint) {
        Edge a(e.u, m), b(m, e.v);
        merged[e] = side.at(a) == side.at(b);
    }
    // final spine: original vertices plus midpoints of unmerged edges
    std::vector<std::pair<int, bool>> pts;  // (id, is_vertex)
    for (int v : s.cycle.order) {
        if (v < n) {
            pts.push_back({v, true});
        } else {
            const Edge& e = edge_of_mid.at(v);
            if (!merged.at(e)) pts.push_back({v, false});
        }
    }
    // start the spine at an original vertex so no transition run leads
    auto first_vertex = std::find_if(pts.begin(), pts.end(), [](const auto& p) { return p.second; });
    if (first_vertex == pts.end())
        throw flip_error("biarc_from_subdivision: no original vertex on the cycle (bug sentinel)");
    std::rotate(pts.begin(), first_vertex, pts.end());
    ArcDiagram out;
    std::map<int, Rational> fpos;
    int vindex = 0;
    for (std::size_t i = 0; i < pts.size();) {
        if (pts[i].second) {
            fpos[pts[i].first] = Rational(vindex++);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < pts.size() && !pts[j].second) ++j;
        long long base = vindex - 1, k = static_cast<long long>(j - i);
        for (std::size_t x = i; x < j; ++x)
            fpos[pts[x].first] =
                Rational(base * (k + 1) + static_cast<long long>(x - i + 1), k + 1);
        i = j;
    }
    int tindex = 0;
    for (const auto& [id, isv] : pts) {
        SpinePoint sp;
        if (isv)
            sp.vertex = id;
        else
            sp.transition = tindex++;
        sp.pos = fpos.at(id);
        out.spine.push_back(sp);
    }
    // plain edges first, then the reassembled subdivided ones
    for (const auto& [e, above] : side) {
        if (e.u >= n || e.v >= n) continue;
        out.arcs.push_back({e, {{std::min(fpos.at(e.u), fpos.at(e.v)),
                                 std::max(fpos.at(e.u), fpos.at(e.v)), above}}});
    }
    for (const auto& [e, m] : s.midpoint) {
        Arc arc{e, {}};
        if (merged.at(e)) {
            arc.pieces.push_back({std::min(fpos.at(e.u), fpos.at(e.v)),
                                  std::max(fpos.at(e.u), fpos.at(e.v)), side.at(Edge(e.u, m))});
        } else {
            // The transition point sits wherever the cycle placed it, which
            // may be left or right of both endpoints; sort each halfcircle.
            const Rational &pm = fpos.at(m), &pu = fpos.at(e.u), &pv = fpos.at(e.v);
            ArcPiece a{std::min(pu, pm), std::max(pu, pm), side.at(Edge(e.u, m))};
            ArcPiece b{std::min(pm, pv), std::max(pm, pv), side.at(Edge(m, e.v))};
            if (b.l < a.l || (a.l == b.l && b.r < a.r)) std::swap(a, b);
            arc.pieces.push_back(a);
            arc.pieces.push_back(b);
        }
        out.arcs.push_back(std::move(arc));
    }
    BiarcStats stats = diagram_stats(out);
    if (stats.biarcs() > static_cast<int>(s.subdivided.size()))
        throw flip_error("biarc_from_subdivision: more biarcs than subdivisions (bug sentinel)");
    return {std::move(out), stats};
}

}  // namespace flipforge
