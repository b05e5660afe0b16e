#pragma once

/*
  flipforge/hamiltonize.hpp

  Hamiltonian cycles through flips.

  A 4-connected triangulation is Hamiltonian, so after four_connect a
  cycle can be found by backtracking search. The dummy vertices inserted
  along the way are then eliminated: each is crossed by the cycle along a
  two-edge path, and depending on the circular distance of those two
  edges around the dummy, zero, one or two flips (or edge subdivisions)
  of the host triangle's edges reproduce a shortcut in the original
  graph. End to end this turns any triangulation into a Hamiltonian one
  with at most floor((n-3)/2) flips, or into a subhamiltonian graph with
  at most that many subdivisions.
*/

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "flipforge/fourconnect.hpp"
#include "flipforge/generators.hpp"
#include "flipforge/planar_graph.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

// ---------------------------------------------------------------------------
// Hamiltonian cycles

/// A cyclic vertex sequence visiting every vertex exactly once, with
/// consecutive (cyclically) vertices adjacent in the host graph.
struct HamCycle {
    std::vector<int> order;
};

namespace detail {

/// Rotate/reflect so the cycle starts at 0 and the smaller neighbor
/// comes second. Makes results independent of search internals.
inline void normalize_cycle(std::vector<int>& order) {
    auto it = std::find(order.begin(), order.end(), 0);
    if (it == order.end()) return;
    std::rotate(order.begin(), it, order.end());
    if (order.size() > 2 && order[1] > order.back())
        std::reverse(order.begin() + 1, order.end());
}

template <typename HasEdge>
Diagnostic verify_cycle_impl(int n, HasEdge&& has_edge, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != n)
        return Diagnostic::bad("cycle has " + std::to_string(order.size()) +
                               " vertices, expected " + std::to_string(n));
    std::vector<char> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= n) return Diagnostic::bad("out-of-range vertex " + std::to_string(v));
        if (seen[v]) return Diagnostic::bad("vertex " + std::to_string(v) + " visited twice");
        seen[v] = 1;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        int a = order[i], b = order[(i + 1) % order.size()];
        if (!has_edge(a, b))
            return Diagnostic::bad("cycle step (" + std::to_string(a) + "," + std::to_string(b) +
                                   ") is not an edge");
    }
    return Diagnostic::good();
}

/// Rotation-based (Posa) local search for a Hamiltonian cycle. Extends a
/// path greedily; when stuck, either closes a spanning path, reopens a
/// non-spanning cycle next to an unvisited vertex, or rotates the path tail
/// around a random neighbor of the endpoint. Finds cycles very fast when
/// one exists (it cannot prove absence). Returns the cycle order or an
/// empty vector when the step cap runs out; `steps` is incremented per
/// rotation for budget accounting.
inline std::vector<int> posa_cycle(const std::vector<std::vector<int>>& adj,
                                   std::uint64_t seed, long long step_cap,
                                   long long& steps) {
    int n = static_cast<int>(adj.size());
    std::mt19937_64 rng(seed);
    std::vector<int> pos(n, -1), path;
    path.reserve(n);
    int s = static_cast<int>(rng() % n);
    path.push_back(s);
    pos[s] = 0;
    for (long long local = 0; local < step_cap; ++local, ++steps) {
        int u = path.back();
        int ext = -1;
        for (int y : adj[u])
            if (pos[y] < 0) {
                ext = y;
                break;
            }
        if (ext >= 0) {
            pos[ext] = static_cast<int>(path.size());
            path.push_back(ext);
            continue;
        }
        bool closes = std::find(adj[u].begin(), adj[u].end(), path.front()) != adj[u].end();
        if (static_cast<int>(path.size()) == n) {
            if (closes) {
                normalize_cycle(path);
                return path;
            }
        } else if (closes) {
            // reopen the cycle so a vertex with an unvisited neighbor
            // becomes the endpoint, then extend from there
            for (int i = 0; i < static_cast<int>(path.size()); ++i) {
                bool out = false;
                for (int y : adj[path[i]])
                    if (pos[y] < 0) {
                        out = true;
                        break;
                    }
                if (out) {
                    std::rotate(path.begin(), path.begin() + (i + 1) % path.size(),
                                path.end());
                    for (int j = 0; j < static_cast<int>(path.size()); ++j)
                        pos[path[j]] = j;
                    break;
                }
            }
            continue;
        }
        const auto& nb = adj[u];
        int v = nb[rng() % nb.size()];
        int pv = pos[v];
        if (pv < 0 || pv + 1 >= static_cast<int>(path.size())) continue;
        std::reverse(path.begin() + pv + 1, path.end());
        for (int j = pv + 1; j < static_cast<int>(path.size()); ++j) pos[path[j]] = j;
    }
    return {};
}

/// Backtracking Hamiltonian cycle search treating every edge as a ternary
/// variable (undecided / in the cycle / out). Constraint propagation keeps
/// each vertex at exactly two cycle edges: a vertex with two in-edges
/// forces the rest out, a vertex with only two usable edges left forces
/// them in, and chain endpoints are tracked so an in-edge that would close
/// a short cycle is a contradiction. Branches on an undecided edge at the
/// most constrained vertex with a connectivity cut at each node. Restarts
/// with a growing node cap and seeded tie-breaking make a single unlucky
/// branch order harmless; an attempt that exhausts its tree below the cap
/// proves no cycle exists, so the result stays exact. Returns an empty
/// vector if no cycle exists; throws when the total node budget runs out.
inline std::vector<int> find_ham_cycle(const std::vector<std::vector<int>>& adj,
                                       long long budget = 20'000'000) {
    int n = static_cast<int>(adj.size());
    if (n < 3) return {};
    // edge list with per-vertex incidence (neighbor, edge id)
    std::vector<std::array<int, 2>> ev;
    std::vector<std::vector<std::pair<int, int>>> inc(n);
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) {
                inc[u].push_back({v, static_cast<int>(ev.size())});
                inc[v].push_back({u, static_cast<int>(ev.size())});
                ev.push_back({u, v});
            }
    int m = static_cast<int>(ev.size());
    for (int v = 0; v < n; ++v)
        if (static_cast<int>(inc[v].size()) < 2) return {};

    long long nodes_heur = 0;
    // heuristic phase: rotation search discovers cycles orders of magnitude
    // faster than backtracking; absence still requires the exact phase below
    for (std::uint64_t seed = 0; seed < 32 && nodes_heur < budget / 2; ++seed) {
        std::vector<int> cyc = posa_cycle(adj, seed, 400LL * n + 4000, nodes_heur);
        if (!cyc.empty()) return cyc;
    }

    enum : std::int8_t { kUndec = 0, kIn = 1, kOut = 2 };
    std::vector<std::int8_t> st(m);
    std::vector<int> deg_in(n), deg_av(n), cend(n);
    struct Rec {
        int e;
        int a, b;  // merged chain endpoints for in-edges, -1 otherwise
    };
    std::vector<Rec> trail;
    std::vector<int> queue;
    long long nodes_total = nodes_heur;

    int chosen = 0;
    bool failed = false, complete = false;

    auto decide = [&](int e, std::int8_t s) {
        if (failed || complete) return;
        if (st[e] != kUndec) {
            if (st[e] != s) failed = true;
            return;
        }
        int u = ev[e][0], v = ev[e][1];
        Rec r{e, -1, -1};
        if (s == kIn) {
            if (deg_in[u] >= 2 || deg_in[v] >= 2) {
                failed = true;
                return;
            }
            int a = cend[u], b = cend[v];
            if (a == v) {  // closes the chain through u and v
                if (chosen != n - 1) {
                    failed = true;
                    return;
                }
                complete = true;
            } else {
                cend[a] = b;
                cend[b] = a;
                r.a = a;
                r.b = b;
            }
            ++deg_in[u];
            ++deg_in[v];
            ++chosen;
        }
        st[e] = s;
        --deg_av[u];
        --deg_av[v];
        trail.push_back(r);
        queue.push_back(u);
        queue.push_back(v);
    };

    auto propagate = [&]() {
        while (!queue.empty() && !failed && !complete) {
            int w = queue.back();
            queue.pop_back();
            if (deg_in[w] + deg_av[w] < 2) {
                failed = true;
                return;
            }
            if (deg_in[w] == 2) {
                for (auto [y, e] : inc[w])
                    if (st[e] == kUndec) decide(e, kOut);
            } else if (deg_in[w] + deg_av[w] == 2) {
                for (auto [y, e] : inc[w])
                    if (st[e] == kUndec) decide(e, kIn);
            }
        }
    };

    auto undo_to = [&](std::size_t mark) {
        for (std::size_t i = trail.size(); i-- > mark;) {
            const Rec& r = trail[i];
            int u = ev[r.e][0], v = ev[r.e][1];
            if (st[r.e] == kIn) {
                if (r.a >= 0) {
                    cend[r.a] = u;
                    cend[r.b] = v;
                }
                --deg_in[u];
                --deg_in[v];
                --chosen;
            }
            st[r.e] = kUndec;
            ++deg_av[u];
            ++deg_av[v];
        }
        trail.resize(mark);
        failed = complete = false;
    };

    // A Hamiltonian cycle is a spanning 2-connected subgraph, so the graph
    // of in/undecided edges must be connected with no articulation vertex.
    std::vector<int> dfs_num(n), dfs_low(n), dfs_parent(n), dfs_stack;
    auto biconnected = [&]() {
        std::fill(dfs_num.begin(), dfs_num.end(), -1);
        int timer = 0, root_children = 0;
        dfs_parent[0] = -1;
        dfs_stack.assign(1, 0);
        dfs_num[0] = dfs_low[0] = timer++;
        // iterative DFS; process a vertex's edges lazily via an index stack
        std::vector<std::size_t> it_stack(1, 0);
        while (!dfs_stack.empty()) {
            int v = dfs_stack.back();
            if (it_stack.back() < inc[v].size()) {
                auto [y, e] = inc[v][it_stack.back()++];
                if (st[e] == kOut) continue;
                if (dfs_num[y] < 0) {
                    dfs_parent[y] = v;
                    dfs_num[y] = dfs_low[y] = timer++;
                    if (v == 0) ++root_children;
                    dfs_stack.push_back(y);
                    it_stack.push_back(0);
                } else if (y != dfs_parent[v]) {
                    dfs_low[v] = std::min(dfs_low[v], dfs_num[y]);
                }
            } else {
                dfs_stack.pop_back();
                it_stack.pop_back();
                int p = dfs_parent[v];
                if (p > 0 && dfs_low[v] >= dfs_num[p]) return false;  // p articulates
                if (p >= 0) dfs_low[p] = std::min(dfs_low[p], dfs_low[v]);
            }
        }
        return timer == n && root_children <= 1;
    };

    auto extract_cycle = [&]() {
        std::vector<int> cyc{0};
        int prev = -1, cur = 0;
        while (static_cast<int>(cyc.size()) < n) {
            for (auto [y, e] : inc[cur])
                if (st[e] == kIn && y != prev) {
                    prev = cur;
                    cur = y;
                    cyc.push_back(y);
                    break;
                }
        }
        normalize_cycle(cyc);
        return cyc;
    };

    for (long long attempt = 0, cap = 50'000;; ++attempt, cap += cap / 2) {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + attempt);
        std::fill(st.begin(), st.end(), kUndec);
        std::fill(deg_in.begin(), deg_in.end(), 0);
        for (int v = 0; v < n; ++v) {
            deg_av[v] = static_cast<int>(inc[v].size());
            cend[v] = v;
        }
        trail.clear();
        queue.clear();
        chosen = 0;
        failed = complete = false;
        long long nodes = 0;
        bool capped = false;

        // seed the propagation with the initial degree constraints
        for (int v = 0; v < n; ++v) queue.push_back(v);
        propagate();

        auto rec = [&](auto&& self) -> bool {
            if (capped || failed) return false;
            if (complete) return chosen == n;
            if (++nodes > cap) {
                capped = true;
                return false;
            }
            if (++nodes_total > budget)
                throw flip_error("find_ham_cycle: search budget exceeded (bug sentinel)");
            if (!biconnected()) return false;
            // branch on an undecided edge at the most constrained vertex
            int bw = -1, best = INT_MAX;
            for (int v = 0; v < n; ++v) {
                if (deg_in[v] == 2 || deg_av[v] == 0) continue;
                int slack = deg_av[v] - (2 - deg_in[v]);
                int key = slack * 4 + (deg_in[v] == 0 ? 1 : 0);
                if (key < best) {
                    best = key;
                    bw = v;
                }
            }
            if (bw < 0) return chosen == n && complete;
            std::vector<int> es;
            for (auto [y, e] : inc[bw])
                if (st[e] == kUndec) es.push_back(e);
            std::shuffle(es.begin(), es.end(), rng);
            int be = es.front();
            for (std::int8_t s : {kIn, kOut}) {
                std::size_t mark = trail.size();
                decide(be, static_cast<std::int8_t>(s));
                propagate();
                if (!failed && self(self)) return true;
                undo_to(mark);
                if (capped) return false;
            }
            return false;
        };

        bool found = !failed && rec(rec);
        if (found) return extract_cycle();
        if (!capped) return {};  // the attempt ran to exhaustion: no cycle
    }
}

}  // namespace detail

inline Diagnostic verify_ham_cycle(const Triangulation& t, const HamCycle& h) {
    return detail::verify_cycle_impl(
        t.n(), [&](int a, int b) { return t.has_edge(a, b); }, h.order);
}

inline Diagnostic verify_ham_cycle(const PlanarGraph& g, const HamCycle& h) {
    return detail::verify_cycle_impl(
        g.n, [&](int a, int b) { return g.has_edge(a, b); }, h.order);
}

/// Hamiltonian cycle of a 4-connected triangulation. Existence is
/// guaranteed, so search failure or a budget overrun signals a bug.
inline HamCycle ham_cycle_4connected(const Triangulation& t, long long budget = 20'000'000) {
    if (auto d = validate(t); !d.ok) throw flip_error("ham_cycle_4connected: " + d.message);
    if (!is_four_connected(t))
        throw flip_error("ham_cycle_4connected: triangulation is not 4-connected");
    std::vector<int> order = detail::find_ham_cycle(t.rotations(), budget);
    if (order.empty())
        throw flip_error("ham_cycle_4connected: no cycle found (bug sentinel)");
    HamCycle h{std::move(order)};
    if (auto d = verify_ham_cycle(t, h); !d.ok)
        throw flip_error("ham_cycle_4connected: " + d.message);
    return h;
}

// ---------------------------------------------------------------------------
// dummy elimination, flip route

struct HamFlipResult {
    std::vector<FlipRecord> flips;  // applied to the original input, in order
    Triangulation final;
    HamCycle cycle;  // Hamiltonian in `final`
};

namespace detail {

/// Classify the cycle path u-v-w through dummy vertex v. Returns the
/// positions of u and w in v's (length-6) rotation and their circular
/// distance 1..3.
struct DummyCrossing {
    int u = -1, w = -1;
    int dist = 0;
};

inline DummyCrossing dummy_crossing(const Triangulation& host, int v,
                                    const std::vector<int>& order) {
    auto it = std::find(order.begin(), order.end(), v);
    if (it == order.end())
        throw flip_error("dummy vertex " + std::to_string(v) + " missing from the cycle");
    std::size_t i = it - order.begin(), k = order.size();
    DummyCrossing c;
    c.u = order[(i + k - 1) % k];
    c.w = order[(i + 1) % k];
    const auto& rv = host.rotation(v);
    if (rv.size() != 6)
        throw flip_error("dummy vertex " + std::to_string(v) + " has degree " +
                         std::to_string(rv.size()) + ", expected 6");
    auto pos = [&](int x) {
        auto jt = std::find(rv.begin(), rv.end(), x);
        if (jt == rv.end())
            throw flip_error("cycle neighbor " + std::to_string(x) +
                             " is not adjacent to dummy " + std::to_string(v));
        return static_cast<int>(jt - rv.begin());
    };
    int d = (pos(c.w) - pos(c.u) + 6) % 6;
    c.dist = std::min(d, 6 - d);
    if (c.dist < 1 || c.dist > 3)
        throw flip_error("impossible circular distance at dummy " + std::to_string(v));
    return c;
}

/// The host-triangle edge crossed by the drawn edge v-p, where p is one
/// of the three apexes around dummy v: it connects p's two rotation
/// neighbors.
inline Edge crossed_edge(const Triangulation& host, int v, int p, const Triangle& T) {
    const auto& rv = host.rotation(v);
    auto jt = std::find(rv.begin(), rv.end(), p);
    int i = static_cast<int>(jt - rv.begin());
    Edge e(rv[(i + 5) % 6], rv[(i + 1) % 6]);
    if (!T.has_edge(e))
        throw flip_error("crossed edge " + to_string(e) + " is not on triangle " + to_string(T));
    return e;
}

}  // namespace detail

/// Turn the original graph Hamiltonian: replay the ordinary flips of the
/// four_connect trace, then shortcut each dummy vertex with 0, 1 or 2
/// flips of its host triangle's edges depending on how the cycle crosses
/// it. Total flips <= f + 2d.
inline HamFlipResult eliminate_dummies_flips(const Triangulation& original,
                                             const FourConnectResult& r, const HamCycle& h) {
    if (auto d = verify_ham_cycle(r.final, h); !d.ok)
        throw flip_error("eliminate_dummies_flips: cycle invalid in the 4-connected host: " +
                         d.message);
    int n = original.n();
    if (r.final.n() != n + static_cast<int>(r.dummy_vertices.size()))
        throw flip_error("eliminate_dummies_flips: result does not match the original");

    HamFlipResult out;
    Triangulation cur = original;
    auto apply = [&](const Edge& e) {
        auto [next, rec] = flip(cur, e);  // throws when the replay is invalid
        rec.step_index = static_cast<int>(out.flips.size());
        out.flips.push_back(rec);
        cur = std::move(next);
        return out.flips.back().created;
    };
    for (const StepTrace& st : r.trace)
        for (const FlipRecord& fr : st.flips) {
            Edge created = apply(fr.removed);
            if (created != fr.created)
                throw flip_error("eliminate_dummies_flips: replay of " + to_string(fr.removed) +
                                 " created " + to_string(created) + ", trace says " +
                                 to_string(fr.created));
        }

    std::vector<int> order = h.order;
    for (const auto& [v, T] : r.dummy_vertices) {
        detail::DummyCrossing c = detail::dummy_crossing(r.final, v, order);
        bool u_apex = !T.has_vertex(c.u), w_apex = !T.has_vertex(c.w);
        if (c.dist == 1 || (c.dist == 2 && !u_apex && !w_apex)) {
            // shortcut edge already present in the original
            if (!cur.has_edge(c.u, c.w))
                throw flip_error("eliminate_dummies_flips: expected edge (" +
                                 std::to_string(c.u) + "," + std::to_string(c.w) + ") missing");
        } else if (c.dist == 3) {
            if (u_apex == w_apex)
                throw flip_error("eliminate_dummies_flips: opposite crossing needs exactly one "
                                 "apex endpoint");
            int p = u_apex ? c.u : c.w;
            Edge created = apply(detail::crossed_edge(r.final, v, p, T));
            if (created != Edge(c.u, c.w))
                throw flip_error("eliminate_dummies_flips: flip created " + to_string(created) +
                                 ", expected the shortcut (" + std::to_string(c.u) + "," +
                                 std::to_string(c.w) + ")");
        } else {  // dist == 2, both endpoints apexes
            if (!u_apex || !w_apex)
                throw flip_error("eliminate_dummies_flips: distance-two crossing with mixed "
                                 "endpoints");
            // first the edge crossed by v-w, then the edge crossed by u-v
            Edge first = apply(detail::crossed_edge(r.final, v, c.w, T));
            if (first.u != c.w && first.v != c.w)
                throw flip_error("eliminate_dummies_flips: intermediate flip missed endpoint " +
                                 std::to_string(c.w));
            Edge second = apply(detail::crossed_edge(r.final, v, c.u, T));
            if (second != Edge(c.u, c.w))
                throw flip_error("eliminate_dummies_flips: flips created " + to_string(second) +
                                 ", expected the shortcut (" + std::to_string(c.u) + "," +
                                 std::to_string(c.w) + ")");
        }
        order.erase(std::find(order.begin(), order.end(), v));
    }

    if (auto d = validate(cur); !d.ok)
        throw flip_error("eliminate_dummies_flips: result invalid: " + d.message);
    detail::normalize_cycle(order);
    out.final = std::move(cur);
    out.cycle = HamCycle{std::move(order)};
    if (auto d = verify_ham_cycle(out.final, out.cycle); !d.ok)
        throw flip_error("eliminate_dummies_flips: result cycle invalid: " + d.message);
    if (static_cast<int>(out.flips.size()) > r.f_total + 2 * r.d_total)
        throw flip_error("eliminate_dummies_flips: flip count exceeds f+2d");
    if (static_cast<int>(out.flips.size()) > (n - 3) / 2)
        throw flip_error("eliminate_dummies_flips: flip count exceeds (n-3)/2");
    return out;
}

// ---------------------------------------------------------------------------
// end-to-end flip route

/// Hamiltonize any triangulation with at most floor((n-3)/2) flips.
inline HamFlipResult hamflip(const Triangulation& t, long long budget = 20'000'000) {
    if (auto d = validate(t); !d.ok) throw flip_error("hamflip: " + d.message);
    int n = t.n();
    if (n <= 5 || is_four_connected(t)) {
        // small triangulations are Hamiltonian outright
        std::vector<int> order = detail::find_ham_cycle(t.rotations(), budget);
        if (order.empty()) throw flip_error("hamflip: no cycle found (bug sentinel)");
        HamFlipResult out;
        out.final = t;
        out.cycle = HamCycle{std::move(order)};
        if (auto d = verify_ham_cycle(out.final, out.cycle); !d.ok)
            throw flip_error("hamflip: " + d.message);
        return out;
    }
    FourConnectResult r = four_connect(t);
    HamCycle h = ham_cycle_4connected(r.final, budget);
    HamFlipResult out = eliminate_dummies_flips(t, r, h);
    if (static_cast<int>(out.flips.size()) > (n - 3) / 2)
        throw flip_error("hamflip: flip count exceeds (n-3)/2");
    return out;
}

// ---------------------------------------------------------------------------
// dummy elimination, subdivision route

struct SubdivisionResult {
    std::set<Edge> subdivided;          // edges of the original graph
    PlanarGraph witness;                // planar Hamiltonian supergraph
    std::vector<Edge> witness_added;    // augmentation edges (witness minus subdivided input)
    std::map<Edge, int> midpoint;       // subdivided edge -> witness vertex id
    HamCycle cycle;                     // Hamiltonian in `witness`
};

namespace detail {

/// Connect subdivision vertices (ids >= sub_lo) inside every face of g:
/// one per face links to the opposite corner, two or three link to each
/// other. Returns the added edges.
inline std::vector<Edge> augment_subdivided(PlanarGraph& g, int sub_lo) {
    std::vector<Edge> added;
    auto walks = g.face_walks();
    for (const auto& w : walks) {
        int k = static_cast<int>(w.size());
        std::vector<int> subs;
        for (int i = 0; i < k; ++i)
            if (w[i] >= sub_lo) subs.push_back(i);
        if (subs.empty()) continue;
        if (static_cast<int>(subs.size()) + 3 != k)
            throw flip_error("augment_subdivided: unexpected face shape");
        auto chord = [&](int i, int j) {
            g.add_edge_at_corner(w[i], w[(i + 1) % k], w[j], w[(j + k - 1) % k]);
            added.emplace_back(w[i], w[j]);
        };
        if (subs.size() == 1) {
            chord(subs[0], (subs[0] + 2) % k);  // opposite corner of the quad
        } else if (subs.size() == 2) {
            chord(subs[0], subs[1]);
        } else {
            chord(subs[0], subs[1]);
            chord(subs[1], subs[2]);
            chord(subs[2], subs[0]);
        }
    }
    return added;
}

/// Genus check via Euler's formula: a connected rotation system embeds
/// in the plane iff V - E + F = 2.
inline bool is_plane_embedding(const PlanarGraph& g) {
    if (!is_connected(g)) return false;
    long long f = static_cast<long long>(g.face_walks().size());
    return g.n - static_cast<long long>(g.edge_count()) + f == 2;
}

/// Vertex connectivity >= k, by unit-capacity max flow on the split
/// network. Sound source choice: any 3-cut misses one of the first four
/// vertices.
inline bool vertex_connectivity_at_least(const PlanarGraph& g, int k) {
    int n = g.n;
    if (n <= k) return false;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) < k) return false;
    if (!is_connected(g)) return false;

    // node 2v = v_in, 2v+1 = v_out
    auto maxflow_ge = [&](int s, int t) {
        std::vector<std::map<int, int>> cap(2 * n);
        for (int v = 0; v < n; ++v) cap[2 * v][2 * v + 1] = (v == s || v == t) ? k : 1;
        for (int v = 0; v < n; ++v)
            for (int w : g.rot[v]) cap[2 * v + 1][2 * w] = k;  // arc capacity need not be 1
        int flow = 0;
        while (flow < k) {
            std::vector<int> prev(2 * n, -1);
            std::vector<int> queue{2 * s + 1};
            prev[2 * s + 1] = 2 * s + 1;
            for (std::size_t qi = 0; qi < queue.size() && prev[2 * t] < 0; ++qi) {
                int x = queue[qi];
                for (const auto& [y, c] : cap[x])
                    if (c > 0 && prev[y] < 0) {
                        prev[y] = x;
                        queue.push_back(y);
                    }
            }
            if (prev[2 * t] < 0) break;
            for (int x = 2 * t; x != 2 * s + 1; x = prev[x]) {
                --cap[prev[x]][x];
                ++cap[x][prev[x]];
            }
            ++flow;
        }
        return flow >= k;
    };
    int sources = std::min(k, n);
    for (int s = 0; s < sources; ++s)
        for (int t = 0; t < n; ++t) {
            if (t == s || g.has_edge(s, t)) continue;
            if (!maxflow_ge(s, t)) return false;
        }
    return true;
}

}  // namespace detail

/// Subdivision route: instead of flipping, subdivide. Performs the dummy
/// flips of the trace on the original, subdivides every ordinary-flip
/// edge, augments the faces around subdivision vertices, finds a
/// Hamiltonian cycle there, and per dummy subdivides the 0/1/2 crossed
/// host-triangle edges. Returns at most f+2d subdivided original edges
/// with a planar Hamiltonian witness.
inline SubdivisionResult eliminate_dummies_subdivisions(const Triangulation& original,
                                                        const FourConnectResult& r,
                                                        long long budget = 20'000'000) {
    int n = original.n();
    // G+ : dummy flips performed, ordinary flips replaced by subdivisions
    Triangulation td = original;
    for (const StepTrace& st : r.trace)
        if (st.dummy) {
            const DummyRecord& dr = *st.dummy;
            if (dr.vertex != td.n())
                throw flip_error("eliminate_dummies_subdivisions: dummy id mismatch");
            td = stack_into_face(td, dr.face);
            for (const FlipRecord& fr : dr.flips) {
                auto [next, rec] = flip(td, fr.removed);
                if (rec.created != fr.created)
                    throw flip_error("eliminate_dummies_subdivisions: dummy replay of " +
                                     to_string(fr.removed) + " created " +
                                     to_string(rec.created) + ", trace says " +
                                     to_string(fr.created));
                td = std::move(next);
            }
        }
    std::vector<Edge> flip_edges;
    for (const StepTrace& st : r.trace)
        for (const FlipRecord& fr : st.flips) flip_edges.push_back(fr.removed);

    PlanarGraph gplus(td);
    int plus_lo = gplus.n;
    std::map<Edge, int> plus_mid;
    for (const Edge& e : flip_edges) plus_mid[e] = gplus.subdivide(e);
    detail::augment_subdivided(gplus, plus_lo);
    if (!detail::is_plane_embedding(gplus))
        throw flip_error("eliminate_dummies_subdivisions: augmented graph is not plane");
    if (!detail::vertex_connectivity_at_least(gplus, 4))
        throw flip_error("eliminate_dummies_subdivisions: augmented graph is not 4-connected");
    std::vector<int> hplus = detail::find_ham_cycle(gplus.rot, budget);
    if (hplus.empty())
        throw flip_error("eliminate_dummies_subdivisions: no cycle found (bug sentinel)");

    // classify each dummy crossing in G+ (rotation of the dummy matches
    // r.final; its six triangles are never touched)
    SubdivisionResult out;
    for (const Edge& e : flip_edges) out.subdivided.insert(e);
    struct Shortcut {
        int v;
        std::vector<Edge> subs;  // 0, 1 or 2 crossed edges, in path order u -> w
    };
    std::vector<Shortcut> shortcuts;
    for (const auto& [v, T] : r.dummy_vertices) {
        detail::DummyCrossing c = detail::dummy_crossing(r.final, v, hplus);
        bool u_apex = !T.has_vertex(c.u), w_apex = !T.has_vertex(c.w);
        Shortcut sc{v, {}};
        if (c.dist == 3) {
            if (u_apex == w_apex)
                throw flip_error("eliminate_dummies_subdivisions: opposite crossing needs "
                                 "exactly one apex endpoint");
            int p = u_apex ? c.u : c.w;
            sc.subs.push_back(detail::crossed_edge(r.final, v, p, T));
        } else if (c.dist == 2 && u_apex && w_apex) {
            sc.subs.push_back(detail::crossed_edge(r.final, v, c.u, T));
            sc.subs.push_back(detail::crossed_edge(r.final, v, c.w, T));
        }
        for (const Edge& e : sc.subs)
            if (!out.subdivided.insert(e).second)
                throw flip_error("eliminate_dummies_subdivisions: edge " + to_string(e) +
                                 " subdivided twice");
        shortcuts.push_back(std::move(sc));
    }
    if (static_cast<int>(out.subdivided.size()) > r.f_total + 2 * r.d_total)
        throw flip_error("eliminate_dummies_subdivisions: subdivision count exceeds f+2d");
    if (static_cast<int>(out.subdivided.size()) > (n - 3) / 2)
        throw flip_error("eliminate_dummies_subdivisions: subdivision count exceeds (n-3)/2");

    // witness: original graph with all chosen edges subdivided, then
    // augmented the same way
    PlanarGraph wit(original);
    for (const Edge& e : out.subdivided) out.midpoint[e] = wit.subdivide(e);
    out.witness_added = detail::augment_subdivided(wit, n);
    if (!detail::is_plane_embedding(wit))
        throw flip_error("eliminate_dummies_subdivisions: witness is not plane");

    // carry the cycle over: G+ subdivision vertices map to witness ones,
    // dummies are replaced by their crossed-edge midpoints
    std::map<int, std::vector<int>> dummy_repl;
    for (const Shortcut& sc : shortcuts) {
        std::vector<int> mids;
        for (const Edge& e : sc.subs) mids.push_back(out.midpoint.at(e));
        dummy_repl[sc.v] = std::move(mids);
    }
    std::map<int, int> plus_to_wit;  // G+ midpoint id -> witness midpoint id
    for (const auto& [e, id] : plus_mid) plus_to_wit[id] = out.midpoint.at(e);
    std::vector<int> order;
    for (int v : hplus) {
        if (v < n) {
            order.push_back(v);
        } else if (auto it = plus_to_wit.find(v); it != plus_to_wit.end()) {
            order.push_back(it->second);
        } else {
            auto jt = dummy_repl.find(v);
            if (jt == dummy_repl.end())
                throw flip_error("eliminate_dummies_subdivisions: unmapped cycle vertex " +
                                 std::to_string(v));
            // subs are listed u-side first; hplus may traverse v either way
            std::size_t i = order.size();
            std::vector<int> mids = jt->second;
            int prev = i ? order.back() : -1;
            if (mids.size() == 2 && prev >= 0) {
                // the midpoint adjacent to the predecessor goes first
                if (!wit.has_edge(prev, mids[0]) && wit.has_edge(prev, mids[1]))
                    std::swap(mids[0], mids[1]);
            }
            for (int m : mids) order.push_back(m);
        }
    }
    detail::normalize_cycle(order);
    out.cycle = HamCycle{std::move(order)};
    out.witness = std::move(wit);
    if (auto d = verify_ham_cycle(out.witness, out.cycle); !d.ok)
        throw flip_error("eliminate_dummies_subdivisions: witness cycle invalid: " + d.message);
    return out;
}

}  // namespace flipforge
