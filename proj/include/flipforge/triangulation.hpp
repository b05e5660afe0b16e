#pragma once

/*
  flipforge/triangulation.hpp

  Embedded maximal planar graphs (triangulations) as rotation systems,
  with validated combinatorial edge flips, triangle classification and
  connectivity queries.

  A triangulation is stored as, for every vertex, the cyclic
  counterclockwise sequence of its neighbors, plus a designated outer
  face. Faces are derived from the rotation system: the face orbit of a
  directed edge (u,v) continues with (v, succ_v(u)), where succ_v is the
  CCW successor in v's rotation list.
*/

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace flipforge {

struct flip_error : std::runtime_error {
    explicit flip_error(const std::string& what) : std::runtime_error(what) {}
};

/// Unordered pair of distinct vertex ids, stored with u < v.
struct Edge {
    int u = -1, v = -1;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
        if (a == b) throw flip_error("edge endpoints must be distinct");
    }
    int other(int w) const { return w == u ? v : u; }
    bool has(int w) const { return w == u || w == v; }
    auto operator<=>(const Edge&) const = default;
};

inline std::string to_string(const Edge& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

enum class TriangleKind { facial, separating };

/// Unordered triple of vertex ids (sorted) plus facial/separating kind.
struct Triangle {
    std::array<int, 3> v{-1, -1, -1};
    TriangleKind kind = TriangleKind::facial;

    Triangle() = default;
    Triangle(int a, int b, int c, TriangleKind k = TriangleKind::facial) : kind(k) {
        v = {a, b, c};
        std::sort(v.begin(), v.end());
    }
    bool has_vertex(int w) const { return v[0] == w || v[1] == w || v[2] == w; }
    bool has_edge(const Edge& e) const { return has_vertex(e.u) && has_vertex(e.v); }
    std::array<Edge, 3> edges() const {
        return {Edge(v[0], v[1]), Edge(v[0], v[2]), Edge(v[1], v[2])};
    }
    /// Edge shared with another triangle, if any.
    std::optional<Edge> shared_edge(const Triangle& o) const {
        for (const Edge& e : edges())
            if (o.has_edge(e)) return e;
        return std::nullopt;
    }
    bool operator==(const Triangle& o) const { return v == o.v; }
    bool operator<(const Triangle& o) const { return v < o.v; }
};

inline std::string to_string(const Triangle& t) {
    return "(" + std::to_string(t.v[0]) + "," + std::to_string(t.v[1]) + "," +
           std::to_string(t.v[2]) + ")";
}

/// One flip step: `removed` was replaced by `created`.
struct FlipRecord {
    Edge removed;
    Edge created;
    int step_index = 0;
};

/// Result of a validity check: ok, or a message naming the first violation.
struct Diagnostic {
    bool ok = true;
    std::string message;

    static Diagnostic good() { return {}; }
    static Diagnostic bad(std::string msg) { return {false, std::move(msg)}; }
    explicit operator bool() const { return ok; }
};

class Triangulation {
public:
    Triangulation() = default;
    Triangulation(int n, std::vector<std::vector<int>> rotations, std::array<int, 3> outer)
        : n_(n), rot_(std::move(rotations)), outer_(outer) {}

    int n() const { return n_; }
    const std::vector<std::vector<int>>& rotations() const { return rot_; }
    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    const std::array<int, 3>& outer_face() const { return outer_; }
    int degree(int v) const { return static_cast<int>(rot_[v].size()); }
    int edge_count() const {
        std::size_t deg = 0;
        for (const auto& r : rot_) deg += r.size();
        return static_cast<int>(deg / 2);
    }

    bool has_edge(int a, int b) const {
        const auto& ra = rot_[a];
        const auto& rb = rot_[b];
        const auto& shorter = ra.size() <= rb.size() ? ra : rb;
        int target = ra.size() <= rb.size() ? b : a;
        return std::find(shorter.begin(), shorter.end(), target) != shorter.end();
    }
    bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(std::max(0, 3 * n_ - 6)));
        for (int v = 0; v < n_; ++v)
            for (int w : rot_[v])
                if (v < w) out.emplace_back(v, w);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// CCW successor of neighbor `from` in the rotation of `at`.
    int succ(int at, int from) const {
        const auto& r = rot_[at];
        auto it = std::find(r.begin(), r.end(), from);
        if (it == r.end())
            throw flip_error("succ: " + std::to_string(from) + " is not a neighbor of " +
                             std::to_string(at));
        ++it;
        return it == r.end() ? r.front() : *it;
    }

    /// Face orbits of the rotation system as vertex walks.
    /// Each orbit is the maximal cycle of directed edges under
    /// (u,v) -> (v, succ_v(u)). For a valid triangulation every orbit
    /// has length three.
    std::vector<std::vector<int>> face_walks() const {
        std::vector<std::vector<int>> walks;
        std::set<std::pair<int, int>> seen;
        for (int v = 0; v < n_; ++v) {
            for (int w : rot_[v]) {
                if (seen.count({v, w})) continue;
                std::vector<int> walk;
                int a = v, b = w;
                do {
                    walk.push_back(a);
                    seen.insert({a, b});
                    int c = succ(b, a);
                    a = b;
                    b = c;
                } while (!(a == v && b == w) && walk.size() <= 2u * rot_.size() * n_ + 3);
                walks.push_back(std::move(walk));
            }
        }
        return walks;
    }

    /// The two apexes of the faces incident to edge ab: (succ_b(a), succ_a(b)).
    std::pair<int, int> face_apexes(const Edge& e) const {
        if (!has_edge(e)) throw flip_error("unknown edge " + to_string(e));
        return {succ(e.v, e.u), succ(e.u, e.v)};
    }

private:
    int n_ = 0;
    std::vector<std::vector<int>> rot_;
    std::array<int, 3> outer_{0, 1, 2};

    friend Triangulation flip_impl(const Triangulation&, const Edge&, FlipRecord&);
};

// ---------------------------------------------------------------------------
// validate

inline Diagnostic validate(const Triangulation& t) {
    int n = t.n();
    if (n < 4) return Diagnostic::bad("vertex count " + std::to_string(n) + " < 4");
    if (static_cast<int>(t.rotations().size()) != n)
        return Diagnostic::bad("rotation table has " + std::to_string(t.rotations().size()) +
                               " rows, expected " + std::to_string(n));
    for (int v = 0; v < n; ++v) {
        std::set<int> seen;
        for (int w : t.rotation(v)) {
            if (w == v) return Diagnostic::bad("loop at vertex " + std::to_string(v));
            if (w < 0 || w >= n)
                return Diagnostic::bad("out-of-range neighbor " + std::to_string(w) +
                                       " at vertex " + std::to_string(v));
            if (!seen.insert(w).second)
                return Diagnostic::bad("parallel edge (" + std::to_string(v) + "," +
                                       std::to_string(w) + ")");
            const auto& rw = t.rotation(w);
            if (std::find(rw.begin(), rw.end(), v) == rw.end())
                return Diagnostic::bad("adjacency (" + std::to_string(v) + "," +
                                       std::to_string(w) + ") is not mutual");
        }
    }
    int m = t.edge_count();
    if (m != 3 * n - 6)
        return Diagnostic::bad("edge count " + std::to_string(m) + " != 3*" + std::to_string(n) +
                               "-6");
    auto walks = t.face_walks();
    if (static_cast<int>(walks.size()) != 2 * n - 4)
        return Diagnostic::bad("face count " + std::to_string(walks.size()) + " != 2*" +
                               std::to_string(n) + "-4");
    for (const auto& w : walks) {
        if (w.size() != 3) {
            std::ostringstream os;
            os << "non-triangular face [";
            for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
            os << "]";
            return Diagnostic::bad(os.str());
        }
        std::set<int> distinct(w.begin(), w.end());
        if (distinct.size() != 3)
            return Diagnostic::bad("degenerate face at vertex " + std::to_string(w[0]));
    }
    // outer_face must be one of the faces of the rotation system.
    std::set<int> outer(t.outer_face().begin(), t.outer_face().end());
    bool found = false;
    for (const auto& w : walks)
        if (std::set<int>(w.begin(), w.end()) == outer) found = true;
    if (!found)
        return Diagnostic::bad("outer_face (" + std::to_string(t.outer_face()[0]) + "," +
                               std::to_string(t.outer_face()[1]) + "," +
                               std::to_string(t.outer_face()[2]) + ") is not a face");
    return Diagnostic::good();
}

// ---------------------------------------------------------------------------
// faces

/// All 2n-4 facial triangles, in lexicographic order of sorted triples.
inline std::vector<Triangle> faces(const Triangulation& t) {
    std::vector<Triangle> out;
    for (const auto& w : t.face_walks())
        out.emplace_back(w[0], w[1], w[2], TriangleKind::facial);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_face(const Triangulation& t, const Triangle& tri) {
    if (!t.has_edge(tri.v[0], tri.v[1])) return false;
    auto [c, d] = t.face_apexes(Edge(tri.v[0], tri.v[1]));
    return c == tri.v[2] || d == tri.v[2];
}

// ---------------------------------------------------------------------------
// flips

inline bool is_flippable(const Triangulation& t, const Edge& e) {
    auto [c, d] = t.face_apexes(e);  // throws if e is unknown
    return c != d && !t.has_edge(c, d);
}

inline Triangulation flip_impl(const Triangulation& t, const Edge& e, FlipRecord& rec) {
    auto [c, d] = t.face_apexes(e);
    if (c == d)
        throw flip_error("edge " + to_string(e) + " not flippable: both faces share apex " +
                         std::to_string(c));
    if (t.has_edge(c, d))
        throw flip_error("edge " + to_string(e) + " not flippable: edge (" + std::to_string(c) +
                         "," + std::to_string(d) + ") already present");
    int a = e.u, b = e.v;
    // Apex of face walked a->b is succ_b(a); recompute relative to (a,b).
    int apex_ab = t.succ(b, a);
    int apex_ba = t.succ(a, b);
    Triangulation out = t;

    auto erase_from = [&out](int at, int w) {
        auto& r = out.rot_[at];
        r.erase(std::find(r.begin(), r.end(), w));
    };
    auto insert_after = [&out](int at, int after, int w) {
        auto& r = out.rot_[at];
        auto it = std::find(r.begin(), r.end(), after);
        r.insert(std::next(it), w);
    };
    erase_from(a, b);
    erase_from(b, a);
    // In rot(apex_ab), a is the CCW successor of b: insert the new neighbor
    // between them. Symmetrically at apex_ba.
    insert_after(apex_ab, b, apex_ba);
    insert_after(apex_ba, a, apex_ab);

    rec.removed = e;
    rec.created = Edge(c, d);

    // A flip of an outer edge removes the outer face; re-derive it as the
    // face containing the two surviving outer vertices, lexicographically
    // smallest if ambiguous.
    const auto& of = out.outer_;
    std::set<int> outer_set(of.begin(), of.end());
    if (outer_set.count(a) && outer_set.count(b)) {
        int keep = -1;
        for (int w : of)
            if (w != a && w != b) keep = w;
        std::vector<Triangle> candidates;
        for (const auto& walk : out.face_walks()) {
            Triangle tri(walk[0], walk[1], walk[2]);
            if (tri.has_vertex(keep) && (tri.has_vertex(a) || tri.has_vertex(b)))
                candidates.push_back(tri);
        }
        if (candidates.empty())
            for (const auto& walk : out.face_walks())
                candidates.emplace_back(walk[0], walk[1], walk[2]);
        Triangle best = *std::min_element(candidates.begin(), candidates.end());
        out.outer_ = best.v;
    }
    return out;
}

inline std::pair<Triangulation, FlipRecord> flip(const Triangulation& t, const Edge& e) {
    FlipRecord rec;
    Triangulation out = flip_impl(t, e, rec);
    return {std::move(out), rec};
}

/// One-shot flip of an edge set F. Preconditions per the simultaneous-flip
/// criterion: every edge flippable, no facial triangle incident to two
/// edges of F, created edges pairwise distinct and absent. Implemented by
/// sequential flips in lexicographic edge order with per-step assertions.
inline std::pair<Triangulation, std::vector<FlipRecord>> simultaneous_flip(
    const Triangulation& t, const std::set<Edge>& F) {
    // Precondition checks on the input graph.
    std::map<Edge, Edge> created_by;
    for (const Edge& e : F) {
        if (!t.has_edge(e)) throw flip_error("unknown edge " + to_string(e));
        auto [c, d] = t.face_apexes(e);
        if (c == d || t.has_edge(c, d))
            throw flip_error("edge " + to_string(e) + " not flippable");
        created_by.emplace(e, Edge(c, d));
    }
    std::set<Edge> created;
    for (const auto& [e, ce] : created_by) {
        if (!created.insert(ce).second)
            throw flip_error("duplicate created edge " + to_string(ce));
        if (t.has_edge(ce)) throw flip_error("created edge " + to_string(ce) + " already present");
    }
    for (const Edge& e : F) {
        auto [c, d] = t.face_apexes(e);
        for (int apex : {c, d}) {
            Triangle face(e.u, e.v, apex);
            for (const Edge& g : F)
                if (!(g == e) && face.has_edge(g))
                    throw flip_error("facial triangle " + to_string(face) +
                                     " incident to two flip edges " + to_string(e) + " and " +
                                     to_string(g));
        }
    }
    Triangulation cur = t;
    std::vector<FlipRecord> recs;
    int step = 0;
    for (const Edge& e : F) {
        if (!is_flippable(cur, e))
            throw flip_error("edge " + to_string(e) + " became unflippable mid-sequence");
        auto [next, rec] = flip(cur, e);
        rec.step_index = step++;
        recs.push_back(rec);
        cur = std::move(next);
    }
    return {std::move(cur), std::move(recs)};
}

// ---------------------------------------------------------------------------
// triangles and connectivity

/// Every 3-clique, facial or separating, listed once in lexicographic
/// order. Enumeration intersects sorted neighbor sets per edge.
inline std::vector<Triangle> all_triangles(const Triangulation& t) {
    std::vector<std::vector<int>> sorted(t.n());
    for (int v = 0; v < t.n(); ++v) {
        sorted[v] = t.rotation(v);
        std::sort(sorted[v].begin(), sorted[v].end());
    }
    std::vector<Triangle> out;
    for (int a = 0; a < t.n(); ++a) {
        for (int b : sorted[a]) {
            if (b <= a) continue;
            // common neighbors c > b so each triple is found once
            const auto& na = sorted[a];
            const auto& nb = sorted[b];
            std::size_t i = 0, j = 0;
            while (i < na.size() && j < nb.size()) {
                if (na[i] < nb[j]) ++i;
                else if (na[i] > nb[j]) ++j;
                else {
                    int c = na[i];
                    if (c > b) {
                        Triangle tri(a, b, c);
                        tri.kind = is_face(t, tri) ? TriangleKind::facial
                                                   : TriangleKind::separating;
                        out.push_back(tri);
                    }
                    ++i;
                    ++j;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Triangle> separating_triangles(const Triangulation& t) {
    std::vector<Triangle> out;
    for (const Triangle& tri : all_triangles(t))
        if (tri.kind == TriangleKind::separating) out.push_back(tri);
    return out;
}

/// Union of the edge sets of all separating triangles. Never larger
/// than 2n-7 for n >= 5.
inline std::set<Edge> edges_on_separating_triangles(const Triangulation& t) {
    std::set<Edge> out;
    for (const Triangle& tri : separating_triangles(t))
        for (const Edge& e : tri.edges()) out.insert(e);
    return out;
}

/// For triangulations, 4-connectivity is equivalent to the absence of
/// separating triangles (and requires n >= 6).
inline bool is_four_connected(const Triangulation& t) {
    if (t.n() < 6) return false;
    return separating_triangles(t).empty();
}

// ---------------------------------------------------------------------------
// canonical code

namespace detail {

/// Code of one traversal: BFS labeling from a start directed edge,
/// neighbors reported in rotation order starting at the entry neighbor.
inline std::vector<int> walk_code(const std::vector<std::vector<int>>& rot, int su, int sv) {
    int n = static_cast<int>(rot.size());
    std::vector<int> label(n, -1), order, entry(n, -1);
    int next_label = 0;
    label[su] = next_label++;
    order.push_back(su);
    entry[su] = sv;
    std::vector<int> code;
    code.reserve(8 * n);
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        int x = order[qi];
        const auto& r = rot[x];
        auto it = std::find(r.begin(), r.end(), entry[x]);
        std::size_t start = static_cast<std::size_t>(it - r.begin());
        for (std::size_t k = 0; k < r.size(); ++k) {
            int w = r[(start + k) % r.size()];
            if (label[w] < 0) {
                label[w] = next_label++;
                order.push_back(w);
                entry[w] = x;
            }
            code.push_back(label[w]);
        }
        code.push_back(-1);  // separator
    }
    return code;
}

}  // namespace detail

/// Canonical traversal code of the embedded map: minimal walk code over
/// all directed-edge starts and both orientations. Equal codes iff the
/// triangulations are isomorphic as embedded maps up to reflection and
/// relabeling.
inline std::vector<int> canonical_code(const Triangulation& t) {
    std::vector<std::vector<int>> mirror(t.n());
    for (int v = 0; v < t.n(); ++v) {
        mirror[v] = t.rotation(v);
        std::reverse(mirror[v].begin(), mirror[v].end());
    }
    std::vector<int> best;
    const std::vector<std::vector<int>>* variants[2] = {&t.rotations(), &mirror};
    for (const std::vector<std::vector<int>>* rot : variants) {
        for (int v = 0; v < t.n(); ++v) {
            for (int w : (*rot)[v]) {
                auto code = detail::walk_code(*rot, v, w);
                if (best.empty() || code < best) best = std::move(code);
            }
        }
    }
    return best;
}

/// Printable form of a canonical code, used for provenance in CLI output.
inline std::string canonical_code_string(const Triangulation& t) {
    std::ostringstream os;
    for (int x : canonical_code(t)) {
        if (x < 0) os << ';';
        else os << x << ',';
    }
    return os.str();
}

}  // namespace flipforge
