#pragma once

/*
  flipforge/generators.hpp

  Named graph families and seeded random triangulations. All
  constructions are deterministic for a fixed FamilySpec.
*/

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "flipforge/triangulation.hpp"

namespace flipforge {

// ---------------------------------------------------------------------------
// construction helpers

/// Build a triangulation from an (unoriented) face list. Faces are
/// oriented consistently by BFS over shared edges, then each vertex's
/// rotation is the cycle of its corner successors.
inline Triangulation from_faces(int n, const std::vector<std::array<int, 3>>& face_list,
                                std::array<int, 3> outer) {
    std::map<Edge, std::vector<int>> by_edge;
    for (int f = 0; f < static_cast<int>(face_list.size()); ++f) {
        const auto& fc = face_list[f];
        by_edge[Edge(fc[0], fc[1])].push_back(f);
        by_edge[Edge(fc[1], fc[2])].push_back(f);
        by_edge[Edge(fc[0], fc[2])].push_back(f);
    }
    std::vector<std::array<int, 3>> oriented(face_list.size());
    std::vector<int> state(face_list.size(), 0);  // 0 unvisited, 1 oriented
    std::vector<int> queue{0};
    oriented[0] = face_list[0];
    state[0] = 1;
    auto has_directed = [&](int f, int a, int b) {
        const auto& o = oriented[f];
        for (int k = 0; k < 3; ++k)
            if (o[k] == a && o[(k + 1) % 3] == b) return true;
        return false;
    };
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int f = queue[qi];
        const auto& o = oriented[f];
        for (int k = 0; k < 3; ++k) {
            int a = o[k], b = o[(k + 1) % 3];
            for (int g : by_edge.at(Edge(a, b))) {
                if (g == f) continue;
                if (state[g]) continue;
                oriented[g] = face_list[g];
                // the neighbor must traverse the shared edge as (b,a)
                if (!has_directed(g, b, a)) std::swap(oriented[g][1], oriented[g][2]);
                if (!has_directed(g, b, a))
                    throw flip_error("from_faces: inconsistent face orientations");
                state[g] = 1;
                queue.push_back(g);
            }
        }
    }
    // corner successors: face (..., u, v, w, ...) contributes succ_v(u) = w
    std::vector<std::map<int, int>> succ(n);
    for (const auto& o : oriented)
        for (int k = 0; k < 3; ++k) {
            int u = o[k], v = o[(k + 1) % 3], w = o[(k + 2) % 3];
            succ[v][u] = w;
        }
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v) {
        if (succ[v].empty()) throw flip_error("from_faces: isolated vertex " + std::to_string(v));
        int start = succ[v].begin()->first;
        int cur = start;
        do {
            rot[v].push_back(cur);
            auto it = succ[v].find(cur);
            if (it == succ[v].end())
                throw flip_error("from_faces: missing corner at vertex " + std::to_string(v));
            cur = it->second;
        } while (cur != start && rot[v].size() <= succ[v].size());
        if (rot[v].size() != succ[v].size())
            throw flip_error("from_faces: rotation at vertex " + std::to_string(v) +
                             " does not close");
    }
    return Triangulation(n, std::move(rot), outer);
}

/// Oriented walk (a,b,c) of a facial triangle, following the face orbit.
inline std::array<int, 3> oriented_face(const Triangulation& t, const Triangle& tri) {
    int a = tri.v[0], b = tri.v[1], c = tri.v[2];
    if (t.succ(b, a) == c) return {a, b, c};
    if (t.succ(c, a) == b) return {a, c, b};
    throw flip_error("not a face: " + to_string(tri));
}

/// Insert a new degree-3 vertex into a facial triangle. The new vertex
/// takes id n. If the stacked face was the outer face, the outer face is
/// re-derived as the lexicographically smallest of the three new faces.
inline Triangulation stack_into_face(const Triangulation& t, const Triangle& face) {
    auto [a, b, c] = oriented_face(t, face);
    int x = t.n();
    auto rot = t.rotations();
    auto insert_after = [&rot](int at, int after, int w) {
        auto& r = rot[at];
        auto it = std::find(r.begin(), r.end(), after);
        r.insert(std::next(it), w);
    };
    insert_after(a, c, x);
    insert_after(b, a, x);
    insert_after(c, b, x);
    rot.push_back({a, c, b});
    std::array<int, 3> outer = t.outer_face();
    if (Triangle(outer[0], outer[1], outer[2]) == face) {
        Triangle best(a, b, x);
        for (const Triangle& cand : {Triangle(b, c, x), Triangle(a, c, x)})
            if (cand < best) best = cand;
        outer = best.v;
    }
    return Triangulation(t.n() + 1, std::move(rot), outer);
}

inline std::vector<Triangle> bounded_faces(const Triangulation& t) {
    Triangle outer(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
    std::vector<Triangle> out;
    for (const Triangle& f : faces(t))
        if (!(f == outer)) out.push_back(f);
    return out;
}

// ---------------------------------------------------------------------------
// families

enum class Family {
    k4,
    octahedron,
    wheel5,
    stacked_random,
    edgebound,
    lower4c,
    lowerham,
    checkerboard_demo,
};

struct FamilySpec {
    Family family = Family::k4;
    int param = 0;
    std::uint64_t seed = 0;
};

inline const std::map<std::string, Family>& family_names() {
    static const std::map<std::string, Family> names = {
        {"k4", Family::k4},
        {"octahedron", Family::octahedron},
        {"wheel5", Family::wheel5},
        {"stacked_random", Family::stacked_random},
        {"edgebound", Family::edgebound},
        {"lower4c", Family::lower4c},
        {"lowerham", Family::lowerham},
        {"checkerboard_demo", Family::checkerboard_demo},
    };
    return names;
}

inline Triangulation make_k4() {
    return Triangulation(4, {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}}, {0, 1, 2});
}

inline Triangulation make_octahedron() {
    // top 0, equator 1..4, bottom 5
    std::vector<std::array<int, 3>> fs = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                          {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
    return from_faces(6, fs, {0, 1, 2});
}

inline Triangulation make_wheel5() {
    // hub 0, rim 1..4, chord 1-3
    std::vector<std::array<int, 3>> fs = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4},
                                          {0, 4, 1}, {1, 2, 3}, {1, 3, 4}};
    return from_faces(5, fs, {1, 3, 4});
}

/// K4 plus `i` stacked vertices, faces chosen uniformly at random among
/// bounded faces.
inline Triangulation make_stacked_random(int i, std::uint64_t seed) {
    if (i < 0) throw flip_error("stacked_random: param must be >= 0");
    std::mt19937_64 rng(seed);
    Triangulation t = make_k4();
    for (int k = 0; k < i; ++k) {
        auto bf = bounded_faces(t);
        std::uniform_int_distribution<std::size_t> pick(0, bf.size() - 1);
        t = stack_into_face(t, bf[pick(rng)]);
    }
    return t;
}

/// K4 plus `i` stacked vertices, always into the lexicographically
/// smallest bounded face.
inline Triangulation make_stacked_deterministic(int i) {
    Triangulation t = make_k4();
    for (int k = 0; k < i; ++k) t = stack_into_face(t, bounded_faces(t).front());
    return t;
}

/// Tight family for the 2n-7 bound on edges incident to separating
/// triangles: a fixed n=6 base, then k insertions into a face with
/// exactly one such edge (lexicographically smallest qualifying face).
inline Triangulation make_edgebound(int k) {
    if (k < 0) throw flip_error("edgebound: param must be >= 0");
    // K4 {0,1,2,3} with outer face 013, stack 4 into 012, stack 5 into 014
    Triangulation t = make_k4();
    t = Triangulation(t.n(), t.rotations(), {0, 1, 3});
    t = stack_into_face(t, Triangle(0, 1, 2));
    t = stack_into_face(t, Triangle(0, 1, 4));
    for (int step = 0; step < k; ++step) {
        std::set<Edge> solid = edges_on_separating_triangles(t);
        const Triangle* chosen = nullptr;
        auto bf = bounded_faces(t);
        for (const Triangle& f : bf) {
            int cnt = 0;
            for (const Edge& e : f.edges())
                if (solid.count(e)) ++cnt;
            if (cnt == 1) {
                chosen = &f;
                break;  // faces are sorted lexicographically
            }
        }
        if (!chosen) throw flip_error("edgebound: no face with exactly one solid edge");
        t = stack_into_face(t, *chosen);
    }
    return t;
}

/// Lower-bound family for simultaneous flips to 4-connectivity:
/// start from K4 with f0 = outer face; each round stacks a vertex into
/// every face adjacent to f0. n = 3i+4.
inline Triangulation make_lower4c(int i) {
    if (i < 0) throw flip_error("lower4c: param must be >= 0");
    Triangulation t = make_k4();
    Triangle f0(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
    for (int round = 0; round < i; ++round) {
        std::vector<Triangle> adjacent;
        for (const Triangle& f : bounded_faces(t))
            if (f.shared_edge(f0)) adjacent.push_back(f);
        if (adjacent.size() != 3) throw flip_error("lower4c: expected 3 faces adjacent to f0");
        for (const Triangle& f : adjacent) t = stack_into_face(t, f);
    }
    return t;
}

/// Kleetope-style lower-bound family for Hamiltonicity: a deterministic
/// stacked base on t = i+4 vertices, then every face (including the
/// outer one) stellated. n = 3i+8; the stellation vertices form an
/// independent set.
inline Triangulation make_lowerham(int i) {
    if (i < 1) throw flip_error("lowerham: param must be >= 1");
    Triangulation t = make_stacked_deterministic(i);  // t = i+4 vertices
    std::vector<Triangle> base_bounded = bounded_faces(t);
    Triangle base_outer(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
    for (const Triangle& f : base_bounded) t = stack_into_face(t, f);
    t = stack_into_face(t, base_outer);
    return t;
}

/// Stellation vertex ids of make_lowerham(i).
inline std::vector<int> lowerham_v1(int i) {
    int t = i + 4;
    std::vector<int> v1;
    for (int v = t; v < 3 * t - 4; ++v) v1.push_back(v);
    return v1;
}

/// Octahedron with the four faces of the dual bipartition class not
/// containing the outer face each stellated; its 4-block tree root is a
/// checkerboard. n = 10.
inline Triangulation make_checkerboard_demo() {
    Triangulation t = make_octahedron();
    auto fs = faces(t);
    Triangle outer(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
    // 2-color the dual (bipartite for the octahedron) from the outer face
    std::map<Triangle, int> color;
    std::vector<Triangle> queue{outer};
    color[outer] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Triangle f = queue[qi];
        for (const Triangle& g : fs) {
            if (g == f || !f.shared_edge(g)) continue;
            if (!color.count(g)) {
                color[g] = 1 - color[f];
                queue.push_back(g);
            } else if (color[g] == color[f]) {
                throw flip_error("octahedron dual is not bipartite?");
            }
        }
    }
    for (const Triangle& f : fs)
        if (color.at(f) == 1) t = stack_into_face(t, f);
    return t;
}

inline Triangulation generate(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::k4: return make_k4();
        case Family::octahedron: return make_octahedron();
        case Family::wheel5: return make_wheel5();
        case Family::stacked_random: return make_stacked_random(spec.param, spec.seed);
        case Family::edgebound: return make_edgebound(spec.param);
        case Family::lower4c: return make_lower4c(spec.param);
        case Family::lowerham: return make_lowerham(spec.param);
        case Family::checkerboard_demo: return make_checkerboard_demo();
    }
    throw flip_error("unknown family");
}

/// Random triangulation: stacked base on n vertices, then `steps`
/// uniformly chosen valid flips. Deterministic for a fixed seed.
inline Triangulation random_by_flip_walk(int n, int steps, std::uint64_t seed) {
    if (n < 4) throw flip_error("random_by_flip_walk: n must be >= 4");
    std::mt19937_64 rng(seed);
    Triangulation t = make_stacked_random(n - 4, seed);
    for (int s = 0; s < steps; ++s) {
        std::vector<Edge> flippable;
        for (const Edge& e : t.edges())
            if (is_flippable(t, e)) flippable.push_back(e);
        if (flippable.empty()) break;  // K4
        std::uniform_int_distribution<std::size_t> pick(0, flippable.size() - 1);
        t = flip(t, flippable[pick(rng)]).first;
    }
    return t;
}

}  // namespace flipforge
