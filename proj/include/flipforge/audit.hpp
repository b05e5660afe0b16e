#pragma once

/*
  flipforge/audit.hpp

  Structural certification of the lower-bound constructions. Rather than
  re-running exhaustive search, these checks verify the combinatorial
  premises the counting arguments rest on; when the premises hold, the
  numeric lower bound follows by the arguments' arithmetic.
*/

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "flipforge/triangulation.hpp"

namespace flipforge {

/// Certifies a lower bound of k flips (or k subdivisions) to reach a
/// Hamiltonian (resp. subhamiltonian) graph for a Kleetope-style input:
/// if V1 is independent and outnumbers the remaining vertices by at
/// least k, any Hamiltonian cycle needs at least k consecutive V1-V1
/// pairs, and each flip or subdivision can supply at most one.
inline bool certify_hamlower(const Triangulation& t, const std::vector<int>& v1, int k) {
    int n = t.n();
    for (int v : v1)
        if (v < 0 || v >= n) throw flip_error("certify_hamlower: vertex id out of range");
    std::set<int> v1set(v1.begin(), v1.end());
    if (static_cast<int>(v1set.size()) != static_cast<int>(v1.size()))
        throw flip_error("certify_hamlower: duplicate vertex in V1");
    for (int v : v1)
        for (int w : t.rotation(v))
            if (v1set.count(w)) return false;  // independence broken
    long long surplus = 2 * static_cast<long long>(v1.size()) - n;
    if (surplus < (n - 8) / 3) return false;  // set too small to certify the family bound
    return k <= surplus;
}

/// Verifies the structure underlying the simultaneous-flip lower bound
/// on the recursive f0-stacking family with n = 3i + 4: three groups of
/// i separating triangles, each pinned to one edge of the outer face f0,
/// edge-disjoint within a group apart from that pin, and cross-group
/// sharing confined to the three largest triangles (one shared edge per
/// group pair). When this holds, fewer than 2i simultaneous flips leave
/// some separating triangle intact.
inline bool certify_upsim4lower(const Triangulation& t, int i) {
    if (i < 1) throw flip_error("certify_upsim4lower: i must be >= 1");
    if (t.n() != 3 * i + 4)
        throw flip_error("certify_upsim4lower: wrong family (n != 3i + 4)");
    Triangle f0(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
    std::vector<Triangle> seps = separating_triangles(t);
    if (static_cast<int>(seps.size()) != 3 * i) return false;

    std::array<Edge, 3> pins = f0.edges();
    std::array<std::vector<Triangle>, 3> groups;
    for (const Triangle& s : seps) {
        int hits = 0, which = -1;
        for (int g = 0; g < 3; ++g)
            if (s.has_edge(pins[g])) {
                ++hits;
                which = g;
            }
        if (hits != 1) return false;  // every triangle pinned to exactly one f0 edge
        groups[which].push_back(s);
    }
    for (const auto& g : groups)
        if (static_cast<int>(g.size()) != i) return false;

    auto shared_non_pin = [&](const Triangle& a, const Triangle& b,
                              const Edge& pin) -> std::vector<Edge> {
        std::vector<Edge> out;
        for (const Edge& e : a.edges())
            if (b.has_edge(e) && !(e == pin)) out.push_back(e);
        return out;
    };
    for (int g = 0; g < 3; ++g)
        for (std::size_t a = 0; a < groups[g].size(); ++a)
            for (std::size_t b = a + 1; b < groups[g].size(); ++b)
                if (!shared_non_pin(groups[g][a], groups[g][b], pins[g]).empty())
                    return false;

    // The largest triangle of each group spans the whole subdivided
    // region; those three may pairwise share one edge, nobody else may
    // share anything across groups.
    // The outermost triangle of each group is the only one whose apex
    // (the corner off the pin edge) is adjacent to all three f0 vertices.
    auto largest = [&](const std::vector<Triangle>& g, const Edge& pin,
                       Triangle& out) {
        int found = 0;
        for (const Triangle& s : g) {
            int apex = -1;
            for (int v : s.v)
                if (v != pin.u && v != pin.v) apex = v;
            bool all = true;
            for (int fv : f0.v)
                if (fv != apex && !t.has_edge(apex, fv)) all = false;
            if (all) {
                out = s;
                ++found;
            }
        }
        return found == 1;
    };
    std::array<Triangle, 3> big;
    for (int g = 0; g < 3; ++g)
        if (!largest(groups[g], pins[g], big[g])) return false;
    for (int g = 0; g < 3; ++g)
        for (int h = g + 1; h < 3; ++h) {
            int shared_big = 0;
            for (const Triangle& a : groups[g])
                for (const Triangle& b : groups[h]) {
                    std::set<Edge> shared;
                    for (const Edge& e : a.edges())
                        if (b.has_edge(e)) shared.insert(e);
                    if (shared.empty()) continue;
                    if (!(a == big[g]) || !(b == big[h])) return false;
                    if (shared.size() != 1) return false;
                    ++shared_big;
                }
            if (shared_big != 1) return false;  // any two groups share exactly one edge
        }
    return true;
}

}  // namespace flipforge
