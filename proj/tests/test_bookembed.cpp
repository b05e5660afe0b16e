#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flipforge/bookembed.hpp"
#include "flipforge/generators.hpp"

using namespace flipforge;

namespace {

PlanarGraph four_cycle() {
    PlanarGraph g(4);
    g.rot = {{1, 3}, {2, 0}, {3, 1}, {0, 2}};
    return g;
}

PlanarGraph path_tree5() {
    PlanarGraph g(5);
    g.rot = {{1}, {0, 2}, {1, 3}, {2, 4}, {3}};
    return g;
}

}  // namespace

TEST_CASE("canonical_ordering") {
    SECTION("tetrahedron") {
        Triangulation t = make_k4();
        CanonicalOrdering co = canonical_ordering(t);
        REQUIRE(co.order.size() == 4);
        REQUIRE(verify_canonical_ordering(t, co).ok);
    }
    SECTION("octahedron") {
        Triangulation t = make_octahedron();
        CanonicalOrdering co = canonical_ordering(t);
        REQUIRE(verify_canonical_ordering(t, co).ok);
        // deterministic
        REQUIRE(canonical_ordering(t).order == co.order);
    }
    SECTION("fuzzed triangulations") {
        std::mt19937_64 seeds(271);
        for (int trial = 0; trial < 20; ++trial) {
            int n = 4 + static_cast<int>(seeds() % 25);
            Triangulation t = trial % 2 ? make_stacked_random(n - 4, seeds())
                                        : random_by_flip_walk(n, 2 * n, seeds());
            REQUIRE(verify_canonical_ordering(t, canonical_ordering(t)).ok);
        }
    }
    SECTION("rejects tampered orderings") {
        Triangulation t = make_octahedron();
        CanonicalOrdering co = canonical_ordering(t);
        std::swap(co.order[1], co.order[2]);
        REQUIRE_FALSE(verify_canonical_ordering(t, co).ok);
    }
}

TEST_CASE("verify_plane") {
    ArcDiagram d;
    for (int i = 0; i < 4; ++i) d.spine.push_back({i, -1, Rational(i)});
    SECTION("interleaving pieces on one side cross") {
        d.arcs.push_back({Edge(0, 2), {{Rational(0), Rational(2), true}}});
        d.arcs.push_back({Edge(1, 3), {{Rational(1), Rational(3), true}}});
        REQUIRE_FALSE(verify_plane(d).ok);
    }
    SECTION("shared endpoints are fine") {
        d.arcs.push_back({Edge(0, 1), {{Rational(0), Rational(1), true}}});
        d.arcs.push_back({Edge(1, 2), {{Rational(1), Rational(2), true}}});
        REQUIRE(verify_plane(d).ok);
    }
    SECTION("opposite sides never cross") {
        d.arcs.push_back({Edge(0, 2), {{Rational(0), Rational(2), true}}});
        d.arcs.push_back({Edge(1, 3), {{Rational(1), Rational(3), false}}});
        REQUIRE(verify_plane(d).ok);
    }
}

TEST_CASE("augment_to_triangulation") {
    SECTION("triangulations pass through") {
        Triangulation t = make_octahedron();
        auto [t2, added] = augment_to_triangulation(PlanarGraph(t));
        REQUIRE(added.empty());
        REQUIRE(t2.n() == 6);
        REQUIRE(validate(t2).ok);
    }
    SECTION("a four-cycle gets one chord") {
        auto [t2, added] = augment_to_triangulation(four_cycle());
        REQUIRE(added.size() == 2);  // one chord per quadrilateral face
        REQUIRE(validate(t2).ok);
    }
    SECTION("a tree on five vertices is filled to 3n-6 edges") {
        auto [t2, added] = augment_to_triangulation(path_tree5());
        REQUIRE(validate(t2).ok);
        REQUIRE(t2.edges().size() == 9);
        REQUIRE(added.size() == 5);
    }
}

TEST_CASE("monotone_biarc_diagram") {
    SECTION("tetrahedron needs no biarcs") {
        MonotoneResult r = monotone_biarc_diagram(make_k4());
        REQUIRE(r.stats.biarcs() == 0);
        REQUIRE(r.stats.total() == 6);
        REQUIRE(verify_plane(r.diagram).ok);
    }
    SECTION("octahedron stays within the bound") {
        MonotoneResult r = monotone_biarc_diagram(make_octahedron());
        REQUIRE(r.stats.biarcs() <= 2);
        REQUIRE(r.stats.biarcs_other == 0);
        REQUIRE(r.stats.total() == 12);
        REQUIRE(verify_plane(r.diagram).ok);
    }
    SECTION("fuzzed triangulations: plane, bounded, all biarcs down-up") {
        std::mt19937_64 seeds(1123);
        for (int trial = 0; trial < 20; ++trial) {
            int n = 4 + static_cast<int>(seeds() % 40);
            Triangulation t = trial % 2 ? make_stacked_random(n - 4, seeds())
                                        : random_by_flip_walk(n, 2 * n, seeds());
            MonotoneResult r = monotone_biarc_diagram(t);
            REQUIRE(r.stats.total() == 3 * n - 6);
            REQUIRE(r.stats.biarcs() <= n - 4);
            REQUIRE(r.stats.biarcs_other == 0);
            REQUIRE(r.stats.proper_above + r.stats.proper_below >= 2 * n - 2);
            REQUIRE(verify_plane(r.diagram).ok);
        }
    }
    SECTION("general planar input: helper edges removed from the diagram") {
        MonotoneResult r = monotone_biarc_diagram(four_cycle());
        REQUIRE(r.diagram.arcs.size() == 4);
        REQUIRE(r.added_edges.size() == 2);
        REQUIRE(r.stats.biarcs() == 0);
        REQUIRE(verify_plane(r.diagram).ok);
    }
    SECTION("larger run keeps the invariants") {
        Triangulation t = make_stacked_random(496, 99);  // n = 500
        MonotoneResult r = monotone_biarc_diagram(t);
        REQUIRE(r.stats.biarcs() <= 496);
        REQUIRE(r.stats.biarcs_other == 0);
        REQUIRE(verify_plane(r.diagram).ok);
    }
}

TEST_CASE("page_assignment") {
    SECTION("tetrahedron chords go to opposite pages") {
        PlanarGraph g(make_k4());
        ArcDiagram d = page_assignment(g, HamCycle{{0, 1, 2, 3}});
        REQUIRE(verify_plane(d).ok);
        bool s02 = false, s13 = false;
        for (const Arc& a : d.arcs) {
            if (a.edge == Edge(0, 2)) s02 = a.pieces[0].above;
            if (a.edge == Edge(1, 3)) s13 = a.pieces[0].above;
        }
        REQUIRE(s02 != s13);
    }
    SECTION("a cycle drawn along itself has no conflicts") {
        PlanarGraph g(5);
        g.rot = {{1, 4}, {2, 0}, {3, 1}, {4, 2}, {0, 3}};
        ArcDiagram d = page_assignment(g, HamCycle{{0, 1, 2, 3, 4}});
        REQUIRE(verify_plane(d).ok);
        for (const Arc& a : d.arcs) REQUIRE_FALSE(a.pieces[0].above);
    }
    SECTION("octahedron with a computed cycle") {
        Triangulation t = make_octahedron();
        HamCycle h = ham_cycle_4connected(t);
        ArcDiagram d = page_assignment(PlanarGraph(t), h);
        REQUIRE(d.arcs.size() == 12);
        REQUIRE(verify_plane(d).ok);
    }
}

TEST_CASE("biarc_from_subdivision") {
    SECTION("empty subdivision set gives a proper arc diagram") {
        Triangulation t = make_octahedron();
        SubdivisionResult s = eliminate_dummies_subdivisions(t, four_connect(t));
        REQUIRE(s.subdivided.empty());
        auto [d, stats] = biarc_from_subdivision(t, s);
        REQUIRE(stats.biarcs() == 0);
        REQUIRE(stats.total() == 12);
        REQUIRE(verify_plane(d).ok);
    }
    SECTION("first lower-bound family needs one to four biarcs") {
        Triangulation t = make_lowerham(1);
        SubdivisionResult s = eliminate_dummies_subdivisions(t, four_connect(t));
        auto [d, stats] = biarc_from_subdivision(t, s);
        REQUIRE(stats.biarcs() >= 1);
        REQUIRE(stats.biarcs() <= 4);
        REQUIRE(verify_plane(d).ok);
    }
    SECTION("same-side halves merge into a proper arc") {
        // hand-built witness: the cycle passes straight through the
        // subdivision vertex, so both halves go below and merge
        Triangulation t = make_octahedron();
        SubdivisionResult s;
        Edge e(0, 1);
        REQUIRE(t.has_edge(e));
        s.subdivided = {e};
        s.witness = PlanarGraph(t);
        s.midpoint[e] = s.witness.subdivide(e);
        std::vector<int> order = detail::find_ham_cycle(s.witness.rot);
        REQUIRE_FALSE(order.empty());
        s.cycle = HamCycle{order};
        auto [d, stats] = biarc_from_subdivision(t, s);
        REQUIRE(verify_plane(d).ok);
        REQUIRE(stats.total() == 12);
        for (const Arc& a : d.arcs)
            if (a.edge == e) REQUIRE(a.pieces.size() == 1);
        REQUIRE(stats.biarcs() == 0);
    }
    SECTION("fuzzed pipeline stays plane and bounded") {
        std::mt19937_64 seeds(808);
        for (int trial = 0; trial < 10; ++trial) {
            int n = 6 + static_cast<int>(seeds() % 20);
            Triangulation t = make_stacked_random(n - 4, seeds());
            SubdivisionResult s = eliminate_dummies_subdivisions(t, four_connect(t));
            auto [d, stats] = biarc_from_subdivision(t, s);
            REQUIRE(stats.biarcs() <= static_cast<int>(s.subdivided.size()));
            REQUIRE(stats.total() == 3 * n - 6);
            REQUIRE(verify_plane(d).ok);
        }
    }
}
