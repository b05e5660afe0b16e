#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "flipforge/generators.hpp"
#include "flipforge/tait.hpp"

using namespace flipforge;

TEST_CASE("four_coloring is proper on named families") {
    for (const Triangulation& t :
         {make_k4(), make_wheel5(), make_octahedron(), make_lower4c(3), make_lowerham(2),
          make_edgebound(5), make_checkerboard_demo()}) {
        auto col = four_coloring(t);
        REQUIRE(static_cast<int>(col.size()) == t.n());
        for (int v = 0; v < t.n(); ++v) {
            REQUIRE(col[v] >= 0);
            REQUIRE(col[v] < 4);
            for (int w : t.rotation(v)) REQUIRE(col[v] != col[w]);
        }
    }
}

TEST_CASE("four_coloring is deterministic") {
    Triangulation t = make_lowerham(3);
    REQUIRE(four_coloring(t) == four_coloring(t));
}

TEST_CASE("tait partition verifies on random triangulations") {
    std::mt19937_64 seeds(11);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(seeds() % 30);
        Triangulation t = random_by_flip_walk(n, 2 * n, seeds());
        TaitPartition p = tait_partition(t);
        auto d = verify_tait_partition(t, p);
        INFO(d.message);
        REQUIRE(d.ok);
        for (int k = 0; k < 3; ++k)
            REQUIRE(static_cast<int>(p.classes[k].size()) == n - 2);
    }
}

TEST_CASE("each triangle carries one edge of each class") {
    Triangulation t = make_checkerboard_demo();
    TaitPartition p = tait_partition(t);
    for (const Triangle& tri : all_triangles(t)) {
        std::set<int> classes;
        for (const Edge& e : tri.edges()) classes.insert(p.class_of.at(e));
        REQUIRE(classes == std::set<int>{0, 1, 2});
    }
}

TEST_CASE("verify_tait_partition rejects corrupted partitions") {
    Triangulation t = make_octahedron();
    TaitPartition good = tait_partition(t);
    REQUIRE(verify_tait_partition(t, good).ok);

    SECTION("edge moved between classes") {
        TaitPartition bad = good;
        Edge e = bad.classes[0].back();
        bad.classes[0].pop_back();
        bad.classes[1].push_back(e);
        auto d = verify_tait_partition(t, bad);
        REQUIRE_FALSE(d.ok);
    }
    SECTION("duplicated edge") {
        TaitPartition bad = good;
        bad.classes[1].push_back(bad.classes[1].front());
        REQUIRE_FALSE(verify_tait_partition(t, bad).ok);
    }
    SECTION("unknown edge") {
        TaitPartition bad = good;
        bad.classes[2].push_back(Edge(1, 3));  // not an octahedron edge
        auto d = verify_tait_partition(t, bad);
        REQUIRE_FALSE(d.ok);
        REQUIRE(d.message.find("unknown edge") != std::string::npos);
    }
}

TEST_CASE("coloring scales to mid-sized instances") {
    Triangulation t = random_by_flip_walk(300, 900, 424242);
    REQUIRE(validate(t).ok);
    TaitPartition p = tait_partition(t);
    auto d = verify_tait_partition(t, p);
    INFO(d.message);
    REQUIRE(d.ok);
}
