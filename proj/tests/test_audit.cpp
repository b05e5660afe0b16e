#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include <flipforge/audit.hpp>
#include <flipforge/generators.hpp>
#include <flipforge/hamiltonize.hpp>
#include <flipforge/oracle.hpp>

using namespace flipforge;

TEST_CASE("certify_hamlower") {
    SECTION("certifies the stellated family at its exact bound") {
        for (int i = 1; i <= 8; ++i) {
            Triangulation t = make_lowerham(i);
            std::vector<int> v1 = lowerham_v1(i);
            REQUIRE(t.n() == 3 * i + 8);
            REQUIRE(static_cast<int>(v1.size()) == 2 * (i + 4) - 4);
            REQUIRE(certify_hamlower(t, v1, i));
            REQUIRE_FALSE(certify_hamlower(t, v1, i + 1));
        }
    }
    SECTION("the i = 1 instance has the documented shape") {
        Triangulation t = make_lowerham(1);
        REQUIRE(t.n() == 11);
        REQUIRE(lowerham_v1(1).size() == 6);
        REQUIRE(certify_hamlower(t, lowerham_v1(1), 1));
    }
    SECTION("one new V1-V1 edge breaks the certificate") {
        Triangulation t = make_lowerham(2);
        std::vector<int> v1 = lowerham_v1(2);
        std::set<int> v1set(v1.begin(), v1.end());
        bool flipped = false;
        for (const Edge& e : t.edges()) {
            if (!is_flippable(t, e)) continue;
            auto [c, d] = t.face_apexes(e);
            if (v1set.count(c) && v1set.count(d)) {
                Triangulation t2 = flip(t, e).first;
                REQUIRE_FALSE(certify_hamlower(t2, v1, 2));
                flipped = true;
                break;
            }
        }
        REQUIRE(flipped);
    }
    SECTION("a too-small set cannot certify the family bound") {
        Triangulation t = make_lowerham(3);
        std::vector<int> v1 = lowerham_v1(3);
        v1.resize(v1.size() - 4);  // still independent, surplus below (n-8)/3
        REQUIRE_FALSE(certify_hamlower(t, v1, 1));
    }
    SECTION("malformed sets are rejected") {
        Triangulation t = make_lowerham(1);
        REQUIRE_THROWS_AS(certify_hamlower(t, {0, 99}, 1), flip_error);
        REQUIRE_THROWS_AS(certify_hamlower(t, {5, 5}, 1), flip_error);
    }
    SECTION("the certified bound is real: hamflip needs that many flips") {
        for (int i = 1; i <= 3; ++i) {
            Triangulation t = make_lowerham(i);
            REQUIRE(certify_hamlower(t, lowerham_v1(i), i));
            REQUIRE(static_cast<int>(hamflip(t).flips.size()) >= i);
        }
    }
    SECTION("oracle spot check at i = 1 (nightly)") {
        if (!std::getenv("FLIPFORGE_NIGHTLY")) SKIP("set FLIPFORGE_NIGHTLY to run");
        // n = 11: the certificate says one subdivision is necessary; the
        // exhaustive order search confirms the graph is not subhamiltonian.
        Triangulation t = make_lowerham(1);
        SubhamResult r = detail::subhamiltonian_search(
            PlanarGraph(t), [] { static long long b = 4'000'000'000; return &b; }());
        REQUIRE_FALSE(r.subhamiltonian);
    }
}

TEST_CASE("certify_upsim4lower") {
    SECTION("holds for the whole family up to i = 50") {
        for (int i = 1; i <= 50; ++i)
            REQUIRE(certify_upsim4lower(make_lower4c(i), i));
    }
    SECTION("a single flip destroys the structure") {
        Triangulation t = make_lower4c(1);
        Triangle f0(t.outer_face()[0], t.outer_face()[1], t.outer_face()[2]);
        Edge e = f0.edges()[0];
        REQUIRE(is_flippable(t, e));
        REQUIRE_FALSE(certify_upsim4lower(flip(t, e).first, 1));
    }
    SECTION("wrong family is rejected") {
        REQUIRE_THROWS_AS(certify_upsim4lower(make_octahedron(), 1), flip_error);
        REQUIRE_THROWS_AS(certify_upsim4lower(make_lower4c(2), 1), flip_error);
    }
    SECTION("agrees with the exhaustive minimum at i = 1") {
        REQUIRE(certify_upsim4lower(make_lower4c(1), 1));
        REQUIRE(min_simflip_to_4connected(make_lower4c(1)) == 2);
    }
}
