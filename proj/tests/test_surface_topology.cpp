#include <catch2/catch_amalgamated.hpp>

#include "nessie/surface_topology.hpp"

using namespace nessie;

TEST_CASE("classical identifications") {
    const auto torus = complex_from_polygon(polygon_from_word("a b a' b'"));
    CHECK(torus.vertices == 1);
    CHECK(torus.edges == 2);
    CHECK(torus.faces == 1);
    CHECK(torus.euler_characteristic() == 0);

    const auto sphere = complex_from_polygon(polygon_from_word("a a'"));
    CHECK(sphere.vertices == 2);
    CHECK(sphere.edges == 1);
    CHECK(sphere.euler_characteristic() == 2);

    const auto disk = complex_from_polygon(polygon_from_word("a b c d"));
    CHECK(disk.vertices == 4);
    CHECK(disk.edges == 4);
    CHECK(disk.euler_characteristic() == 1);
}

TEST_CASE("summaries of classical words") {
    const auto torus = topology_summary(polygon_from_word("a b a' b'"));
    CHECK(torus == TopologySummary{0, 1, 0, true});

    const auto sphere = topology_summary(polygon_from_word("a a'"));
    CHECK(sphere == TopologySummary{2, 0, 0, true});

    // Square with one opposite pair glued (arrows parallel after the
    // traversal flips direction on the far side): an annulus.
    const auto annulus = topology_summary(polygon_from_word("a b a' d"));
    CHECK(annulus == TopologySummary{0, 0, 2, true});

    const auto disk = topology_summary(polygon_from_word("a b c d"));
    CHECK(disk == TopologySummary{1, 0, 1, true});

    // Genus 2 closed surface.
    const auto genus2 = topology_summary(polygon_from_word("a b a' b' c d c' d'"));
    CHECK(genus2 == TopologySummary{-2, 2, 0, true});

    // Torus with one hole: commutator word plus one free edge.
    const auto holed = topology_summary(polygon_from_word("a b a' b' c"));
    CHECK(holed == TopologySummary{-1, 1, 1, true});
}

TEST_CASE("malformed words are rejected") {
    CHECK_THROWS_AS(complex_from_polygon(polygon_from_word("a a")), MalformedWord);
    CHECK_THROWS_AS(complex_from_polygon(polygon_from_word("a a a'")), MalformedWord);
    CHECK_THROWS_AS(complex_from_polygon(IdentifiedPolygon{}), MalformedWord);
}

TEST_CASE("chi = V - E + F and chi = 2 - 2g - b agree on every summary") {
    for (const char* word :
         {"a b a' b'", "a a'", "a b c d", "a b a' d", "a b a' b' c", "a b c b' a' d"}) {
        const auto complex = complex_from_polygon(polygon_from_word(word));
        const auto summary = topology_summary(polygon_from_word(word));
        CHECK(summary.euler_characteristic == complex.euler_characteristic());
        CHECK(summary.euler_characteristic ==
              2 - 2 * summary.genus - summary.boundary_components);
    }
}

TEST_CASE("flat truncation: one pair is a torus with one hole") {
    const auto t = truncation_topology(TruncationSpec::flat(1));
    CHECK(t == TopologySummary{-1, 1, 1, true});
}

TEST_CASE("flat truncation: genus grows one handle per pair") {
    int prev = 0;
    for (int k = 1; k <= 8; ++k) {
        const auto t = truncation_topology(TruncationSpec::flat(k));
        CHECK(t.genus == k);
        CHECK(t.boundary_components == 1);
        CHECK(t.euler_characteristic == 1 - 2 * k);  // chi of a disk minus 2k gluings
        CHECK(t.genus == prev + 1);
        prev = t.genus;
    }
}

TEST_CASE("flat truncation validates the bounding disk") {
    CHECK_THROWS_AS(truncation_topology(TruncationSpec::flat(0)), std::invalid_argument);
    CHECK_THROWS_AS(truncation_topology(TruncationSpec::flat(2, 15.0)), std::invalid_argument);
    CHECK(truncation_topology(TruncationSpec::flat(2, 17.0)).genus == 2);
}

TEST_CASE("hyperbolic strip piece is a torus with one hole, for all m") {
    for (long long m = -5; m <= 5; ++m) {
        const auto t = truncation_topology(TruncationSpec::hyperbolic(m));
        CHECK(t == TopologySummary{-1, 1, 1, true});
    }
}

TEST_CASE("hyperbolic strip piece is independent of the cap height") {
    const auto low = truncation_topology(TruncationSpec::hyperbolic(0, 1.5));
    const auto high = truncation_topology(TruncationSpec::hyperbolic(0, 50.0));
    CHECK(low == high);
    CHECK_THROWS_AS(truncation_topology(TruncationSpec::hyperbolic(0, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("end counts: plane has one end, cylinder two") {
    for (int k = 0; k <= 8; ++k)
        for (int levels = 2; levels <= 5; ++levels)
            CHECK(count_ends_plane(k, levels) == 1);

    CHECK(count_ends_cylinder(4, 3) == 2);
    CHECK(count_ends_cylinder(0, 2) == 2);
    CHECK_THROWS_AS(count_ends_plane(1, 1), std::invalid_argument);
}
