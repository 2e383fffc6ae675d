#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>

#include "nessie/curve.hpp"
#include "nessie/svg.hpp"

using namespace nessie;

namespace {
std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}
}  // namespace

TEST_CASE("curve points: frozen small cases") {
    const auto one = curve_points(1);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0] - std::complex<double>(1.0, 0.0)) < 1e-15);

    const auto two = curve_points(2);
    REQUIRE(two.size() == 2);
    const double phase = std::pow(std::log(2.0), 4);  // about 0.230835
    CHECK(phase == Catch::Approx(0.230835).margin(1e-6));
    const auto expected = std::complex<double>(1.0, 0.0) +
                          std::polar(1.0, 2.0 * std::acos(-1.0) * phase);
    CHECK(std::abs(two[1] - expected) < 1e-12);

    CHECK_THROWS_AS(curve_points(0), std::invalid_argument);
}

TEST_CASE("curve steps all have unit modulus") {
    const auto sums = curve_points(6000);
    REQUIRE(sums.size() == 6000);
    std::complex<double> prev(0.0, 0.0);
    for (const auto& s : sums) {
        CHECK(std::abs(s - prev) == Catch::Approx(1.0).margin(1e-12));
        prev = s;
    }
}

TEST_CASE("number formatting is plain and stable") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(8.0) == "8");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == format_number(1.0 / 3.0));
}

TEST_CASE("domain figure: one arc per circle in the window") {
    const auto doc2 = domain_svg(2);
    CHECK(count_occurrences(doc2, "class=\"geodesic\"") == 5);
    const auto doc0 = domain_svg(0);
    CHECK(count_occurrences(doc0, "class=\"geodesic\"") == 1);
    CHECK(doc2 == domain_svg(2));  // deterministic
}

TEST_CASE("tessellation stats follow the word counts") {
    std::string doc;
    const auto s0 = tessellation_svg(1, 0, doc);
    // View [-2, 30] holds the circles centered 0, 4, ..., 28.
    CHECK(s0.arcs_total == 8);
    CHECK(s0.arcs_drawn + s0.arcs_clipped == s0.arcs_total);
    CHECK(count_occurrences(doc, "class=\"geodesic\"") ==
          static_cast<std::size_t>(s0.arcs_drawn));

    std::string doc1;
    const auto s1 = tessellation_svg(1, 1, doc1);
    CHECK(s1.arcs_total == 8 * 13);

    std::string doc3;
    const auto s3 = tessellation_svg(1, 3, doc3);
    CHECK(s3.arcs_total == 8LL * (1 + 12 + 132 + 1452));
    CHECK(count_occurrences(doc3, "class=\"geodesic\"") ==
          static_cast<std::size_t>(s3.arcs_drawn));

    std::string again;
    tessellation_svg(1, 3, again);
    CHECK(doc3 == again);
}

TEST_CASE("flat figure: slit segments and trace overlay") {
    const auto bare = flat_svg(SlitSurface::monster(2));
    CHECK(count_occurrences(bare, "class=\"slit\"") == 4);
    CHECK(count_occurrences(bare, "class=\"jump\"") == 0);

    const auto surf = SlitSurface::monster(1);
    const auto trace = trace_geodesic(surf, {3.5, 1.0}, {0.0, -1.0}, 16, 3.0);
    const auto doc = flat_svg(surf, &trace);
    CHECK(count_occurrences(doc, "class=\"slit\"") == 2);
    CHECK(count_occurrences(doc, "class=\"flight\"") == 2);
    CHECK(count_occurrences(doc, "class=\"jump\"") == 1);
}

TEST_CASE("curve figure renders and repeats byte for byte") {
    const auto sums = curve_points(500);
    const auto doc = curve_svg(sums);
    CHECK(doc.find("<path") != std::string::npos);
    CHECK(doc == curve_svg(sums));
}

TEST_CASE("file writing reports missing directories") {
    const auto sums = curve_points(3);
    CHECK_THROWS_AS(render_curve_svg(sums, "/no/such/dir/out.svg"), IoError);

    const auto tmp = std::filesystem::temp_directory_path() / "nessie_svg_test.svg";
    render_curve_svg(sums, tmp.string());
    CHECK(std::filesystem::file_size(tmp) > 0);
    std::filesystem::remove(tmp);
}
