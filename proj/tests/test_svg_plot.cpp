#include <catch2/catch_amalgamated.hpp>

#include "epsplane/locus_solver.hpp"
#include "epsplane/material_db.hpp"
#include "epsplane/svg_plot.hpp"
#include "test_support.hpp"

using epsplane::builtin_database;
using epsplane::default_regions;
using epsplane::render_plane_svg;
using testsupport::count_occurrences;

TEST_CASE("plane plot carries every material and region", "[svg]") {
    const auto svg = render_plane_svg(builtin_database(), default_regions());

    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count_occurrences(svg, "class=\"material\"") == 28);
    CHECK(count_occurrences(svg, "class=\"region hazard\"") == 2);
    CHECK(count_occurrences(svg, "class=\"region safe\"") == 1);
    CHECK(svg.find("TNT") != std::string::npos);
    CHECK(svg.find("Glass, High Purity Fused Silica") != std::string::npos);
    CHECK(svg.find("lower-hazard") != std::string::npos);
    CHECK(svg.find("<polyline") == std::string::npos);
}

TEST_CASE("plot output is deterministic", "[svg]") {
    const auto a = render_plane_svg(builtin_database(), default_regions());
    const auto b = render_plane_svg(builtin_database(), default_regions());
    CHECK(a == b);
}

TEST_CASE("overlay adds one locus polyline", "[svg]") {
    const auto curve = epsplane::solve_locus(0.3047, epsplane::default_loss_grid());
    const auto svg = render_plane_svg(builtin_database(), default_regions(), &curve);
    CHECK(count_occurrences(svg, "<polyline") == 1);
    CHECK(svg.find("class=\"locus\"") != std::string::npos);
}

TEST_CASE("names with markup characters are escaped", "[svg]") {
    auto db = builtin_database();
    db.records[0].name = "A <b>& \"co\"";
    const auto svg = render_plane_svg(db, default_regions());
    CHECK(svg.find("<b>") == std::string::npos);
    CHECK(svg.find("A &lt;b&gt;&amp; &quot;co&quot;") != std::string::npos);
}
