// svg_path_test.cpp - path data parsing, normalization, bounds, transforms.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "anno/diagnostics.hpp"
#include "anno/svg_path.hpp"

using namespace anno;

TEST_CASE("absolute commands parse and serialize") {
    SvgPath p = parse_svg_path("M 10 20 L 30 40 Z", "t");
    REQUIRE(p.cmds.size() == 3);
    CHECK(p.cmds[0].op == 'M');
    CHECK(p.cmds[1].op == 'L');
    CHECK(p.cmds[2].op == 'Z');
    CHECK(p.to_string(2) == "M 10.00 20.00 L 30.00 40.00 Z");
}

TEST_CASE("relative commands are made absolute") {
    SvgPath p = parse_svg_path("m 10 10 l 5 0 l 0 5 z", "t");
    CHECK(p.to_string(0) == "M 10 10 L 15 10 L 15 15 Z");
}

TEST_CASE("h and v become l") {
    SvgPath p = parse_svg_path("M 1 2 H 9 V 7 h -2 v -1", "t");
    CHECK(p.to_string(0) == "M 1 2 L 9 2 L 9 7 L 7 7 L 7 6");
}

TEST_CASE("implicit lineto after moveto") {
    // extra coordinate pairs after M are L per the SVG grammar
    SvgPath p = parse_svg_path("M 0 0 10 0 10 10", "t");
    CHECK(p.to_string(0) == "M 0 0 L 10 0 L 10 10");
}

TEST_CASE("smooth curves gain their reflected control point") {
    SvgPath p = parse_svg_path("M 0 0 C 0 10 10 10 10 0 S 20 -10 20 0", "t");
    REQUIRE(p.cmds.size() == 3);
    CHECK(p.cmds[2].op == 'C');
    // reflection of (10,10) about (10,0) is (10,-10)
    CHECK(p.cmds[2].args[0] == doctest::Approx(10));
    CHECK(p.cmds[2].args[1] == doctest::Approx(-10));

    SvgPath q = parse_svg_path("M 0 0 Q 5 10 10 0 T 20 0", "t");
    REQUIRE(q.cmds.size() == 3);
    CHECK(q.cmds[2].op == 'Q');
    CHECK(q.cmds[2].args[0] == doctest::Approx(15));
    CHECK(q.cmds[2].args[1] == doctest::Approx(-10));
}

TEST_CASE("control bbox") {
    Rect line = parse_svg_path("M 0 0 L 10 5", "t").control_bbox();
    CHECK(line.x == 0);
    CHECK(line.y == 0);
    CHECK(line.w == 10);
    CHECK(line.h == 5);
    // curve hull is conservative: includes control points
    Rect r = parse_svg_path("M 0 0 C 0 20 10 20 10 0", "t").control_bbox();
    CHECK(r.y == 0);
    CHECK(r.h == 20);
    // arc endpoints inflated by max radius
    Rect a = parse_svg_path("M 0 0 A 5 3 0 0 1 10 0", "t").control_bbox();
    CHECK(a.x <= -5 + 1e-9);
    CHECK(a.right() >= 15 - 1e-9);
}

TEST_CASE("transformed scales uniformly then translates") {
    SvgPath p = parse_svg_path("M 1 1 L 3 1 A 2 1 30 1 0 5 5", "t");
    SvgPath q = p.transformed(2.0, Vec2{10, 20});
    CHECK(q.to_string(0) == "M 12 22 L 16 22 A 4 2 30 1 0 20 30");
}

TEST_CASE("round trip through to_string") {
    std::string d = "M 0.50 1.25 C 2.00 3.00 4.00 5.00 6.00 7.00 Q 8.00 9.00 10.00 11.00 Z";
    SvgPath p = parse_svg_path(d, "t");
    CHECK(p.to_string(2) == d);
    CHECK(parse_svg_path(p.to_string(2), "t").to_string(2) == d);
}

TEST_CASE("malformed paths fail with the doc path") {
    for (const char* bad : {"", "L 1 2", "M 1", "M 1 2 C 1 2 3", "M x y", "M 1 2 B 3 4"}) {
        CAPTURE(bad);
        try {
            parse_svg_path(bad, "annotations/0/enclosure/shape/svgPath");
            FAIL("expected SchemaError for: ", bad);
        } catch (const SpecError& e) {
            CHECK(e.diagnostic().code == "SchemaError");
            CHECK(e.diagnostic().path == "annotations/0/enclosure/shape/svgPath");
        }
    }
}
