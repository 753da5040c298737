// resolver_test.cpp - mapping annotation targets to scene nodes and points.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "anno/resolver.hpp"

using namespace anno;

namespace {

struct Fixture {
    DataTable data;
    ChartSpec chart;
    SceneGraph scene;
    DiagnosticSink sink;

    explicit Fixture(MarkType mark = MarkType::Bar) {
        using V = Value;
        data = DataTable({{"m", ColumnType::String}, {"v", ColumnType::Number}},
                         {
                             {V("a"), V(10.0)},
                             {V("b"), V(40.0)},
                             {V("c"), V(25.0)},
                         });
        chart.mark = mark;
        chart.width = 400;
        chart.height = 300;
        chart.title = "demo";
        chart.encodings[Channel::X] = {"m", EncodingType::Nominal, std::nullopt};
        chart.encodings[Channel::Y] = {"v", EncodingType::Quantitative, std::nullopt};
        scene = build_scene(chart, data, infer_scales(chart, data), sink);
    }

    ResolvedTarget resolve(const Target& t) {
        return resolve_target(t, scene, data, sink, "annotations/0/targets/0");
    }
};

Target data_point_expr(const DataTable& data, const std::string& src) {
    Target t;
    t.kind = Target::Kind::DataPoint;
    t.expr_src = src;
    t.expr = parse_expr(src, data, "");
    return t;
}

}  // namespace

TEST_CASE("data-point expression targets select the matching marks") {
    Fixture f;
    ResolvedTarget rt = f.resolve(data_point_expr(f.data, "datum.v >= 25"));
    REQUIRE(rt.node_ids.size() == 2);
    CHECK(rt.node_ids[0] == "mark/1");
    CHECK(rt.node_ids[1] == "mark/2");
    // union covers both bars exactly
    Rect u = f.scene.find("mark/1")->bbox.union_with(f.scene.find("mark/2")->bbox);
    CHECK(rt.union_bbox.x == doctest::Approx(u.x));
    CHECK(rt.union_bbox.w == doctest::Approx(u.w));
    CHECK(rt.union_bbox.y == doctest::Approx(u.y));
    CHECK(rt.union_bbox.h == doctest::Approx(u.h));
}

TEST_CASE("data-point index targets hit rows directly") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::DataPoint;
    t.indices = {0};
    ResolvedTarget rt = f.resolve(t);
    REQUIRE(rt.node_ids.size() == 1);
    CHECK(rt.node_ids[0] == "mark/0");
}

TEST_CASE("data-point targets that match nothing raise TargetEmpty") {
    Fixture f;
    try {
        f.resolve(data_point_expr(f.data, "datum.v > 1000"));
        FAIL("expected TargetEmpty");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "TargetEmpty");
        CHECK(e.diagnostic().path == "annotations/0/targets/0");
    }
}

TEST_CASE("fixed targets map through scales or plot-relative pixels") {
    Fixture f;
    const Scale& sx = f.scene.scales.at(Channel::X);
    const Scale& sy = f.scene.scales.at(Channel::Y);

    Target t;
    t.kind = Target::Kind::Fixed;
    t.fixed.space = FixedPos::Space::Data;
    t.fixed.x = Value("b");
    t.fixed.y = Value(30.0);
    ResolvedTarget rt = f.resolve(t);
    CHECK(rt.union_bbox.w == 0);
    CHECK(rt.union_bbox.x == doctest::Approx(sx.band_center(1)));
    CHECK(rt.union_bbox.y == doctest::Approx(sy.apply_continuous(30.0)));

    t.fixed.space = FixedPos::Space::Pixel;
    t.fixed.x = Value(15.0);
    t.fixed.y = Value(25.0);
    rt = f.resolve(t);
    CHECK(rt.union_bbox.x == doctest::Approx(f.scene.plot.x + 15));
    CHECK(rt.union_bbox.y == doctest::Approx(f.scene.plot.y + 25));
}

TEST_CASE("data-space lookups outside the domain are DomainMiss at the target's path") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::Fixed;
    t.fixed.space = FixedPos::Space::Data;
    t.fixed.x = Value("zz");
    t.fixed.y = Value(30.0);
    try {
        f.resolve(t);
        FAIL("expected DomainMiss");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "DomainMiss");
        CHECK(e.diagnostic().path == "annotations/0/targets/0");
    }

    // numeric overshoot on the y scale
    t.fixed.x = Value("a");
    t.fixed.y = Value(1e9);
    try {
        f.resolve(t);
        FAIL("expected DomainMiss");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "DomainMiss");
    }
}

TEST_CASE("none targets sit just inside the plot's upper-right corner") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::None;
    ResolvedTarget rt = f.resolve(t);
    CHECK(rt.union_bbox.x == doctest::Approx(f.scene.plot.right() - 10));
    CHECK(rt.union_bbox.y == doctest::Approx(f.scene.plot.y + 10));
    CHECK(rt.union_bbox.w == 0);
    CHECK(rt.union_bbox.h == 0);
}

TEST_CASE("chart-part targets find the node or fail MissingChartPart") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::ChartPart;
    t.part = ChartPartKind::Title;
    ResolvedTarget rt = f.resolve(t);
    REQUIRE(rt.node_ids.size() == 1);
    CHECK(rt.node_ids[0] == "chart/title");

    t.part = ChartPartKind::Caption;  // fixture has no caption
    try {
        f.resolve(t);
        FAIL("expected MissingChartPart");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "MissingChartPart");
    }
}

TEST_CASE("by-id targets come back pending for the assembler") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::ById;
    t.id = "anno/7/text";
    ResolvedTarget rt = f.resolve(t);
    CHECK(rt.pending);
    CHECK(rt.pending_id == "anno/7/text");
    CHECK(rt.node_ids.empty());
}

TEST_CASE("axis targets filter by part list") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::Axis;
    t.axis = Channel::Y;
    t.parts = {AxisPartKind::Label};
    ResolvedTarget rt = f.resolve(t);
    REQUIRE(rt.node_ids.size() == 1);
    CHECK(rt.node_ids[0] == "axis/y/label");

    t.parts = {AxisPartKind::Tick, AxisPartKind::TickLabel};
    rt = f.resolve(t);
    CHECK(rt.node_ids.size() >= 4);
    for (const std::string& id : rt.node_ids)
        CHECK((id.find("axis/y/tick") == 0));  // ticks and tick-labels only
}

TEST_CASE("axis range pairs clip numerically on continuous axes") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::Axis;
    t.axis = Channel::Y;
    t.parts = {AxisPartKind::Tick};
    t.range_pair = {{Value(0.0), Value(20.0)}};
    ResolvedTarget rt = f.resolve(t);
    // y domain is [0, 40] with step 10 -> ticks 0,10,20,30,40; range keeps 3
    CHECK(rt.node_ids.size() == 3);
}

TEST_CASE("axis range pairs clip positionally on category axes") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::Axis;
    t.axis = Channel::X;
    t.parts = {AxisPartKind::Tick};
    t.range_pair = {{Value("b"), Value("c")}};
    ResolvedTarget rt = f.resolve(t);
    CHECK(rt.node_ids.size() == 2);

    t.range_pair = {{Value("zz"), Value("c")}};
    try {
        f.resolve(t);
        FAIL("expected DomainMiss");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "DomainMiss");
    }
}

TEST_CASE("axis range expressions bind datum.value per part") {
    Fixture f;
    Target t;
    t.kind = Target::Kind::Axis;
    t.axis = Channel::X;
    t.parts = {AxisPartKind::TickLabel};
    DataTable one({Column{"value", ColumnType::String}}, {{Value("x")}});
    t.range_expr_src = "datum.value == \"b\"";
    t.range_expr = parse_expr(*t.range_expr_src, one, "");
    ResolvedTarget rt = f.resolve(t);
    REQUIRE(rt.node_ids.size() == 1);
    CHECK(rt.node_ids[0] == "axis/x/tick-label/1");
}
