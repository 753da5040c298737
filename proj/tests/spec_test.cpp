// spec_test.cpp - parsing, validation diagnostics, and canonical
// serialization of the combined document.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "anno/spec.hpp"

using namespace anno;
using nlohmann::json;

namespace {

const char* kChart = R"js({
  "mark": "bar",
  "encodings": {
    "x": {"field": "m", "type": "nominal"},
    "y": {"field": "v", "type": "quantitative"}
  },
  "width": 400, "height": 300
})js";

const char* kValues = R"js([
  {"m": "a", "v": 10},
  {"m": "b", "v": 20},
  {"m": "c", "v": 15}
])js";

std::string envelope(const std::string& annotations, const std::string& ensembles = "") {
    std::string s = "{\"chart\": " + std::string(kChart) +
                    ", \"data\": {\"values\": " + kValues + "}" +
                    ", \"annotations\": " + annotations;
    if (!ensembles.empty()) s += ", \"ensembles\": " + ensembles;
    return s + "}";
}

Spec parse_text(const std::string& text) {
    json doc = parse_document(text);
    DataTable data = load_spec_data(doc, ".", std::nullopt);
    return parse_spec(doc, data);
}

// Expects a SpecError and hands its diagnostic back for inspection.
Diagnostic expect_error(const std::string& text) {
    try {
        parse_text(text);
    } catch (const SpecError& e) {
        return e.diagnostic();
    }
    FAIL("expected a diagnostic");
    return {};
}

}  // namespace

TEST_CASE("serialization is a fixpoint and parse round-trips") {
    std::string text = envelope(R"js([
      {
        "targets": [{"dataPoint": {"expression": "datum.v > 12"}}],
        "text": {"content": "high", "position": {"anchor": "upRight", "dx": 2}},
        "enclosure": {"shape": "ellipse", "padding": 6},
        "connector": {"markers": "arrow-end", "interpolation": "catmull-rom"},
        "indicator": {"kind": "line", "expr": "mean(v)"}
      },
      {
        "targets": [
          {"fixed": {"space": "data", "x": "b", "y": 18}},
          {"chartPart": "title"},
          {"axis": {"axis": "y", "parts": ["tick", "grid"], "range": [10, 20]}}
        ],
        "text": {"content": "mix", "position": {"along": "start"}}
      },
      {
        "targets": ["none"],
        "indicator": {"kind": "area", "expr": ["min(v)", "max(v)"]}
      },
      {
        "targets": [{"id": "anno/0/text"}, {"dataPoint": {"indices": [0, 2]}},
                    {"axis": {"axis": "x", "range": "datum.value == \"b\""}}],
        "connector": {"path": "M 0 0 L 10 10"},
        "enclosure": {"shape": {"svgPath": "M 0 0 H 4 V 4 Z"}}
      }
    ])js",
                                R"js([
      {"reference": {"from": "anno/0/text", "to": "anno/3/connector"}},
      {"composite": {"id": "grp", "members": ["anno/0/text", "anno/2/indicator"]}}
    ])js");
    Spec s = parse_text(text);
    std::string one = serialize_spec(s);
    Spec s2 = parse_text(one);
    std::string two = serialize_spec(s2);
    CHECK(one == two);
    CHECK(spec_equal(s, s2));

    // chart + title fields survive
    CHECK(s.chart.mark == MarkType::Bar);
    CHECK(s.annotations.size() == 4);
    CHECK(s.ensembles.size() == 2);
}

TEST_CASE("serialization materializes defaults") {
    Spec s = parse_text(envelope(R"js([
      {"targets": ["none"], "connector": {}}
    ])js"));
    std::string out = serialize_spec(s);
    json j = json::parse(out);
    const json& conn = j["annotations"][0]["connector"];
    CHECK(conn["markers"] == "none");
    CHECK(conn["interpolation"] == "linear");
    CHECK(conn["style"]["stroke"] == "#333333");
    CHECK(conn["style"]["strokeWidth"] == 1.0);
    CHECK(conn["style"]["opacity"] == 1.0);
    CHECK(conn["style"]["fill"] == "none");
}

TEST_CASE("missing effect ids are filled in by root index and type") {
    Spec s = parse_text(envelope(R"js([
      {"targets": ["none"], "text": {"content": "t"}},
      {"targets": ["none"], "connector": {}, "indicator": {"kind": "line", "expr": "1"}}
    ])js"));
    CHECK(s.annotations[0].text->id == "anno/0/text");
    CHECK(s.annotations[1].connector->id == "anno/1/connector");
    CHECK(s.annotations[1].indicator->id == "anno/1/indicator");
}

TEST_CASE("unknown keys fail with their exact path") {
    Diagnostic d = expect_error(envelope(R"js([
      {"targets": ["none"], "text": {"content": "x", "colr": "red"}}
    ])js"));
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "annotations/0/text/colr");

    d = expect_error(envelope(R"js([{"targets": ["none"], "halo": true}])js"));
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "annotations/0/halo");
}

TEST_CASE("duplicate ids are rejected across effects and composites") {
    Diagnostic d = expect_error(envelope(R"js([
      {"targets": ["none"], "text": {"content": "a", "id": "k"}},
      {"targets": ["none"], "enclosure": {"id": "k"}}
    ])js"));
    CHECK(d.code == "DuplicateId");
    CHECK(d.path == "annotations/1/enclosure");
    CHECK(d.message.find("annotations/0/text") != std::string::npos);

    d = expect_error(envelope(R"js([
      {"targets": ["none"], "text": {"content": "a", "id": "k"}}
    ])js",
                              R"js([{"composite": {"id": "k", "members": ["k"]}}])js"));
    CHECK(d.code == "DuplicateId");
    CHECK(d.path == "ensembles/0/composite/id");
}

TEST_CASE("empty target lists are rejected") {
    Diagnostic d = expect_error(envelope(R"js([{"targets": [], "connector": {}}])js"));
    CHECK(d.code == "EmptyTargets");
    CHECK(d.path == "annotations/0/targets");
}

TEST_CASE("a repeated effect key is MultipleEffectsOfType with the key's path") {
    // Raw text: the repeated key never survives DOM parsing, so the scanner
    // has to catch it before the document is built.
    std::string text = envelope(R"js([
      {"targets": ["none"],
       "text": {"content": "a"},
       "text": {"content": "b"}}
    ])js");
    Diagnostic d = expect_error(text);
    CHECK(d.code == "MultipleEffectsOfType");
    CHECK(d.path == "annotations/0/text");

    // outside annotation roots a duplicate key is a plain schema error
    d = expect_error("{\"chart\": 1, \"chart\": 2}");
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "chart");
}

TEST_CASE("malformed JSON is SyntaxError with a byte offset") {
    Diagnostic d = expect_error("{\"chart\": ");
    CHECK(d.code == "SyntaxError");
    CHECK(d.message.find("byte") != std::string::npos);
}

TEST_CASE("style validation") {
    auto style_doc = [](const std::string& style) {
        return envelope(R"js([{"targets": ["none"], "text": {"content": "x", "style": )js" + style +
                        "}}]");
    };
    Diagnostic d = expect_error(style_doc(R"js({"opacity": 1.5})js"));
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "annotations/0/text/style/opacity");

    d = expect_error(style_doc(R"js({"strokeWidth": -1})js"));
    CHECK(d.path == "annotations/0/text/style/strokeWidth");

    d = expect_error(style_doc(R"js({"fontWeight": "heavy"})js"));
    CHECK(d.path == "annotations/0/text/style/fontWeight");

    d = expect_error(style_doc(R"js({"dash": [4, 0]})js"));
    CHECK(d.path == "annotations/0/text/style/dash/1");

    d = expect_error(style_doc(R"js({"textAnchor": "left"})js"));
    CHECK(d.path == "annotations/0/text/style/textAnchor");
}

TEST_CASE("target parsing covers all forms") {
    Spec s = parse_text(envelope(R"js([
      {"targets": [
         {"id": "x"},
         {"fixed": {"space": "pixel", "x": 10, "y": 20}},
         {"chartPart": "caption"},
         {"dataPoint": {"expression": "datum.v >= 15"}},
         {"dataPoint": {"indices": [2, 0, 2]}},
         {"axis": {"axis": "y"}},
         "none"
       ],
       "text": {"content": "all"}}
    ])js"));
    const auto& ts = s.annotations[0].targets;
    REQUIRE(ts.size() == 7);
    CHECK(ts[0].kind == Target::Kind::ById);
    CHECK(ts[1].kind == Target::Kind::Fixed);
    CHECK(ts[1].fixed.space == FixedPos::Space::Pixel);
    CHECK(ts[2].part == ChartPartKind::Caption);
    CHECK(ts[3].expr != nullptr);
    CHECK(ts[4].indices == std::vector<std::size_t>{0, 2});  // deduped, sorted
    CHECK(ts[5].kind == Target::Kind::Axis);
    CHECK(ts[5].parts.size() == 4);  // defaulted to every axis part
    CHECK(ts[6].kind == Target::Kind::None);
}

TEST_CASE("target validation failures carry paths") {
    Diagnostic d = expect_error(envelope(
        R"js([{"targets": [{"dataPoint": {"expression": "datum.v"}}], "text": {"content": "x"}}])js"));
    CHECK(d.code == "TypeError");
    CHECK(d.path == "annotations/0/targets/0/dataPoint/expression");

    d = expect_error(envelope(
        R"js([{"targets": [{"dataPoint": {"indices": [99]}}], "text": {"content": "x"}}])js"));
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "annotations/0/targets/0/dataPoint/indices/0");

    d = expect_error(envelope(
        R"js([{"targets": [{"dataPoint": {"expression": "1 > 0", "indices": [0]}}], "text": {"content": "x"}}])js"));
    CHECK(d.code == "SchemaError");

    d = expect_error(envelope(
        R"js([{"targets": [{"axis": {"axis": "color"}}], "text": {"content": "x"}}])js"));
    CHECK(d.path == "annotations/0/targets/0/axis/axis");

    d = expect_error(envelope(
        R"js([{"targets": [{"axis": {"axis": "x", "range": "datum.value"}}], "text": {"content": "x"}}])js"));
    CHECK(d.code == "TypeError");
    CHECK(d.path == "annotations/0/targets/0/axis/range");

    d = expect_error(envelope(R"js([{"targets": [{"what": 1}], "text": {"content": "x"}}])js"));
    CHECK(d.path == "annotations/0/targets/0/what");
}

TEST_CASE("fixed positions demand the space key and typed coordinates") {
    Diagnostic d = expect_error(envelope(
        R"js([{"targets": [{"fixed": {"x": 1, "y": 2}}], "text": {"content": "x"}}])js"));
    CHECK(d.code == "SchemaError");
    CHECK(d.message.find("space") != std::string::npos);

    d = expect_error(envelope(
        R"js([{"targets": [{"fixed": {"space": "screen", "x": 1, "y": 2}}], "text": {"content": "x"}}])js"));
    CHECK(d.path == "annotations/0/targets/0/fixed/space");

    d = expect_error(envelope(
        R"js([{"targets": [{"fixed": {"space": "pixel", "x": "a", "y": 2}}], "text": {"content": "x"}}])js"));
    CHECK(d.message.find("pixel") != std::string::npos);
}

TEST_CASE("positions allow exactly one placement form") {
    Diagnostic d = expect_error(envelope(R"js([
      {"targets": ["none"],
       "text": {"content": "x", "position": {"anchor": "up", "along": "mid"}}}
    ])js"));
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "annotations/0/text/position");

    Spec s = parse_text(envelope(R"js([
      {"targets": ["none"],
       "text": {"content": "x", "position": {"anchor": "downLeft", "dx": -3, "dy": 8}}}
    ])js"));
    const Position& p = *s.annotations[0].text->position;
    CHECK(p.anchor == Anchor2D::DownLeft);
    CHECK(p.dx == -3);
    CHECK(p.dy == 8);
}

TEST_CASE("indicator expressions are typed") {
    Diagnostic d = expect_error(envelope(
        R"js([{"targets": ["none"], "indicator": {"kind": "line", "expr": "datum.v > 1"}}])js"));
    CHECK(d.code == "TypeError");

    d = expect_error(envelope(
        R"js([{"targets": ["none"], "indicator": {"kind": "area", "expr": "mean(v)"}}])js"));
    CHECK(d.code == "SchemaError");  // area needs the [lo, hi] pair
    CHECK(d.path == "annotations/0/indicator/expr");
}

TEST_CASE("ensemble shapes are validated") {
    Diagnostic d = expect_error(envelope(R"js([{"targets": ["none"], "text": {"content": "x"}}])js",
                                         R"js([{"bundle": {}}])js"));
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "ensembles/0/bundle");

    d = expect_error(envelope(R"js([{"targets": ["none"], "text": {"content": "x"}}])js",
                              R"js([{"composite": {"id": "g", "members": []}}])js"));
    CHECK(d.path == "ensembles/0/composite/members");
}

TEST_CASE("data block needs exactly one source") {
    Diagnostic d = expect_error(
        "{\"chart\": " + std::string(kChart) + ", \"data\": {}, \"annotations\": []}");
    CHECK(d.code == "SchemaError");
    CHECK(d.path == "data");
}
