// chart_test.cpp - margins, scale inference, band arithmetic, tick steps.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "anno/chart.hpp"

using namespace anno;

namespace {

DataTable month_table() {
    using V = Value;
    return DataTable(
        {{"m", ColumnType::String}, {"v", ColumnType::Number}, {"d", ColumnType::Temporal}},
        {
            {V("jan"), V(12.0), V(Temporal{0})},
            {V("feb"), V(30.0), V(Temporal{86400000})},
            {V("mar"), V(7.0), V(Temporal{172800000})},
        });
}

ChartSpec bar_spec() {
    ChartSpec c;
    c.mark = MarkType::Bar;
    c.width = 400;
    c.height = 300;
    c.encodings[Channel::X] = {"m", EncodingType::Nominal, std::nullopt};
    c.encodings[Channel::Y] = {"v", EncodingType::Quantitative, std::nullopt};
    return c;
}

}  // namespace

TEST_CASE("plot area from fixed margins") {
    ChartSpec c = bar_spec();
    Rect p = plot_area(c);
    CHECK(p.x == 50);
    CHECK(p.y == 40);
    CHECK(p.w == 400 - 50 - 20);
    CHECK(p.h == 300 - 40 - 40);

    // a nominal color encoding adds legend room on the right
    c.encodings[Channel::Color] = {"m", EncodingType::Nominal, std::nullopt};
    Rect pl = plot_area(c);
    CHECK(pl.w == 400 - 50 - 20 - 80);
}

TEST_CASE("tick step rule: {1,2,5} x 10^k closest to target") {
    // oracle: enumerate every candidate step and measure the distance of its
    // tick count from the target, preferring larger steps on ties
    auto oracle = [](double lo, double hi, int target) {
        double best = 0, best_dist = 1e300;
        for (int e = -12; e <= 12; ++e) {
            for (long m : {1, 2, 5}) {
                double step = m * std::pow(10.0, e);
                double count = std::floor(hi / step) - std::ceil(lo / step) + 1;
                double dist = std::abs(count - target);
                if (dist < best_dist - 1e-9 ||
                    (std::abs(dist - best_dist) <= 1e-9 && step > best)) {
                    best = step;
                    best_dist = dist;
                }
            }
        }
        return best;
    };

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> lo_d(-1000, 1000);
    std::uniform_real_distribution<double> len_d(0.001, 5000);
    for (int i = 0; i < 200; ++i) {
        double lo = lo_d(rng);
        double hi = lo + len_d(rng);
        double got = choose_tick_step(lo, hi, kDefaultTickTarget);
        double want = oracle(lo, hi, kDefaultTickTarget);
        CAPTURE(lo);
        CAPTURE(hi);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }

    CHECK(choose_tick_step(0, 100, 5) == doctest::Approx(20));
    CHECK(choose_tick_step(0, 1, 5) == doctest::Approx(0.2));
    auto parts = choose_tick_step_parts(0, 350, 5);
    CHECK(parts.mantissa * std::pow(10.0, parts.exp10) == doctest::Approx(parts.step));
}

TEST_CASE("nice_floor / nice_ceil absorb float noise") {
    CHECK(nice_floor(0.30000000000000004, 0.1) == doctest::Approx(0.3));
    CHECK(nice_ceil(0.30000000000000004, 0.1) == doctest::Approx(0.3));
    CHECK(nice_floor(0.31, 0.1) == doctest::Approx(0.3));
    CHECK(nice_ceil(0.31, 0.1) == doctest::Approx(0.4));
    CHECK(nice_floor(-0.31, 0.1) == doctest::Approx(-0.4));
    CHECK(nice_ceil(-0.31, 0.1) == doctest::Approx(-0.3));
}

TEST_CASE("band arithmetic") {
    Scale s;
    s.kind = Scale::Kind::Band;
    s.categories = {"a", "b", "c", "d"};
    s.r0 = 100;
    s.r1 = 500;
    s.band_padding = 0.1;

    // oracle: step n-ths of the range; band sits after a padding gap
    double step = (500.0 - 100.0) / 4;
    CHECK(s.band_step() == doctest::Approx(step));
    CHECK(s.band_width() == doctest::Approx(step * 0.9));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(s.band_start(i) == doctest::Approx(100 + step * i + step * 0.1));
        CHECK(s.band_center(i) == doctest::Approx(100 + step * i + step * 0.1 + step * 0.45));
    }
    CHECK(s.category_index("c") == 2);
    CHECK(!s.category_index("zz").has_value());
    CHECK(scale_apply(s, Value("b")) == doctest::Approx(s.band_center(1)));
}

TEST_CASE("linear apply and extrapolation") {
    Scale s;
    s.kind = Scale::Kind::Linear;
    s.d0 = 0;
    s.d1 = 10;
    s.r0 = 260;  // y axis: inverted range
    s.r1 = 40;
    CHECK(scale_apply(s, Value(0.0)) == 260);
    CHECK(scale_apply(s, Value(10.0)) == 40);
    CHECK(scale_apply(s, Value(5.0)) == 150);
    CHECK(scale_apply(s, Value(20.0)) == -180);  // extrapolates
    CHECK_THROWS_AS(scale_apply_checked(s, Value(20.0)), SpecError);
    CHECK(scale_apply_checked(s, Value(10.0)) == 40);  // boundary ok
}

TEST_CASE("scale inference for a bar chart") {
    DataTable t = month_table();
    ChartSpec c = bar_spec();
    auto scales = infer_scales(c, t);

    const Scale& x = scales.at(Channel::X);
    REQUIRE(x.kind == Scale::Kind::Band);
    CHECK(x.categories == std::vector<std::string>{"jan", "feb", "mar"});  // first-seen order

    const Scale& y = scales.at(Channel::Y);
    REQUIRE(y.kind == Scale::Kind::Linear);
    CHECK(y.d0 == 0);  // bars anchor at zero
    CHECK(y.d1 >= 30);
    CHECK(std::fmod(y.d1, choose_tick_step(y.d0, y.d1, kDefaultTickTarget)) ==
          doctest::Approx(0.0));
}

TEST_CASE("ordinal sorts, nominal keeps order") {
    DataTable t = month_table();
    ChartSpec c = bar_spec();
    c.encodings[Channel::X].type = EncodingType::Ordinal;
    auto scales = infer_scales(c, t);
    CHECK(scales.at(Channel::X).categories == std::vector<std::string>{"feb", "jan", "mar"});
}

TEST_CASE("temporal scale") {
    DataTable t = month_table();
    ChartSpec c = bar_spec();
    c.mark = MarkType::Line;
    c.encodings[Channel::X] = {"d", EncodingType::Temporal, std::nullopt};
    auto scales = infer_scales(c, t);
    const Scale& x = scales.at(Channel::X);
    REQUIRE(x.kind == Scale::Kind::Time);
    CHECK(x.d0 <= 0);
    CHECK(x.d1 >= 172800000);
    CHECK(scale_apply(x, Value(Temporal{86400000})) > scale_apply(x, Value(Temporal{0})));
}

TEST_CASE("explicit scale domains are honored") {
    DataTable t = month_table();
    ChartSpec c = bar_spec();
    c.encodings[Channel::Y].scale_domain = {{Value(0.0), Value(100.0)}};
    auto scales = infer_scales(c, t);
    CHECK(scales.at(Channel::Y).d0 == 0);
    CHECK(scales.at(Channel::Y).d1 == 100);

    c.encodings[Channel::X].scale_domain = {{Value("mar"), Value("jan")}};
    auto s2 = infer_scales(c, t);
    CHECK(s2.at(Channel::X).categories == std::vector<std::string>{"mar", "jan"});
}

TEST_CASE("validate_encodings errors") {
    DataTable t = month_table();
    ChartSpec c = bar_spec();
    c.encodings[Channel::Y].field = "nope";
    try {
        validate_encodings(c, t, "chart");
        FAIL("expected UnknownField");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "UnknownField");
        CHECK(e.diagnostic().path == "chart/encodings/y/field");
    }

    ChartSpec c2 = bar_spec();
    c2.encodings[Channel::Y].field = "m";  // quantitative on a string column
    try {
        validate_encodings(c2, t, "chart");
        FAIL("expected TypeError");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "TypeError");
    }
}

TEST_CASE("constant domain is padded") {
    using V = Value;
    DataTable t({{"m", ColumnType::String}, {"v", ColumnType::Number}},
                {{V("only"), V(5.0)}});
    ChartSpec c = bar_spec();
    c.mark = MarkType::Point;
    auto scales = infer_scales(c, t);
    CHECK(scales.at(Channel::Y).d0 < 5.0);
    CHECK(scales.at(Channel::Y).d1 > 5.0);
}

TEST_CASE("empty table without explicit domain is EmptyDomain") {
    DataTable t({{"m", ColumnType::String}, {"v", ColumnType::Number}}, {});
    ChartSpec c = bar_spec();
    try {
        infer_scales(c, t);
        FAIL("expected EmptyDomain");
    } catch (const SpecError& e) {
        CHECK(e.diagnostic().code == "EmptyDomain");
    }
}
