// geometry.hpp - 2D points and axis-aligned rectangles used across the pipeline.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace anno {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }

    double length() const { return std::sqrt(x * x + y * y); }
    Vec2 normalized() const {
        double m = length();
        return m > 0.0 ? Vec2{x / m, y / m} : Vec2{0.0, 0.0};
    }
    // 90-degree counterclockwise rotation in y-down pixel space.
    Vec2 perp() const { return {-y, x}; }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).length(); }

// Axis-aligned rectangle, origin top-left, y grows downward (SVG convention).
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const { return x + w; }
    double bottom() const { return y + h; }
    Vec2 center() const { return {x + w / 2.0, y + h / 2.0}; }

    bool contains(const Vec2& p) const {
        return p.x >= x && p.x <= right() && p.y >= y && p.y <= bottom();
    }
    bool contains(const Rect& o) const {
        return o.x >= x && o.right() <= right() && o.y >= y && o.bottom() <= bottom();
    }
    bool intersects(const Rect& o) const {
        return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
    }

    // Area of geometric overlap; 0 when disjoint.
    double overlap_area(const Rect& o) const {
        double ox = std::min(right(), o.right()) - std::max(x, o.x);
        double oy = std::min(bottom(), o.bottom()) - std::max(y, o.y);
        return (ox > 0 && oy > 0) ? ox * oy : 0.0;
    }

    Rect union_with(const Rect& o) const {
        double nx = std::min(x, o.x);
        double ny = std::min(y, o.y);
        return {nx, ny, std::max(right(), o.right()) - nx, std::max(bottom(), o.bottom()) - ny};
    }

    Rect inflated(double pad) const { return {x - pad, y - pad, w + 2 * pad, h + 2 * pad}; }

    // One of the nine anchor points: hf/vf in {0, 0.5, 1} select left/mid/right
    // and top/mid/bottom.
    Vec2 point_at(double hf, double vf) const { return {x + w * hf, y + h * vf}; }
};

inline Rect rect_from_points(const Vec2& a, const Vec2& b) {
    double x0 = std::min(a.x, b.x), y0 = std::min(a.y, b.y);
    return {x0, y0, std::max(a.x, b.x) - x0, std::max(a.y, b.y) - y0};
}

inline Rect rect_from_points(const std::vector<Vec2>& pts) {
    Rect r = rect_from_points(pts.front(), pts.front());
    for (const Vec2& p : pts) r = r.union_with(rect_from_points(p, p));
    return r;
}

}  // namespace anno
