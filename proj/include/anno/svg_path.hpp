// svg_path.hpp - SVG path data parsing, bounds, and uniform placement
// transforms for custom enclosure shapes and connector path overrides.
#pragma once

#include <string>
#include <vector>

#include "anno/geometry.hpp"

namespace anno {

// Commands are normalized while parsing: relative forms become absolute,
// H/V become L, S/T gain their reflected control point (becoming C/Q).
// Remaining ops: M, L, C, Q, A, Z.
struct PathCmd {
    char op = 'M';
    std::vector<double> args;
};

struct SvgPath {
    std::vector<PathCmd> cmds;

    // Control-point bounds: exact for M/L, conservative hull for C/Q, and
    // endpoints inflated by max(rx, ry) for arcs. Deterministic, never
    // smaller than the drawn ink for line segments.
    Rect control_bbox() const;

    // Uniform scale about the origin followed by a translation. Arc radii
    // scale with the shape; rotations and flags are preserved.
    SvgPath transformed(double scale, Vec2 translate) const;

    // Serializes with fixed-point coordinates.
    std::string to_string(int decimals) const;
};

// Parses path data; fails with SchemaError at `doc_path` on malformed input.
SvgPath parse_svg_path(const std::string& d, const std::string& doc_path);

}  // namespace anno
