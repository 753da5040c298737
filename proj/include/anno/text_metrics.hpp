// text_metrics.hpp - Deterministic text measurement from an embedded
// advance-width table (no font queries, so output is identical everywhere).
#pragma once

#include <string>

namespace anno {

struct TextSize {
    double w = 0;
    double h = 0;
};

// Line height factor and the baseline offset from the bbox top, both as
// fractions of the font size.
inline constexpr double kLineHeightFactor = 1.2;
inline constexpr double kBaselineFactor = 0.9;

// Advance of one character at the given font size. Characters outside
// ASCII 32..126 use a default advance of 6 at size 10.
double char_advance(char c, double size);

// Width = sum of advances, height = 1.2 * size (single line).
TextSize measure_text(const std::string& s, double size);

}  // namespace anno
