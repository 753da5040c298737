// text_metrics.cpp - embedded Helvetica advance widths (AFM units/1000),
// ASCII 32..126.
#include "anno/text_metrics.hpp"

namespace anno {

// Width in 1/1000 em for chars 32..126; advance at size 10 is value/100.
static const int kWidths[95] = {
    278,  // ' '
    278,  // '!'
    355,  // '"'
    556,  // '#'
    556,  // '$'
    889,  // '%'
    667,  // '&'
    191,  // '\''
    333,  // '('
    333,  // ')'
    389,  // '*'
    584,  // '+'
    278,  // ','
    333,  // '-'
    278,  // '.'
    278,  // '/'
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556,  // '0'..'9'
    278,  // ':'
    278,  // ';'
    584,  // '<'
    584,  // '='
    584,  // '>'
    556,  // '?'
    1015,  // '@'
    667,  // 'A'
    667,  // 'B'
    722,  // 'C'
    722,  // 'D'
    667,  // 'E'
    611,  // 'F'
    778,  // 'G'
    722,  // 'H'
    278,  // 'I'
    500,  // 'J'
    667,  // 'K'
    556,  // 'L'
    833,  // 'M'
    722,  // 'N'
    778,  // 'O'
    667,  // 'P'
    778,  // 'Q'
    722,  // 'R'
    667,  // 'S'
    611,  // 'T'
    722,  // 'U'
    667,  // 'V'
    944,  // 'W'
    667,  // 'X'
    667,  // 'Y'
    611,  // 'Z'
    278,  // '['
    278,  // '\\'
    278,  // ']'
    469,  // '^'
    556,  // '_'
    333,  // '`'
    556,  // 'a'
    556,  // 'b'
    500,  // 'c'
    556,  // 'd'
    556,  // 'e'
    278,  // 'f'
    556,  // 'g'
    556,  // 'h'
    222,  // 'i'
    222,  // 'j'
    500,  // 'k'
    222,  // 'l'
    833,  // 'm'
    556,  // 'n'
    556,  // 'o'
    556,  // 'p'
    556,  // 'q'
    333,  // 'r'
    500,  // 's'
    278,  // 't'
    556,  // 'u'
    500,  // 'v'
    722,  // 'w'
    500,  // 'x'
    500,  // 'y'
    500,  // 'z'
    334,  // '{'
    260,  // '|'
    334,  // '}'
    584,  // '~'
};

double char_advance(char c, double size) {
    unsigned char u = static_cast<unsigned char>(c);
    double at10 = (u >= 32 && u <= 126) ? kWidths[u - 32] / 100.0 : 6.0;
    return at10 * size / 10.0;
}

TextSize measure_text(const std::string& s, double size) {
    TextSize out;
    for (char c : s) out.w += char_advance(c, size);
    out.h = kLineHeightFactor * size;
    return out;
}

}  // namespace anno
