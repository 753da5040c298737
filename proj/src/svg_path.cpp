// svg_path.cpp - tokenizing SVG path data with command-aware argument
// counts, arc flag handling, and relative->absolute normalization.
#include "anno/svg_path.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "anno/diagnostics.hpp"
#include "anno/value.hpp"

namespace anno {

namespace {

struct PathLexer {
    const std::string& src;
    const std::string& doc_path;
    std::size_t pos = 0;

    void skip_separators() {
        while (pos < src.size() && (std::isspace(static_cast<unsigned char>(src[pos])) || src[pos] == ','))
            ++pos;
    }

    bool done() {
        skip_separators();
        return pos >= src.size();
    }

    [[noreturn]] void err(const std::string& what) {
        fail("SchemaError", doc_path,
             "invalid svg path at offset " + std::to_string(pos) + ": " + what);
    }

    char peek() {
        skip_separators();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool at_number() {
        char c = peek();
        return c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
    }

    double number() {
        skip_separators();
        // Accepts forms like -1.5e-3 and .5; stops before the next token.
        std::size_t start = pos;
        if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
        bool digits = false;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            ++pos;
            digits = true;
        }
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                ++pos;
                digits = true;
            }
        }
        if (!digits) err("expected a number");
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            bool exp_digits = false;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                ++pos;
                exp_digits = true;
            }
            if (!exp_digits) pos = mark;  // the 'e' belonged to something else
        }
        double out = 0;
        auto res = std::from_chars(src.data() + start, src.data() + pos, out);
        if (res.ec != std::errc() || !std::isfinite(out)) err("unparseable number");
        return out;
    }

    // Arc flags are single 0/1 characters and may be packed ("011").
    double flag() {
        skip_separators();
        if (pos >= src.size() || (src[pos] != '0' && src[pos] != '1')) err("expected a 0/1 flag");
        return src[pos++] == '1' ? 1.0 : 0.0;
    }
};

int arg_count(char op) {
    switch (op) {
    case 'M': case 'L': case 'T': return 2;
    case 'H': case 'V': return 1;
    case 'C': return 6;
    case 'S': case 'Q': return 4;
    case 'A': return 7;
    case 'Z': return 0;
    }
    return -1;
}

}  // namespace

SvgPath parse_svg_path(const std::string& d, const std::string& doc_path) {
    PathLexer lex{d, doc_path};
    SvgPath out;
    Vec2 cur{0, 0};       // current point
    Vec2 start{0, 0};     // subpath start (for Z)
    Vec2 last_cubic{0, 0};
    Vec2 last_quad{0, 0};
    char prev_op = '\0';  // normalized previous op for S/T reflection
    bool seen_move = false;

    char cmd = '\0';
    while (!lex.done()) {
        char c = lex.peek();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            cmd = c;
            ++lex.pos;
        } else if (cmd == '\0') {
            lex.err("path must start with a command letter");
        } else if (cmd == 'M' || cmd == 'm') {
            cmd = cmd == 'M' ? 'L' : 'l';  // implicit lineto after moveto
        } else if (cmd == 'Z' || cmd == 'z') {
            lex.err("unexpected number after Z");
        }
        bool rel = std::islower(static_cast<unsigned char>(cmd));
        char up = static_cast<char>(std::toupper(static_cast<unsigned char>(cmd)));
        int n = arg_count(up);
        if (n < 0) lex.err(std::string("unknown command '") + cmd + "'");
        if (!seen_move && up != 'M') lex.err("path must start with a moveto");

        std::vector<double> a;
        for (int i = 0; i < n; ++i)
            a.push_back(up == 'A' && (i == 3 || i == 4) ? lex.flag() : lex.number());

        PathCmd pc;
        switch (up) {
        case 'M':
            // A leading relative moveto is absolute by definition.
            cur = rel && seen_move ? cur + Vec2{a[0], a[1]} : Vec2{a[0], a[1]};
            start = cur;
            seen_move = true;
            pc = {'M', {cur.x, cur.y}};
            break;
        case 'L':
            cur = rel ? cur + Vec2{a[0], a[1]} : Vec2{a[0], a[1]};
            pc = {'L', {cur.x, cur.y}};
            break;
        case 'H':
            cur = Vec2{rel ? cur.x + a[0] : a[0], cur.y};
            pc = {'L', {cur.x, cur.y}};
            break;
        case 'V':
            cur = Vec2{cur.x, rel ? cur.y + a[0] : a[0]};
            pc = {'L', {cur.x, cur.y}};
            break;
        case 'C': {
            Vec2 c1 = rel ? cur + Vec2{a[0], a[1]} : Vec2{a[0], a[1]};
            Vec2 c2 = rel ? cur + Vec2{a[2], a[3]} : Vec2{a[2], a[3]};
            Vec2 end = rel ? cur + Vec2{a[4], a[5]} : Vec2{a[4], a[5]};
            pc = {'C', {c1.x, c1.y, c2.x, c2.y, end.x, end.y}};
            last_cubic = c2;
            cur = end;
            break;
        }
        case 'S': {
            Vec2 c1 = (prev_op == 'C') ? cur + (cur - last_cubic) : cur;
            Vec2 c2 = rel ? cur + Vec2{a[0], a[1]} : Vec2{a[0], a[1]};
            Vec2 end = rel ? cur + Vec2{a[2], a[3]} : Vec2{a[2], a[3]};
            pc = {'C', {c1.x, c1.y, c2.x, c2.y, end.x, end.y}};
            last_cubic = c2;
            cur = end;
            break;
        }
        case 'Q': {
            Vec2 c1 = rel ? cur + Vec2{a[0], a[1]} : Vec2{a[0], a[1]};
            Vec2 end = rel ? cur + Vec2{a[2], a[3]} : Vec2{a[2], a[3]};
            pc = {'Q', {c1.x, c1.y, end.x, end.y}};
            last_quad = c1;
            cur = end;
            break;
        }
        case 'T': {
            Vec2 c1 = (prev_op == 'Q') ? cur + (cur - last_quad) : cur;
            Vec2 end = rel ? cur + Vec2{a[0], a[1]} : Vec2{a[0], a[1]};
            pc = {'Q', {c1.x, c1.y, end.x, end.y}};
            last_quad = c1;
            cur = end;
            break;
        }
        case 'A': {
            Vec2 end = rel ? cur + Vec2{a[5], a[6]} : Vec2{a[5], a[6]};
            pc = {'A', {std::abs(a[0]), std::abs(a[1]), a[2], a[3], a[4], end.x, end.y}};
            cur = end;
            break;
        }
        case 'Z':
            cur = start;
            pc = {'Z', {}};
            break;
        }
        prev_op = pc.op;
        out.cmds.push_back(std::move(pc));
    }
    if (!seen_move) lex.err("empty path");
    return out;
}

Rect SvgPath::control_bbox() const {
    std::vector<Vec2> pts;
    Vec2 prev{0, 0};
    for (const PathCmd& c : cmds) {
        switch (c.op) {
        case 'M':
        case 'L':
            prev = Vec2{c.args[0], c.args[1]};
            pts.push_back(prev);
            break;
        case 'C':
            pts.push_back({c.args[0], c.args[1]});
            pts.push_back({c.args[2], c.args[3]});
            prev = Vec2{c.args[4], c.args[5]};
            pts.push_back(prev);
            break;
        case 'Q':
            pts.push_back({c.args[0], c.args[1]});
            prev = Vec2{c.args[2], c.args[3]};
            pts.push_back(prev);
            break;
        case 'A': {
            double r = std::max(c.args[0], c.args[1]);
            Vec2 end{c.args[5], c.args[6]};
            pts.push_back(prev + Vec2{r, r});
            pts.push_back(prev - Vec2{r, r});
            pts.push_back(end + Vec2{r, r});
            pts.push_back(end - Vec2{r, r});
            prev = end;
            break;
        }
        case 'Z':
            break;
        }
    }
    if (pts.empty()) return Rect{0, 0, 0, 0};
    return rect_from_points(pts);
}

SvgPath SvgPath::transformed(double scale, Vec2 translate) const {
    SvgPath out;
    out.cmds.reserve(cmds.size());
    for (const PathCmd& c : cmds) {
        PathCmd t = c;
        auto xy = [&](std::size_t i) {
            t.args[i] = c.args[i] * scale + translate.x;
            t.args[i + 1] = c.args[i + 1] * scale + translate.y;
        };
        switch (c.op) {
        case 'M':
        case 'L':
            xy(0);
            break;
        case 'C':
            xy(0);
            xy(2);
            xy(4);
            break;
        case 'Q':
            xy(0);
            xy(2);
            break;
        case 'A':
            t.args[0] = c.args[0] * scale;
            t.args[1] = c.args[1] * scale;
            xy(5);
            break;
        case 'Z':
            break;
        }
        out.cmds.push_back(std::move(t));
    }
    return out;
}

std::string SvgPath::to_string(int decimals) const {
    std::string out;
    for (const PathCmd& c : cmds) {
        if (!out.empty()) out += ' ';
        out += c.op;
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            bool is_flag = c.op == 'A' && (i == 3 || i == 4);
            out += ' ';
            out += is_flag ? (c.args[i] != 0 ? "1" : "0") : format_fixed(c.args[i], decimals);
        }
    }
    return out;
}

}  // namespace anno
