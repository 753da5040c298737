// xml_check.hpp - Minimal XML well-formedness scanner for the SVG output:
// balanced tags, quoted attributes, no stray '<' or unescaped '&'.
// Not a general XML parser; enough to catch broken emitter output.
#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace testutil {

inline bool xml_well_formed(const std::string& s, std::string* err = nullptr) {
    auto fail = [&](const std::string& m, std::size_t pos) {
        if (err) *err = m + " at byte " + std::to_string(pos);
        return false;
    };
    auto entity_ok = [&](std::size_t i) {
        static const char* ents[] = {"&amp;", "&lt;", "&gt;", "&quot;", "&apos;"};
        for (const char* e : ents)
            if (s.compare(i, std::char_traits<char>::length(e), e) == 0) return true;
        return false;
    };

    std::vector<std::string> stack;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '&') {
            if (!entity_ok(i)) return fail("unescaped '&'", i);
            ++i;
            continue;
        }
        if (c == '>') return fail("stray '>'", i);
        if (c != '<') {
            ++i;
            continue;
        }

        // prolog
        if (s.compare(i, 2, "<?") == 0) {
            std::size_t end = s.find("?>", i);
            if (end == std::string::npos) return fail("unterminated prolog", i);
            i = end + 2;
            continue;
        }
        bool closing = i + 1 < s.size() && s[i + 1] == '/';
        std::size_t j = i + (closing ? 2 : 1);
        std::size_t name_start = j;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-'))
            ++j;
        std::string name = s.substr(name_start, j - name_start);
        if (name.empty()) return fail("missing tag name", i);

        if (closing) {
            if (j >= s.size() || s[j] != '>') return fail("malformed closing tag", i);
            if (stack.empty() || stack.back() != name)
                return fail("mismatched closing tag </" + name + ">", i);
            stack.pop_back();
            i = j + 1;
            continue;
        }

        // attributes
        while (true) {
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            if (j >= s.size()) return fail("unterminated tag", i);
            if (s[j] == '>' || (s[j] == '/' && j + 1 < s.size() && s[j + 1] == '>')) break;
            std::size_t an = j;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-'))
                ++j;
            if (j == an || j >= s.size() || s[j] != '=')
                return fail("malformed attribute", an);
            ++j;
            if (j >= s.size() || s[j] != '"') return fail("attribute value not quoted", j);
            ++j;
            while (j < s.size() && s[j] != '"') {
                if (s[j] == '<') return fail("'<' inside attribute value", j);
                if (s[j] == '&' && !entity_ok(j)) return fail("unescaped '&' in attribute", j);
                ++j;
            }
            if (j >= s.size()) return fail("unterminated attribute value", i);
            ++j;
        }
        if (s[j] == '/') {
            i = j + 2;
            continue;  // self-closing
        }
        stack.push_back(name);
        i = j + 1;
    }
    if (!stack.empty()) return fail("unclosed tag <" + stack.back() + ">", s.size());
    return true;
}

}  // namespace testutil
