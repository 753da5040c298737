// expr_gen.hpp - Seeded generator of random tables and random well-typed
// expression source strings, used to fuzz the parser/evaluator against the
// naive reference interpreter.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "anno/data_table.hpp"

namespace testutil {

// Columns are fixed: two numbers, one string, one temporal; cells go null
// with small probability so NullOperand paths get exercised.
inline anno::DataTable random_table(std::mt19937& rng) {
    std::uniform_int_distribution<int> rows_d(1, 50);
    std::uniform_int_distribution<int> small(0, 9);
    std::uniform_real_distribution<double> num(-100.0, 100.0);
    std::uniform_int_distribution<int> pct(0, 99);
    static const char* words[] = {"ash", "birch", "cedar", "fir", "oak", "pine"};

    nlohmann::json rows = nlohmann::json::array();
    int n = rows_d(rng);
    for (int i = 0; i < n; ++i) {
        // row 0 is never null so every column's type is inferable
        bool nullable = i > 0;
        auto maybe_null = [&](nlohmann::json v) {
            return nullable && pct(rng) < 10 ? nlohmann::json() : v;
        };
        nlohmann::json r;
        r["u"] = maybe_null(num(rng));
        r["v"] = maybe_null(double(small(rng)));
        r["s"] = maybe_null(words[small(rng) % 6]);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "2024-0%d-1%dT0%d:00:00Z", 1 + small(rng) % 9,
                      small(rng), small(rng));
        r["t"] = maybe_null(buf);
        rows.push_back(std::move(r));
    }
    return anno::DataTable::from_json_values(rows, "data/values");
}

class ExprGen {
public:
    explicit ExprGen(std::mt19937& rng) : rng_(rng) {}

    // A boolean expression of nesting depth <= depth.
    std::string boolean(int depth) {
        switch (pick(depth > 0 ? 5 : 3)) {
        case 0: return comparison("u", "v");
        case 1: return string_comparison();
        case 2: return temporal_comparison();
        case 3: return "!(" + boolean(depth - 1) + ")";
        default: {
            const char* op = pick(2) ? " && " : " || ";
            return "(" + boolean(depth - 1) + ")" + op + "(" + boolean(depth - 1) + ")";
        }
        }
    }

    std::string number(int depth) {
        if (depth <= 0) return number_leaf();
        switch (pick(4)) {
        case 0: return number_leaf();
        case 1: return "-(" + number(depth - 1) + ")";
        case 2: {
            static const char* ops[] = {" + ", " - ", " * "};
            return "(" + number(depth - 1) + ")" + ops[pick(3)] + "(" + number(depth - 1) + ")";
        }
        default:
            // Divisions appear rarely and may hit zero; both evaluators
            // must then fail identically.
            return "(" + number(depth - 1) + ") / (" + number(depth - 1) + ")";
        }
    }

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    std::string number_leaf() {
        switch (pick(6)) {
        case 0: return std::to_string(pick(10));
        case 1: return std::to_string(pick(200) - 100) + "." + std::to_string(pick(100));
        case 2: return "datum.u";
        case 3: return "datum.v";
        case 4: {
            static const char* aggs[] = {"min", "max", "mean", "sum"};
            return std::string(aggs[pick(4)]) + (pick(2) ? "(u)" : "(v)");
        }
        default: return pick(2) ? "count(s)" : "count(t)";
        }
    }

    std::string comparison(const char* a, const char* b) {
        std::string lhs = pick(2) ? std::string("datum.") + a : number(1);
        std::string rhs = pick(2) ? std::string("datum.") + b : number(1);
        return lhs + cmp_op() + rhs;
    }

    std::string string_comparison() {
        static const char* words[] = {"ash", "birch", "cedar", "fir", "oak", "pine"};
        std::string rhs = pick(2) ? std::string("'") + words[pick(6)] + "'" : "datum.s";
        return "datum.s" + cmp_op() + rhs;
    }

    std::string temporal_comparison() {
        std::string rhs = pick(2) ? std::string("'2024-0") + std::to_string(1 + pick(9)) +
                                        "-15T00:00:00Z'"
                                  : (pick(2) ? "min(t)" : "max(t)");
        return "datum.t" + cmp_op() + rhs;
    }

    std::string cmp_op() {
        static const char* ops[] = {" < ", " <= ", " > ", " >= ", " == ", " != "};
        return ops[pick(6)];
    }

    std::mt19937& rng_;
};

}  // namespace testutil
