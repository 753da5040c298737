// expr.hpp - Small expression language over table rows.
//
// Used by data-point targets ("datum.t > 30", "datum.t == max(t)"), axis
// range filters ("datum.value >= 2"), and indicator levels ("mean(y)").
//
// Grammar, loosest-binding first:
//   or      := and ("||" and)*
//   and     := cmp ("&&" cmp)*
//   cmp     := add (("<"|"<="|">"|">="|"=="|"!=") add)?
//   add     := mul (("+"|"-") mul)*
//   mul     := unary (("*"|"/") unary)*
//   unary   := ("!"|"-") unary | primary
//   primary := number | string | "datum" "." ident | agg "(" ident ")" | "(" or ")"
//   agg     := "min" | "max" | "mean" | "sum" | "count"
//
// Expressions are type-checked against a table schema at parse time;
// comparisons require matching operand types (number/number, string/string,
// temporal/temporal). A string literal compared against a temporal operand
// is coerced to a temporal constant when it parses as ISO-8601.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "anno/data_table.hpp"
#include "anno/diagnostics.hpp"

namespace anno {

enum class ExprType { Number, String, Temporal, Bool };
const char* expr_type_name(ExprType t);

enum class AggKind { Min, Max, Mean, Sum, Count };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { NumberLit, StringLit, TemporalLit, Field, Unary, Binary, Aggregate };

    Kind kind;
    ExprType type = ExprType::Number;  // filled during type checking

    double number = 0.0;          // NumberLit
    std::string text;             // StringLit (also keeps the source for TemporalLit)
    std::int64_t temporal_ms = 0; // TemporalLit
    std::string field;            // Field / Aggregate
    std::string op;               // Unary ("!", "-") / Binary operator
    AggKind agg = AggKind::Count; // Aggregate
    ExprPtr lhs;
    ExprPtr rhs;
};

// Parses and type-checks `src` against the table's column types.
// Errors: SyntaxError (with character position), TypeError, UnknownField.
// `doc_path` prefixes diagnostic paths for errors raised here.
ExprPtr parse_expr(std::string_view src, const DataTable& schema, const std::string& doc_path = "");

// Evaluates against one row. Aggregates are computed over the whole table,
// skipping nulls; an aggregate over no values yields null, and any operator
// consuming a null raises NullOperand. Division by zero raises DivideByZero.
Value eval_row(const Expr& e, const DataTable& table, std::size_t row);

// Row indices (ascending) where the boolean expression holds. Rows that
// raise NullOperand are excluded with a warning. TypeError if `e` is not
// boolean-typed.
std::vector<std::size_t> select_rows(const Expr& e, const DataTable& table, DiagnosticSink& sink);

// Canonical text form; parse(to_string(e)) is structurally identical to e.
std::string to_string(const Expr& e);

// Structural equality (ignores source formatting).
bool expr_equal(const Expr& a, const Expr& b);

}  // namespace anno
