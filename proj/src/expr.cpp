#include "anno/expr.hpp"

#include <cassert>
#include <charconv>
#include <cmath>

namespace anno {

const char* expr_type_name(ExprType t) {
    switch (t) {
        case ExprType::Number: return "number";
        case ExprType::String: return "string";
        case ExprType::Temporal: return "temporal";
        case ExprType::Bool: return "boolean";
    }
    return "?";
}

namespace {

struct Token {
    enum class Kind { Number, String, Ident, Op, End };
    Kind kind;
    std::string text;
    double number = 0.0;
    std::size_t pos = 0;
};

class Lexer {
public:
    Lexer(std::string_view src, const std::string& doc_path) : src_(src), doc_path_(doc_path) {
        advance();
    }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void error(std::size_t pos, const std::string& msg) const {
        fail("SyntaxError", doc_path_, msg + " at position " + std::to_string(pos));
    }

private:
    void advance() {
        while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\n' ||
                                    src_[i_] == '\r')) {
            ++i_;
        }
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_ = {Token::Kind::End, "", 0.0, i_};
            return;
        }
        char c = src_[i_];
        if ((c >= '0' && c <= '9') || (c == '.' && i_ + 1 < src_.size() && isdigit(src_[i_ + 1]))) {
            lex_number();
        } else if (c == '\'' || c == '"') {
            lex_string(c);
        } else if (isalpha(c) || c == '_') {
            std::size_t start = i_;
            while (i_ < src_.size() && (isalnum(src_[i_]) || src_[i_] == '_')) ++i_;
            tok_ = {Token::Kind::Ident, std::string(src_.substr(start, i_ - start)), 0.0, start};
        } else {
            lex_operator();
        }
    }

    static bool isdigit(char c) { return c >= '0' && c <= '9'; }
    static bool isalpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
    static bool isalnum(char c) { return isdigit(c) || isalpha(c); }

    void lex_number() {
        std::size_t start = i_;
        while (i_ < src_.size() && (isdigit(src_[i_]) || src_[i_] == '.')) ++i_;
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
            if (j < src_.size() && isdigit(src_[j])) {
                i_ = j;
                while (i_ < src_.size() && isdigit(src_[i_])) ++i_;
            }
        }
        std::string text(src_.substr(start, i_ - start));
        double v = 0.0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
            error(start, "invalid number '" + text + "'");
        }
        tok_ = {Token::Kind::Number, text, v, start};
    }

    void lex_string(char quote) {
        std::size_t start = i_++;
        std::string out;
        while (i_ < src_.size() && src_[i_] != quote) {
            if (src_[i_] == '\\' && i_ + 1 < src_.size()) {
                out += src_[i_ + 1];
                i_ += 2;
            } else {
                out += src_[i_++];
            }
        }
        if (i_ >= src_.size()) error(start, "unterminated string literal");
        ++i_;
        tok_ = {Token::Kind::String, out, 0.0, start};
    }

    void lex_operator() {
        static constexpr const char* two[] = {"<=", ">=", "==", "!=", "&&", "||"};
        for (const char* op : two) {
            if (src_.substr(i_, 2) == op) {
                tok_ = {Token::Kind::Op, op, 0.0, i_};
                i_ += 2;
                return;
            }
        }
        char c = src_[i_];
        if (std::string_view("<>!+-*/().").find(c) == std::string_view::npos) {
            error(i_, std::string("unexpected character '") + c + "'");
        }
        tok_ = {Token::Kind::Op, std::string(1, c), 0.0, i_};
        ++i_;
    }

    std::string_view src_;
    std::string doc_path_;
    std::size_t i_ = 0;
    Token tok_;
};

bool is_comparison(const std::string& op) {
    return op == "<" || op == "<=" || op == ">" || op == ">=" || op == "==" || op == "!=";
}

class Parser {
public:
    Parser(std::string_view src, const DataTable& schema, const std::string& doc_path)
        : lex_(src, doc_path), schema_(schema), doc_path_(doc_path) {}

    ExprPtr parse() {
        ExprPtr e = parse_or();
        if (lex_.peek().kind != Token::Kind::End) {
            lex_.error(lex_.peek().pos, "unexpected trailing input");
        }
        return e;
    }

private:
    [[noreturn]] void type_error(const std::string& msg) const {
        fail("TypeError", doc_path_, msg);
    }

    ExprPtr make_binary(std::string op, ExprPtr lhs, ExprPtr rhs) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Binary;
        e->op = std::move(op);

        if (is_comparison(e->op)) {
            coerce_temporal(lhs, rhs);
            coerce_temporal(rhs, lhs);
            if (lhs->type != rhs->type || lhs->type == ExprType::Bool) {
                type_error("cannot compare " + std::string(expr_type_name(lhs->type)) + " with " +
                           expr_type_name(rhs->type));
            }
            e->type = ExprType::Bool;
        } else if (e->op == "&&" || e->op == "||") {
            if (lhs->type != ExprType::Bool || rhs->type != ExprType::Bool) {
                type_error("'" + e->op + "' requires boolean operands");
            }
            e->type = ExprType::Bool;
        } else {  // + - * /
            if (lhs->type != ExprType::Number || rhs->type != ExprType::Number) {
                type_error("'" + e->op + "' requires number operands");
            }
            e->type = ExprType::Number;
        }
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        return e;
    }

    // String literal next to a temporal operand becomes a temporal constant.
    void coerce_temporal(ExprPtr& lit, const ExprPtr& other) const {
        if (other->type != ExprType::Temporal) return;
        if (lit->kind != Expr::Kind::StringLit) return;
        auto ms = parse_iso8601(lit->text);
        if (!ms) {
            fail("TypeError", doc_path_,
                 "'" + lit->text + "' is not an ISO-8601 timestamp (temporal comparison)");
        }
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::TemporalLit;
        e->type = ExprType::Temporal;
        e->text = lit->text;
        e->temporal_ms = *ms;
        lit = e;
    }

    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (lex_.peek().kind == Token::Kind::Op && lex_.peek().text == "||") {
            lex_.take();
            e = make_binary("||", e, parse_and());
        }
        return e;
    }

    ExprPtr parse_and() {
        ExprPtr e = parse_cmp();
        while (lex_.peek().kind == Token::Kind::Op && lex_.peek().text == "&&") {
            lex_.take();
            e = make_binary("&&", e, parse_cmp());
        }
        return e;
    }

    ExprPtr parse_cmp() {
        ExprPtr e = parse_add();
        if (lex_.peek().kind == Token::Kind::Op && is_comparison(lex_.peek().text)) {
            std::string op = lex_.take().text;
            e = make_binary(op, e, parse_add());
        }
        return e;
    }

    ExprPtr parse_add() {
        ExprPtr e = parse_mul();
        while (lex_.peek().kind == Token::Kind::Op &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            std::string op = lex_.take().text;
            e = make_binary(op, e, parse_mul());
        }
        return e;
    }

    ExprPtr parse_mul() {
        ExprPtr e = parse_unary();
        while (lex_.peek().kind == Token::Kind::Op &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            std::string op = lex_.take().text;
            e = make_binary(op, e, parse_unary());
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (lex_.peek().kind == Token::Kind::Op &&
            (lex_.peek().text == "!" || lex_.peek().text == "-")) {
            Token t = lex_.take();
            ExprPtr operand = parse_unary();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Unary;
            e->op = t.text;
            if (t.text == "!") {
                if (operand->type != ExprType::Bool) type_error("'!' requires a boolean operand");
                e->type = ExprType::Bool;
            } else {
                if (operand->type != ExprType::Number) type_error("unary '-' requires a number");
                e->type = ExprType::Number;
            }
            e->lhs = std::move(operand);
            return e;
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        Token t = lex_.peek();
        if (t.kind == Token::Kind::Number) {
            lex_.take();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::NumberLit;
            e->type = ExprType::Number;
            e->number = t.number;
            return e;
        }
        if (t.kind == Token::Kind::String) {
            lex_.take();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::StringLit;
            e->type = ExprType::String;
            e->text = t.text;
            return e;
        }
        if (t.kind == Token::Kind::Op && t.text == "(") {
            lex_.take();
            ExprPtr e = parse_or();
            expect_op(")");
            return e;
        }
        if (t.kind == Token::Kind::Ident) {
            if (t.text == "datum") return parse_field();
            if (t.text == "min" || t.text == "max" || t.text == "mean" || t.text == "sum" ||
                t.text == "count") {
                return parse_aggregate();
            }
            lex_.error(t.pos, "unknown identifier '" + t.text + "'");
        }
        lex_.error(t.pos, "expected a value");
    }

    ExprPtr parse_field() {
        lex_.take();  // datum
        expect_op(".");
        Token name = lex_.take();
        if (name.kind != Token::Kind::Ident) lex_.error(name.pos, "expected field name after 'datum.'");
        auto type = schema_.column_type(name.text);
        if (!type) fail("UnknownField", doc_path_, "unknown field '" + name.text + "'");
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Field;
        e->field = name.text;
        e->type = column_expr_type(*type);
        return e;
    }

    ExprPtr parse_aggregate() {
        Token fn = lex_.take();
        expect_op("(");
        Token name = lex_.take();
        if (name.kind != Token::Kind::Ident) lex_.error(name.pos, "expected field name");
        expect_op(")");
        auto col_type = schema_.column_type(name.text);
        if (!col_type) fail("UnknownField", doc_path_, "unknown field '" + name.text + "'");

        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Aggregate;
        e->field = name.text;
        if (fn.text == "min") e->agg = AggKind::Min;
        else if (fn.text == "max") e->agg = AggKind::Max;
        else if (fn.text == "mean") e->agg = AggKind::Mean;
        else if (fn.text == "sum") e->agg = AggKind::Sum;
        else e->agg = AggKind::Count;

        switch (e->agg) {
            case AggKind::Min:
            case AggKind::Max:
                if (*col_type == ColumnType::String) {
                    type_error(fn.text + "() requires a number or temporal field");
                }
                e->type = column_expr_type(*col_type);
                break;
            case AggKind::Mean:
            case AggKind::Sum:
                if (*col_type != ColumnType::Number) {
                    type_error(fn.text + "() requires a number field");
                }
                e->type = ExprType::Number;
                break;
            case AggKind::Count:
                e->type = ExprType::Number;
                break;
        }
        return e;
    }

    static ExprType column_expr_type(ColumnType t) {
        switch (t) {
            case ColumnType::Number: return ExprType::Number;
            case ColumnType::String: return ExprType::String;
            case ColumnType::Temporal: return ExprType::Temporal;
        }
        return ExprType::Number;
    }

    void expect_op(const std::string& op) {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Op || t.text != op) {
            lex_.error(t.pos, "expected '" + op + "'");
        }
    }

    Lexer lex_;
    const DataTable& schema_;
    std::string doc_path_;
};

// Evaluation ------------------------------------------------------------

struct NullOperandSignal {};

Value eval_aggregate(const Expr& e, const DataTable& table) {
    auto col = table.column_index(e.field);
    assert(col.has_value());

    if (e.agg == AggKind::Count) {
        double n = 0;
        for (std::size_t r = 0; r < table.row_count(); ++r) {
            if (!table.at(r, *col).is_null()) n += 1;
        }
        return Value(n);
    }
    if (e.agg == AggKind::Sum) {
        double s = 0;
        for (std::size_t r = 0; r < table.row_count(); ++r) {
            const Value& v = table.at(r, *col);
            if (!v.is_null()) s += v.as_number();
        }
        return Value(s);
    }
    if (e.agg == AggKind::Mean) {
        double s = 0;
        std::size_t n = 0;
        for (std::size_t r = 0; r < table.row_count(); ++r) {
            const Value& v = table.at(r, *col);
            if (!v.is_null()) {
                s += v.as_number();
                ++n;
            }
        }
        return n == 0 ? Value::null() : Value(s / static_cast<double>(n));
    }

    // min / max over number or temporal
    Value best;
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        const Value& v = table.at(r, *col);
        if (v.is_null()) continue;
        if (best.is_null()) {
            best = v;
            continue;
        }
        bool less = v.is_number() ? v.as_number() < best.as_number()
                                  : v.as_temporal() < best.as_temporal();
        if ((e.agg == AggKind::Min && less) || (e.agg == AggKind::Max && !less && !(v == best))) {
            best = v;
        }
    }
    return best;
}

// Booleans ride in Value as numbers 0/1; ExprType keeps them distinct.
Value eval(const Expr& e, const DataTable& table, std::size_t row) {
    switch (e.kind) {
        case Expr::Kind::NumberLit:
            return Value(e.number);
        case Expr::Kind::StringLit:
            return Value(e.text);
        case Expr::Kind::TemporalLit:
            return Value(Temporal{e.temporal_ms});
        case Expr::Kind::Field: {
            auto col = table.column_index(e.field);
            if (!col) fail("UnknownField", "", "unknown field '" + e.field + "'");
            return table.at(row, *col);
        }
        case Expr::Kind::Aggregate:
            return eval_aggregate(e, table);
        case Expr::Kind::Unary: {
            Value v = eval(*e.lhs, table, row);
            if (v.is_null()) throw NullOperandSignal{};
            if (e.op == "!") return Value(v.as_number() != 0.0 ? 0.0 : 1.0);
            return Value(-v.as_number());
        }
        case Expr::Kind::Binary:
            break;
    }

    const std::string& op = e.op;
    if (op == "&&" || op == "||") {
        // Short-circuit; a null on the deciding side still raises.
        Value l = eval(*e.lhs, table, row);
        if (l.is_null()) throw NullOperandSignal{};
        bool lb = l.as_number() != 0.0;
        if (op == "&&" && !lb) return Value(0.0);
        if (op == "||" && lb) return Value(1.0);
        Value r = eval(*e.rhs, table, row);
        if (r.is_null()) throw NullOperandSignal{};
        return Value(r.as_number() != 0.0 ? 1.0 : 0.0);
    }

    Value l = eval(*e.lhs, table, row);
    Value r = eval(*e.rhs, table, row);
    if (l.is_null() || r.is_null()) throw NullOperandSignal{};

    if (is_comparison(op)) {
        int cmp;
        if (l.is_string()) {
            cmp = l.as_string().compare(r.as_string());
            cmp = cmp < 0 ? -1 : cmp > 0 ? 1 : 0;
        } else {
            double a = l.is_temporal() ? static_cast<double>(l.as_temporal().ms) : l.as_number();
            double b = r.is_temporal() ? static_cast<double>(r.as_temporal().ms) : r.as_number();
            cmp = a < b ? -1 : a > b ? 1 : 0;
        }
        bool res = false;
        if (op == "<") res = cmp < 0;
        else if (op == "<=") res = cmp <= 0;
        else if (op == ">") res = cmp > 0;
        else if (op == ">=") res = cmp >= 0;
        else if (op == "==") res = cmp == 0;
        else res = cmp != 0;
        return Value(res ? 1.0 : 0.0);
    }

    double a = l.as_number();
    double b = r.as_number();
    if (op == "+") return Value(a + b);
    if (op == "-") return Value(a - b);
    if (op == "*") return Value(a * b);
    if (b == 0.0) fail("DivideByZero", "", "division by zero in expression");
    return Value(a / b);
}

int precedence_of(const Expr& e) {
    if (e.kind == Expr::Kind::Unary) return 5;
    if (e.kind != Expr::Kind::Binary) return 6;
    if (e.op == "*" || e.op == "/") return 4;
    if (e.op == "+" || e.op == "-") return 3;
    if (is_comparison(e.op)) return 2;
    if (e.op == "&&") return 1;
    return 0;  // ||
}

void print(const Expr& e, std::string& out, int parent_prec, bool rhs_side) {
    int prec = precedence_of(e);
    bool parens = prec < parent_prec || (prec == parent_prec && rhs_side && prec <= 4);
    if (parens) out += '(';
    switch (e.kind) {
        case Expr::Kind::NumberLit:
            out += format_number(e.number);
            break;
        case Expr::Kind::StringLit:
        case Expr::Kind::TemporalLit: {
            out += '\'';
            for (char c : e.text) {
                if (c == '\'' || c == '\\') out += '\\';
                out += c;
            }
            out += '\'';
            break;
        }
        case Expr::Kind::Field:
            out += "datum." + e.field;
            break;
        case Expr::Kind::Aggregate: {
            static constexpr const char* names[] = {"min", "max", "mean", "sum", "count"};
            out += names[static_cast<int>(e.agg)];
            out += '(' + e.field + ')';
            break;
        }
        case Expr::Kind::Unary:
            out += e.op;
            print(*e.lhs, out, prec, false);
            break;
        case Expr::Kind::Binary:
            print(*e.lhs, out, prec, false);
            out += ' ' + e.op + ' ';
            print(*e.rhs, out, prec, true);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

ExprPtr parse_expr(std::string_view src, const DataTable& schema, const std::string& doc_path) {
    if (src.empty()) fail("SyntaxError", doc_path, "empty expression");
    return Parser(src, schema, doc_path).parse();
}

Value eval_row(const Expr& e, const DataTable& table, std::size_t row) {
    try {
        return eval(e, table, row);
    } catch (const NullOperandSignal&) {
        fail("NullOperand", "", "null value in expression at row " + std::to_string(row));
    }
}

std::vector<std::size_t> select_rows(const Expr& e, const DataTable& table, DiagnosticSink& sink) {
    if (e.type != ExprType::Bool) {
        fail("TypeError", "", "selection expression must be boolean, got " +
                                  std::string(expr_type_name(e.type)));
    }
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        try {
            Value v = eval(e, table, r);
            if (v.is_null()) throw NullOperandSignal{};
            if (v.as_number() != 0.0) out.push_back(r);
        } catch (const NullOperandSignal&) {
            sink.warn("NullOperand", "",
                      "row " + std::to_string(r) + " excluded: null value in expression");
        }
    }
    return out;
}

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out, 0, false);
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.type != b.type) return false;
    switch (a.kind) {
        case Expr::Kind::NumberLit: return a.number == b.number;
        case Expr::Kind::StringLit: return a.text == b.text;
        case Expr::Kind::TemporalLit: return a.temporal_ms == b.temporal_ms;
        case Expr::Kind::Field: return a.field == b.field;
        case Expr::Kind::Aggregate: return a.agg == b.agg && a.field == b.field;
        case Expr::Kind::Unary: return a.op == b.op && expr_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Binary:
            return a.op == b.op && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
    return false;
}

}  // namespace anno
