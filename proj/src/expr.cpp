#include "wardseq/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "wardseq/error.hpp"

namespace wardseq {

namespace {

struct FunctionInfo {
    std::string_view name;
    Op op;
    std::size_t arity;
};

constexpr std::array<FunctionInfo, 8> kFunctions{{
    {"sqrt", Op::Sqrt, 1},
    {"ln", Op::Ln, 1},
    {"log10", Op::Log10, 1},
    {"sin", Op::Sin, 1},
    {"cos", Op::Cos, 1},
    {"abs", Op::Abs, 1},
    {"floor", Op::Floor, 1},
    {"pow", Op::Pow, 2},
}};

ExprPtr make_node(Op op, std::vector<ExprPtr> args = {}, double value = 0.0) {
    auto node = std::make_shared<ExprNode>();
    node->op = op;
    node->value = value;
    node->args = std::move(args);
    return node;
}

bool is_minus_one(const ExprNode& n) {
    if (n.op == Op::Const) return n.value == -1.0;
    return n.op == Op::Neg && n.args[0]->op == Op::Const && n.args[0]->value == 1.0;
}

ExprPtr make_power(ExprPtr base, ExprPtr exponent) {
    if (is_minus_one(*base)) return make_node(Op::AltSign, {std::move(exponent)});
    return make_node(Op::Pow, {std::move(base), std::move(exponent)});
}

class Parser {
public:
    Parser(std::string_view text, std::string_view var, const Bindings& bindings)
        : text_(text), var_(var), bindings_(bindings) {}

    ExprPtr parse() {
        for (std::size_t i = 0; i < text_.size(); ++i) {
            if (static_cast<unsigned char>(text_[i]) > 127) throw ParseError("non-ASCII character", i);
        }
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    ExprPtr expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(Op::Add, {lhs, term()});
            } else if (accept('-')) {
                lhs = make_node(Op::Sub, {lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(Op::Mul, {lhs, unary()});
            } else if (accept('/')) {
                lhs = make_node(Op::Div, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary() {
        if (accept('-')) return make_node(Op::Neg, {unary()});
        return factor();
    }

    ExprPtr factor() {
        auto b = base();
        if (accept('^')) return make_power(std::move(b), unary());
        return b;
    }

    ExprPtr base() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                digits();
            } else {
                pos_ = save;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError("malformed number", start);
        return make_node(Op::Const, {}, v);
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == var_) return make_node(Op::Var);

        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            const FunctionInfo* info = nullptr;
            for (const auto& f : kFunctions) {
                if (f.name == name) info = &f;
            }
            if (info == nullptr) throw ParseError("unknown function '" + std::string(name) + "'", start);
            ++pos_;
            std::vector<ExprPtr> args{expr()};
            while (accept(',')) args.push_back(expr());
            expect(')');
            if (args.size() != info->arity) {
                throw ParseError("function '" + std::string(name) + "' expects " + std::to_string(info->arity) +
                                     " argument(s), got " + std::to_string(args.size()),
                                 start);
            }
            if (info->op == Op::Pow) return make_power(args[0], args[1]);
            return make_node(info->op, std::move(args));
        }
        if (auto it = bindings_.find(name); it != bindings_.end()) return make_node(Op::Const, {}, it->second);
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    std::string_view var_;
    const Bindings& bindings_;
    std::size_t pos_ = 0;
};

double eval_node(const ExprNode& node, double v) {
    switch (node.op) {
        case Op::Const: return node.value;
        case Op::Var: return v;
        case Op::Add: return eval_node(*node.args[0], v) + eval_node(*node.args[1], v);
        case Op::Sub: return eval_node(*node.args[0], v) - eval_node(*node.args[1], v);
        case Op::Mul: return eval_node(*node.args[0], v) * eval_node(*node.args[1], v);
        case Op::Div: return eval_node(*node.args[0], v) / eval_node(*node.args[1], v);
        case Op::Pow: return std::pow(eval_node(*node.args[0], v), eval_node(*node.args[1], v));
        case Op::Neg: return -eval_node(*node.args[0], v);
        case Op::AltSign: {
            const double e = eval_node(*node.args[0], v);
            if (e != std::floor(e) || !std::isfinite(e)) return std::numeric_limits<double>::quiet_NaN();
            return std::fmod(e, 2.0) == 0.0 ? 1.0 : -1.0;
        }
        case Op::Sqrt: return std::sqrt(eval_node(*node.args[0], v));
        case Op::Ln: return std::log(eval_node(*node.args[0], v));
        case Op::Log10: return std::log10(eval_node(*node.args[0], v));
        case Op::Sin: return std::sin(eval_node(*node.args[0], v));
        case Op::Cos: return std::cos(eval_node(*node.args[0], v));
        case Op::Abs: return std::fabs(eval_node(*node.args[0], v));
        case Op::Floor: return std::floor(eval_node(*node.args[0], v));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    // keep the printed form inside the grammar: no bare "inf", negative as unary minus
    if (v < 0) return "(-" + s.substr(1) + ")";
    return s;
}

std::string print_node(const ExprNode& node, const std::string& var) {
    auto p = [&](std::size_t i) { return print_node(*node.args[i], var); };
    auto binary = [&](const char* op) { return "(" + p(0) + " " + op + " " + p(1) + ")"; };
    auto call = [&](const char* fn) { return std::string(fn) + "(" + p(0) + ")"; };
    switch (node.op) {
        case Op::Const: return format_number(node.value);
        case Op::Var: return var;
        case Op::Add: return binary("+");
        case Op::Sub: return binary("-");
        case Op::Mul: return binary("*");
        case Op::Div: return binary("/");
        case Op::Pow: return "(" + p(0) + " ^ " + p(1) + ")";
        case Op::Neg: return "(-" + p(0) + ")";
        case Op::AltSign: return "((-1) ^ " + p(0) + ")";
        case Op::Sqrt: return call("sqrt");
        case Op::Ln: return call("ln");
        case Op::Log10: return call("log10");
        case Op::Sin: return call("sin");
        case Op::Cos: return call("cos");
        case Op::Abs: return call("abs");
        case Op::Floor: return call("floor");
    }
    return "?";
}

bool uses_var(const ExprNode& node) {
    if (node.op == Op::Var) return true;
    for (const auto& a : node.args) {
        if (uses_var(*a)) return true;
    }
    return false;
}

}  // namespace

double Expr::operator()(double v) const { return eval_node(*root_, v); }

std::string Expr::to_string() const { return print_node(*root_, var_); }

bool Expr::depends_on_variable() const { return uses_var(*root_); }

Expr parse_expr(std::string_view text, std::string_view var, const Bindings& bindings) {
    Parser parser(text, var, bindings);
    return Expr(parser.parse(), std::string(var));
}

}  // namespace wardseq
