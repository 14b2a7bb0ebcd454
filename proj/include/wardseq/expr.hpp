#pragma once

// Expression mini-language shared by user sequences (free variable `n`),
// index maps and functions (free variable `x`).
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | factor
//   factor := base ('^' unary)?
//   base   := number | var | ident '(' expr (',' expr)* ')' | ident | '(' expr ')'
//
// `^` binds tighter than unary minus and is right-associative, so `-n^2` is
// `-(n^2)` and `2^-n` is `2^(-n)`. A power whose base is the literal -1 is
// stored as an alternating-sign node and evaluated by parity.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace wardseq {

enum class Op {
    Const,
    Var,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    AltSign,  // (-1)^arg, arg must be integral
    Sqrt,
    Ln,
    Log10,
    Sin,
    Cos,
    Abs,
    Floor,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    Op op = Op::Const;
    double value = 0.0;  // Const only
    std::vector<ExprPtr> args;
};

/// Immutable parsed expression in one free variable.
class Expr {
public:
    Expr() = default;
    Expr(ExprPtr root, std::string var) : root_(std::move(root)), var_(std::move(var)) {}

    /// Raw IEEE evaluation; may return NaN or inf; callers decide what that means.
    double operator()(double v) const;

    const ExprNode& root() const { return *root_; }
    const std::string& variable() const { return var_; }
    bool valid() const { return root_ != nullptr; }

    /// Fully parenthesized text that parses back to an equivalent tree.
    std::string to_string() const;

    bool depends_on_variable() const;

private:
    ExprPtr root_;
    std::string var_ = "n";
};

using Bindings = std::map<std::string, double, std::less<>>;

/// Throws ParseError on syntax errors, unknown identifiers and arity mismatches.
Expr parse_expr(std::string_view text, std::string_view var = "n", const Bindings& bindings = {});

}  // namespace wardseq
