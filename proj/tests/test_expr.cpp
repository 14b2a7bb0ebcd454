#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "wardseq/error.hpp"
#include "wardseq/expr.hpp"

using namespace wardseq;

namespace {

// random well-formed expression text in n; kept away from domain trouble only loosely
std::string random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
    std::uniform_int_distribution<int> small(1, 9);
    switch (pick(rng)) {
        case 0: return "n";
        case 1: return std::to_string(small(rng));
        case 2: return std::to_string(small(rng)) + ".5";
        case 3: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
        case 4: return "(" + random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1) + ")";
        case 5: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
        case 6: return random_expr(rng, depth - 1) + " / " + random_expr(rng, depth - 1);
        case 7: return "sqrt(" + random_expr(rng, depth - 1) + ")";
        case 8: return "-" + random_expr(rng, depth - 1);
        case 9: return "(-1)^n * " + random_expr(rng, depth - 1);
        case 10: return "cos(" + random_expr(rng, depth - 1) + ")";
        default: return "(" + random_expr(rng, depth - 1) + ")^2";
    }
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST_CASE("sqrt parses to a single call node") {
    const Expr e = parse_expr("sqrt(n)");
    CHECK(e.root().op == Op::Sqrt);
    REQUIRE(e.root().args.size() == 1);
    CHECK(e.root().args[0]->op == Op::Var);
    CHECK(e(16.0) == 4.0);
}

TEST_CASE("bound constant with alternating sign") {
    const Expr e = parse_expr("c + (c + (-1)^n * c)/2", "n", {{"c", 1.0}});
    CHECK(e(2.0) == 2.0);
    CHECK(e(3.0) == 1.0);
    for (int n = 1; n <= 50; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        CHECK(e(n) == 1.0 + (1.0 + sign) / 2.0);
    }
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_expr("-n^2")(3.0) == -9.0);
    CHECK(parse_expr("2^3^2")(0.0) == 512.0);
    CHECK(parse_expr("2*3+4")(0.0) == 10.0);
    CHECK(parse_expr("2+3*4")(0.0) == 14.0);
    CHECK(parse_expr("2^-1")(0.0) == 0.5);
    CHECK(parse_expr("10 - 4 - 3")(0.0) == 3.0);
    CHECK(parse_expr("64 / 4 / 2")(0.0) == 8.0);
    CHECK(parse_expr("pow(n, 3)")(2.0) == 8.0);
    CHECK(parse_expr("--n")(5.0) == 5.0);
}

TEST_CASE("alternating sign evaluates by parity") {
    const Expr e = parse_expr("(-1)^n");
    CHECK(e.root().op == Op::AltSign);
    CHECK(e(0.0) == 1.0);
    CHECK(e(7.0) == -1.0);
    CHECK(e(1e15) == 1.0);
    CHECK(std::isnan(e(2.5)));
    CHECK(parse_expr("pow(-1, n)").root().op == Op::AltSign);
}

TEST_CASE("parse errors carry offsets") {
    auto offset_of = [](const char* text) -> std::size_t {
        try {
            parse_expr(text);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return std::string::npos;
    };
    CHECK(offset_of("sqrt(") == 5);
    CHECK(offset_of("") == 0);
    CHECK(offset_of("n +") == 3);
    CHECK(offset_of("foo(n)") == 0);
    CHECK(offset_of("2 * m") == 4);
    CHECK(offset_of("sqrt(n, 2)") == 0);
    CHECK(offset_of("n)") == 1);
    CHECK(offset_of("1e") == 1);
    CHECK_THROWS_AS(parse_expr("n \xc3\xa9"), ParseError);
}

TEST_CASE("variable name is configurable") {
    const Expr f = parse_expr("x^2 + 1", "x");
    CHECK(f(3.0) == 10.0);
    CHECK_THROWS_AS(parse_expr("n", "x"), ParseError);
    CHECK(f.depends_on_variable());
    CHECK_FALSE(parse_expr("3 + 4").depends_on_variable());
}

TEST_CASE("evaluation is raw IEEE") {
    CHECK(std::isnan(parse_expr("sqrt(n)")(-1.0)));
    CHECK(std::isinf(parse_expr("1/n")(0.0)));
    CHECK(std::isinf(parse_expr("ln(n)")(0.0)));
}

TEST_CASE("printing round-trips on random expressions") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string text = random_expr(rng, 4);
        const Expr a = parse_expr(text);
        const Expr b = parse_expr(a.to_string());
        CHECK(b.to_string() == a.to_string());
        for (int n = 1; n <= 1000; ++n) {
            if (!same(a(n), b(n))) {
                FAIL_CHECK(text << " differs at n = " << n);
                break;
            }
        }
    }
}
