#include <cmath>

#include "boxmesh/builtins.hpp"
#include "boxmesh/errors.hpp"
#include "boxmesh/expr.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace boxmesh;

namespace {

std::size_t error_position(const std::string& src, int dim) {
    try {
        Expression::parse(src, dim);
    } catch (const ParseError& e) {
        return e.position();
    }
    return 0;
}

std::string random_expression(testsupport::Gen& g, int d, int depth) {
    if (depth == 0 || g.integer(0, 3) == 0) {
        if (g.integer(0, 1) == 0) return "x" + std::to_string(g.integer(1, d));
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", g.uniform(0.0, 10.0));
        return buf;
    }
    static const char* ops[] = {"+", "-", "*", "/", "^"};
    static const char* fns[] = {"exp", "log", "sin", "cos"};
    switch (g.integer(0, 3)) {
        case 0: return "-" + random_expression(g, d, depth - 1);
        case 1: return std::string(fns[g.integer(0, 3)]) + "(" + random_expression(g, d, depth - 1) + ")";
        case 2: return "(" + random_expression(g, d, depth - 1) + ")";
        default:
            return random_expression(g, d, depth - 1) + " " + ops[g.integer(0, 4)] + " " +
                   random_expression(g, d, depth - 1);
    }
}

}  // namespace

TEST_CASE("evaluation") {
    const double half[] = {0.5, 0.5};
    CHECK(Expression::parse("x1^2 + x2^2", 2)(half) == doctest::Approx(0.5));
    testsupport::Gen g(1);
    const auto e = Expression::parse("exp(x1) - exp(x2)", 2);
    for (int i = 0; i < 20; ++i) {
        const double t = g.uniform(0, 1);
        const double x[] = {t, t};
        CHECK(e(x) == 0.0);
    }
    const double x[] = {2.0, 3.0};
    CHECK(Expression::parse("-x1^2", 2)(x) == -4.0);
    CHECK(Expression::parse("2^3^2", 2)(x) == 512.0);
    CHECK(Expression::parse("2^-1", 2)(x) == 0.5);
    CHECK(Expression::parse("x2 - x1 - 1", 2)(x) == 0.0);
    CHECK(Expression::parse("x2 / x1 / 3", 2)(x) == 0.5);
    CHECK(Expression::parse("1 + 2 * x2", 2)(x) == 7.0);
    CHECK(Expression::parse("(1 + 2) * x2", 2)(x) == 9.0);
    CHECK(Expression::parse("- - x1", 2)(x) == 2.0);
    CHECK(Expression::parse("1.5e1 + .5", 2)(x) == 15.5);
    CHECK(Expression::parse("log(exp(x1)) + sin(0) + cos(0)", 2)(x) == doctest::Approx(3.0));
}

TEST_CASE("errors carry positions") {
    CHECK(error_position("x1 +", 1) == 5);
    CHECK(error_position("x1 + y", 1) == 6);
    CHECK(error_position("x3", 2) == 1);
    CHECK(error_position("(x1", 1) == 4);
    CHECK(error_position("x1 x1", 1) == 4);
    CHECK(error_position("", 1) == 1);
    CHECK(error_position("foo(x1)", 1) == 1);
    CHECK(error_position("exp x1", 1) == 5);
    CHECK(error_position("x0", 1) == 1);
    CHECK(error_position("1 $ 2", 1) == 3);
    CHECK_THROWS_AS(Expression::parse("x1", 0), ArgumentError);
    try {
        Expression::parse("x1 + y", 1);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown identifier 'y'") != std::string::npos);
    }
}

TEST_CASE("pretty printing round-trips") {
    testsupport::Gen g(99);
    for (int i = 0; i < 100; ++i) {
        const int d = g.integer(1, 4);
        const auto src = random_expression(g, d, 5);
        const auto e = Expression::parse(src, d);
        const auto printed = e.to_string();
        const auto again = Expression::parse(printed, d);
        INFO(src << "  ->  " << printed);
        CHECK(e.structurally_equal(again));
        CHECK(again.to_string() == printed);
    }
    CHECK(Expression::parse("-x1^2", 1).to_string() == "(-(x1 ^ 2))");
    CHECK_FALSE(Expression::parse("x1 + 1", 1).structurally_equal(Expression::parse("1 + x1", 1)));
}

TEST_CASE("expressions match the registry") {
    struct Pair {
        const char* name;
        Signature sig;
        const char* src;
    };
    const Pair pairs[] = {
        {"quad-elliptic", {2, 2}, "x1^2 + x2^2"},
        {"quad-saddle", {1, 2}, "x1^2 - x2^2"},
        {"quad-saddle", {1, 3}, "x1^2 - x2^2 - x3^2"},
        {"exp-elliptic", {2, 2}, "exp(x1) + exp(x2)"},
        {"exp-saddle", {1, 2}, "exp(x1) - exp(x2)"},
        {"exp-steep", {3, 3}, "exp(2*x1) + exp(2*x2) + exp(2*x3)"},
    };
    testsupport::Gen g(8);
    for (const auto& p : pairs) {
        const auto f = make_builtin(p.name, p.sig);
        const auto e = Expression::parse(p.src, p.sig.d);
        for (int i = 0; i < 100; ++i) {
            const auto x = g.point(p.sig.d);
            CHECK(std::abs(e(x) - f(x)) <= 1e-12 * std::max(1.0, std::abs(f(x))));
        }
    }
}

TEST_CASE("conversion to target functions") {
    const auto e = Expression::parse("x1^2 + x2^2", 2);
    CHECK_NOTHROW(to_target_function(e, {2, 2}));
    try {
        to_target_function(e, {1, 2});
        FAIL("expected a signature error");
    } catch (const SignatureError& err) {
        const std::string what = err.what();
        CHECK(what.find("dx2^2") != std::string::npos);
        CHECK(what.find(" at (") != std::string::npos);
    }
    const auto steep = to_target_function(Expression::parse("exp(2*x1)+exp(2*x2)", 2), {2, 2});
    const double origin[] = {0.0, 0.0};
    double h[4];
    steep.eval_hessian(origin, h);
    CHECK(std::abs(h[0] - 4.0) <= 1e-4);
    CHECK(std::abs(h[3] - 4.0) <= 1e-4);
    CHECK(std::abs(h[1]) <= 1e-4);
    CHECK_FALSE(steep.omega_star);
    CHECK_THROWS_AS(to_target_function(e, {2, 3}), ArgumentError);
    CHECK_THROWS_AS(to_target_function(Expression::parse("log(x1 - 0.5) + x2^2", 2), {2, 2}), Error);
}

TEST_CASE("weights from expressions") {
    const auto w = to_weight_function(Expression::parse("1 + 0.5*x1", 2));
    const double x[] = {1.0, 0.0};
    CHECK(w(x) == 1.5);
    CHECK_THROWS_AS(to_weight_function(Expression::parse("x1 - 0.5", 2)), ArgumentError);
}
