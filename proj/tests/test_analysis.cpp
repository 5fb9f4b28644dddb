#include <cmath>

#include "boxmesh/analysis.hpp"
#include "boxmesh/builtins.hpp"
#include "boxmesh/errors.hpp"
#include "boxmesh/meshgen.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace boxmesh;

TEST_CASE("sup error on uniform grids") {
    const auto one = make_weight("one");
    const auto p = uniform_partition(2, 10);
    const auto ell = make_builtin("quad-elliptic", {2, 2});
    const auto sad = make_builtin("quad-saddle", {1, 2});
    const double e = weighted_sup_error(ell, build_interpolating_spline(ell, p), one, 41);
    CHECK(e == doctest::Approx(0.005).epsilon(0.01));
    CHECK(e <= 0.005 * (1 + 1e-12));
    const double s = weighted_sup_error(sad, build_interpolating_spline(sad, p), one, 41, 3);
    CHECK(s == doctest::Approx(0.0025).epsilon(1e-6));
    CHECK_THROWS_AS(weighted_sup_error(ell, build_interpolating_spline(ell, p), one, 1), ArgumentError);
}

TEST_CASE("sup error of a multilinear function vanishes") {
    TargetFunction f;
    f.signature = {2, 2};
    f.value = [](std::span<const double> x) { return 1 + x[0] - 2 * x[1] + 3 * x[0] * x[1]; };
    const double steps[] = {0.3, 0.17};
    const auto p = lattice_partition(AxisBox::unit_cube(2), steps);
    CHECK(weighted_sup_error(f, build_interpolating_spline(f, p), make_weight("linear"), 11) <= 1e-12);
}

TEST_CASE("sup error is monotone under nested grids") {
    const auto f = make_builtin("exp-saddle", {1, 2});
    const auto plan = build_plan(f, make_weight("one"), 2000, 0.1);
    const auto s = build_interpolating_spline(f, build_partition(plan));
    double prev = 0.0;
    for (int g : {2, 3, 5, 9, 17, 33}) {
        const double e = weighted_sup_error(f, s, make_weight("linear"), g, 2);
        CHECK(e >= prev);
        prev = e;
    }
}

TEST_CASE("taylor bound") {
    const auto q = make_builtin("quad-saddle", {1, 2});
    const double c[] = {0.5, 0.5};
    auto r = taylor_bound_check(q, c, 0.4);
    CHECK(r.lhs <= 1e-14);
    CHECK(r.rhs == 0.0);
    const auto e = make_builtin("exp-elliptic", {2, 2});
    r = taylor_bound_check(e, c, 0.2);
    CHECK(r.lhs > 0.0);
    CHECK(r.rhs == doctest::Approx(0.005173574346041915).epsilon(1e-13));
    CHECK(r.lhs <= r.rhs);
    r = taylor_bound_check(e, c, 0.0);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    const double edge[] = {0.95, 0.5};
    CHECK_THROWS_AS(taylor_bound_check(e, edge, 0.2), ArgumentError);
}

TEST_CASE("taylor bound holds on random cubes in three dimensions") {
    testsupport::Gen g(4);
    const auto f = make_builtin("exp-saddle", {2, 3});
    for (int i = 0; i < 10; ++i) {
        const double h = g.uniform(0.01, 0.5);
        const auto c = g.point(3, h / 2, 1 - h / 2);
        const auto r = taylor_bound_check(f, c, h);
        CHECK(r.lhs <= r.rhs);
    }
}

TEST_CASE("theorem constants") {
    const auto one = make_weight("one");
    CHECK(theorem_constant(make_builtin("quad-elliptic", {2, 2}), one, 8) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(theorem_constant(make_builtin("quad-saddle", {1, 2}), one, 8) == doctest::Approx(0.25).epsilon(1e-14));
    // |H| = 8, so the integral term is 8^{1/3} = 2.
    CHECK(theorem_constant(make_builtin("quad-saddle", {1, 3}), one, 4) ==
          doctest::Approx(2 * 0.19842513149602492).epsilon(1e-13));
    const double exact = 0.25 * std::pow(2 * (std::sqrt(std::exp(1.0)) - 1), 2);
    CHECK(exact == doctest::Approx(0.420839287058789).epsilon(1e-14));
    const auto e = make_builtin("exp-elliptic", {2, 2});
    CHECK(theorem_constant_converged(e, one) == doctest::Approx(exact).epsilon(1e-6));
    CHECK(theorem_constant_converged(make_builtin("exp-saddle", {1, 2}), one) ==
          doctest::Approx(0.2104196435293945).epsilon(1e-6));
    CHECK(theorem_constant_converged(make_builtin("exp-steep", {2, 2}), one) ==
          doctest::Approx(2.9524924420125593).epsilon(1e-6));
    // Refinement invariance.
    const double a = theorem_constant(e, make_weight("linear"), 256, 2);
    const double b = theorem_constant(e, make_weight("linear"), 512, 2);
    CHECK(std::abs(a - b) <= 1e-6 * b);
    CHECK_THROWS_AS(theorem_constant(e, one, 1), ArgumentError);
    TargetFunction flat = e;
    flat.hessian = [](std::span<const double> x, std::span<double> out) {
        out[0] = x[0] - 0.5 + 1.0 / 64;
        out[1] = out[2] = 0.0;
        out[3] = 1.0;
    };
    CHECK_THROWS_AS(theorem_constant(flat, one, 32), SignatureError);
}

TEST_CASE("convergence on quadratics") {
    const auto one = make_weight("one");
    StudyOptions o;
    o.epsilon = 0.01;
    o.workers = 2;
    const long long ladder[] = {400, 1600, 6400};
    for (auto f : {make_builtin("quad-elliptic", {2, 2}), make_builtin("quad-saddle", {1, 2})}) {
        const auto recs = convergence_study(f, one, ladder, o);
        REQUIRE(recs.size() == 3);
        for (const auto& r : recs) {
            CHECK(r.ratio >= 1.0);
            CHECK(r.ratio <= 1.03);
            CHECK(r.normalized == doctest::Approx(std::pow(static_cast<double>(r.boxes_used), 1.0) * r.sup_error));
        }
    }
    const long long bad[] = {1000, 500};
    CHECK_THROWS_AS(convergence_study(make_builtin("quad-elliptic", {2, 2}), one, bad, o), ConfigError);
    CHECK_THROWS_AS(convergence_study(make_builtin("quad-elliptic", {2, 2}), one, std::span<const long long>(), o),
                    ConfigError);
}

TEST_CASE("uniform competitor") {
    const auto f = make_builtin("quad-elliptic", {2, 2});
    const auto r = measure_uniform(f, make_weight("one"), 10, 41, 0.5);
    CHECK(r.boxes_used == 100);
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(uniform_partition(3, 4).box_count() == 64);
}

TEST_CASE("log-log slope") {
    const double x[] = {1, 10, 100}, y[] = {3, 30, 300}, z[] = {2, 2, 2};
    CHECK(log_log_slope(x, y) == doctest::Approx(1.0));
    CHECK(log_log_slope(x, z) == doctest::Approx(0.0));
    const double bad[] = {1, -1, 2};
    CHECK_THROWS_AS(log_log_slope(x, bad), ArgumentError);
}
