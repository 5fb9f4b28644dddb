#include <cmath>

#include "boxmesh/errors.hpp"
#include "boxmesh/quadratic.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace boxmesh;

TEST_CASE("gamma") {
    CHECK(gamma({0, 2}) == 0.25);
    CHECK(gamma({2, 2}) == 0.25);
    CHECK(gamma({1, 2}) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(gamma({1, 3}) == doctest::Approx(0.19842513149602492).epsilon(1e-14));
    CHECK(gamma({3, 3}) == 0.375);
}

TEST_CASE("error on centred boxes") {
    const double h[] = {0.3, 0.4};
    CHECK(quad_error_on_centered_box(QuadraticModel::unit({1, 2}), h) == doctest::Approx(0.16));
    CHECK(quad_error_on_centered_box(QuadraticModel::unit({2, 2}), h) == doctest::Approx(0.25));
    const double zero[] = {0.0, 0.0};
    CHECK(quad_error_on_centered_box(QuadraticModel::unit({1, 2}), zero) == 0.0);
    const double neg[] = {-0.1, 0.1};
    CHECK_THROWS_AS(quad_error_on_centered_box(QuadraticModel::unit({1, 2}), neg), ArgumentError);
}

TEST_CASE("optimal half-widths") {
    auto h = optimal_box_halfwidths({1, 2}, 1.0);
    CHECK(h[0] == doctest::Approx(0.5));
    CHECK(h[1] == doctest::Approx(0.5));
    h = optimal_box_halfwidths({1, 3}, 1.0);
    CHECK(h[0] == doctest::Approx(0.6299605249474366).epsilon(1e-14));
    CHECK(h[1] == doctest::Approx(0.44544935907016964).epsilon(1e-14));
    CHECK(h[2] == doctest::Approx(0.44544935907016964).epsilon(1e-14));
    CHECK(8 * h[0] * h[1] * h[2] == doctest::Approx(1.0).epsilon(1e-14));
    h = optimal_box_halfwidths({0, 2}, 0.04);
    CHECK(h[0] == doctest::Approx(0.1));
    CHECK(h[1] == doctest::Approx(0.1));
    CHECK_THROWS_AS(optimal_box_halfwidths({1, 2}, 0.0), ArgumentError);
}

TEST_CASE("minimal error at fixed volume") {
    CHECK(min_error_fixed_volume(QuadraticModel::unit({1, 2}), 1.0) == doctest::Approx(0.25));
    CHECK(min_error_fixed_volume(QuadraticModel::unit({2, 2}), 1.0) == doctest::Approx(0.5));
    CHECK(min_error_fixed_volume(QuadraticModel({4, -4}, {1, 2}), 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(min_error_fixed_volume(QuadraticModel::unit({1, 2}), -1.0), ArgumentError);
}

TEST_CASE("hessian product") {
    CHECK(hessian_product(QuadraticModel::unit({1, 2})) == -4.0);
    CHECK(hessian_product(QuadraticModel::unit({2, 2})) == 4.0);
    CHECK(hessian_product(QuadraticModel({0.5, 0.5, -0.5}, {2, 3})) == doctest::Approx(-1.0));
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(QuadraticModel({-1, 1}, {1, 2}), ArgumentError);
    CHECK_THROWS_AS(QuadraticModel({1, 0}, {1, 2}), ArgumentError);
    CHECK(QuadraticModel::from_coefficients({2, 3, -1}).signature().k == 2);
    CHECK_THROWS_AS(QuadraticModel::from_coefficients({-2, 3}), ArgumentError);
    const double x[] = {0.5, 2.0};
    CHECK(QuadraticModel::unit({1, 2})(x) == doctest::Approx(-3.75));
}

TEST_CASE("grid maximisation of the saddle error") {
    const AxisBox b({-0.3, -0.4}, {0.3, 0.4});
    CHECK(grid_max_interpolation_error(QuadraticModel::unit({1, 2}), b, 201) == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(grid_max_interpolation_error(QuadraticModel::unit({2, 2}), b, 201) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("optimal shape for general coefficients") {
    testsupport::Gen g(21);
    for (int c = 0; c < 100; ++c) {
        const int d = g.integer(1, 4);
        const int k = g.integer(0, d);
        std::vector<double> a(d);
        for (int i = 0; i < d; ++i) a[i] = (i < k ? 1 : -1) * g.uniform(0.1, 10.0);
        const QuadraticModel q(a, {k, d});
        const double V = g.uniform(1e-4, 3.0);
        const auto h = optimal_box_halfwidths(q, V);
        double vol = std::pow(2.0, d);
        for (double x : h) vol *= x;
        CHECK(vol == doctest::Approx(V).epsilon(1e-12));
        CHECK(quad_error_on_centered_box(q, h) == doctest::Approx(min_error_fixed_volume(q, V)).epsilon(1e-12));
    }
}

TEST_CASE("oracle suite passes with small case counts") {
    for (int d = 1; d <= 3; ++d) {
        QuadraticSuiteOptions o;
        o.dim = d;
        o.cases = 20;
        o.grid_points = d == 3 ? 41 : 101;
        o.perturbations = 20;
        for (const auto& r : run_quadratic_suite(o)) {
            INFO(r.name << ": " << r.detail);
            CHECK(r.passed);
        }
    }
    QuadraticSuiteOptions bad;
    bad.dim = 0;
    CHECK_THROWS_AS(run_quadratic_suite(bad), ArgumentError);
}
