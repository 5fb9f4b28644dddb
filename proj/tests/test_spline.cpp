#include <cmath>

#include "boxmesh/builtins.hpp"
#include "boxmesh/errors.hpp"
#include "boxmesh/spline.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace boxmesh;

namespace {

TargetFunction scalar(int d, ScalarField v) {
    TargetFunction f;
    f.signature = {d, d};
    f.value = std::move(v);
    return f;
}

// Random multilinear polynomial: coefficient c[mask] multiplies prod_{i in mask} x_i.
ScalarField random_multilinear(int d, testsupport::Gen& g) {
    std::vector<double> c(std::size_t{1} << d);
    for (auto& v : c) v = g.uniform(-3.0, 3.0);
    return [c, d](std::span<const double> x) {
        double s = 0.0;
        for (unsigned mask = 0; mask < c.size(); ++mask) {
            double t = c[mask];
            for (int i = 0; i < d; ++i) {
                if (mask & (1u << i)) t *= x[i];
            }
            s += t;
        }
        return s;
    };
}

}  // namespace

TEST_CASE("patch evaluation") {
    const MultilinearPatch p(AxisBox::unit_cube(2), {0, 0, 0, 1});
    const double mid[] = {0.5, 0.5};
    CHECK(eval_patch(p, mid) == doctest::Approx(0.25));
    double v[2];
    for (unsigned mask = 0; mask < 4; ++mask) {
        p.box().corner(mask, v);
        CHECK(eval_patch(p, v) == p.vertex_values()[mask]);
    }
    const double outside[] = {1.5, 0.5};
    CHECK_THROWS_AS(eval_patch(p, outside), DomainError);
}

TEST_CASE("patch reproduces a bilinear function") {
    const auto g = scalar(2, [](std::span<const double> x) { return 2 + 3 * x[0] - x[1] + 5 * x[0] * x[1]; });
    const auto p = interpolate_on_box(g, AxisBox({-1, -1}, {1, 1}));
    const double x[] = {0.3, -0.7};
    CHECK(eval_patch(p, x) == doctest::Approx(2.55).epsilon(1e-14));
}

TEST_CASE("quadratics interpolate to constant patches on centred boxes") {
    const double h = 0.37;
    const auto ell = make_builtin("quad-elliptic", {2, 2});
    const auto p = interpolate_on_box(ell, AxisBox({-h, -h}, {h, h}));
    for (double v : p.vertex_values()) CHECK(v == doctest::Approx(2 * h * h));
    const auto sad = make_builtin("quad-saddle", {1, 2});
    const auto q = interpolate_on_box(sad, AxisBox({-0.3, -0.4}, {0.3, 0.4}));
    for (double v : q.vertex_values()) CHECK(v == doctest::Approx(-0.07));
}

TEST_CASE("non-finite values name the vertex") {
    const auto bad = scalar(1, [](std::span<const double> x) { return 1.0 / x[0]; });
    CHECK_THROWS_AS(interpolate_on_box(bad, AxisBox({0}, {1})), EvaluationError);
}

TEST_CASE("spline location and averaging") {
    const BoxPartition p(AxisBox({0, 0}, {2, 1}), {AxisBox({0, 0}, {1, 1}), AxisBox({1, 0}, {2, 1})});
    const MultilinearSpline s(p, {MultilinearPatch(p.boxes()[0], {0, 0, 0, 0}),
                                  MultilinearPatch(p.boxes()[1], {1, 1, 1, 1})});
    const double face[] = {1.0, 0.5};
    CHECK(s.evaluate(face, true) == doctest::Approx(0.5));
    CHECK(s.evaluate(face, false) == 1.0);  // half-open: the upper box owns the face
    const double top[] = {2.0, 1.0};
    CHECK(s.evaluate(top) == 1.0);
    const double out[] = {2.5, 0.5};
    CHECK_THROWS_AS(s.evaluate(out), DomainError);
    CHECK_THROWS_AS(MultilinearSpline(p, {MultilinearPatch(p.boxes()[0], {0, 0, 0, 0})}), ArgumentError);
}

TEST_CASE("single box spline is the patch") {
    const auto f = make_builtin("exp-elliptic", {2, 2});
    const BoxPartition p(AxisBox::unit_cube(2), {AxisBox::unit_cube(2)});
    const auto s = build_interpolating_spline(f, p);
    testsupport::Gen g(3);
    const auto patch = interpolate_on_box(f, AxisBox::unit_cube(2));
    for (int i = 0; i < 50; ++i) {
        const auto x = g.point(2);
        CHECK(s.evaluate(x) == patch.evaluate_unchecked(x));
    }
}

TEST_CASE("multilinear functions are reproduced exactly") {
    testsupport::Gen g(11);
    for (int c = 0; c < 100; ++c) {
        const int d = g.integer(1, 4);
        const auto f = scalar(d, random_multilinear(d, g));
        const auto box = g.box(d);
        const auto patch = interpolate_on_box(f, box);
        for (int i = 0; i < 100; ++i) {
            const auto x = g.point_in(box);
            CHECK(std::abs(eval_patch(patch, x) - f(x)) <= 1e-12 * std::max(1.0, std::abs(f(x))));
        }
    }
    const auto f = scalar(2, random_multilinear(2, g));
    const double steps[] = {0.13, 0.21};
    const auto s = build_interpolating_spline(f, lattice_partition(AxisBox::unit_cube(2), steps), 2);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = g.point(2);
        worst = std::max(worst, std::abs(s.evaluate(x) - f(x)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("vertex interpolation on a lattice") {
    const auto f = make_builtin("exp-saddle", {1, 2});
    const double steps[] = {0.07, 0.11};
    const auto p = lattice_partition(AxisBox::unit_cube(2), steps);
    const auto s = build_interpolating_spline(f, p, 3);
    double v[2];
    for (const auto& b : p.boxes()) {
        for (unsigned mask = 0; mask < 4; ++mask) {
            b.corner(mask, v);
            CHECK(std::abs(s.evaluate(v, true) - f(v)) <= 1e-12);
        }
    }
}

TEST_CASE("patch value is monotone in each vertex value") {
    testsupport::Gen g(5);
    for (int c = 0; c < 50; ++c) {
        const int d = g.integer(1, 3);
        const auto box = g.box(d);
        std::vector<double> vals(std::size_t{1} << d);
        for (auto& v : vals) v = g.uniform(-1, 1);
        const MultilinearPatch base(box, vals);
        const std::size_t which = static_cast<std::size_t>(g.integer(0, static_cast<int>(vals.size()) - 1));
        vals[which] += g.uniform(0.01, 2.0);
        const MultilinearPatch bumped(box, vals);
        for (int i = 0; i < 20; ++i) {
            const auto x = g.point_in(box);
            CHECK(bumped.evaluate_unchecked(x) >= base.evaluate_unchecked(x) - 1e-15);
        }
    }
}

TEST_CASE("locator agrees with a linear scan") {
    testsupport::Gen g(9);
    const double steps[] = {0.093, 0.17, 0.31};
    const auto p = lattice_partition(AxisBox::unit_cube(3), steps);
    const BoxLocator loc(p);
    for (int i = 0; i < 2000; ++i) {
        const auto x = g.point(3);
        const int found = loc.locate(p.boxes(), x);
        REQUIRE(found >= 0);
        CHECK(p.boxes()[found].contains(x, 0.0));
    }
    std::vector<int> hits;
    const double corner[] = {0.093, 0.17, 0.31};
    loc.incident(p.boxes(), corner, 1e-12, hits);
    CHECK(hits.size() == 8);
}
