#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "boxmesh/errors.hpp"
#include "boxmesh/quadratic.hpp"
#include "boxmesh/spline.hpp"

namespace boxmesh {

namespace {

MultilinearPatch interpolate_quadratic(const QuadraticModel& q, const AxisBox& box) {
    const int d = q.dim();
    std::vector<double> values(std::size_t{1} << d);
    std::array<double, kMaxDim> v{};
    for (unsigned mask = 0; mask < values.size(); ++mask) {
        box.corner(mask, std::span<double>(v.data(), d));
        values[mask] = q(std::span<const double>(v.data(), d));
    }
    return MultilinearPatch(box, std::move(values));
}

struct RandomCase {
    QuadraticModel q;
    std::vector<double> h;
};

RandomCase random_case(int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kdist(0, d);
    std::uniform_real_distribution<double> mag(0.2, 5.0);
    std::uniform_real_distribution<double> width(0.01, 1.0);
    const Signature sig{kdist(rng), d};
    std::vector<double> a(d), h(d);
    for (int i = 0; i < d; ++i) {
        a[i] = (i < sig.k ? 1.0 : -1.0) * mag(rng);
        h[i] = width(rng);
    }
    return RandomCase{QuadraticModel(std::move(a), sig), std::move(h)};
}

std::vector<double> unit_product_factors(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 0.3);
    std::vector<double> logs(d);
    double mean = 0.0;
    for (auto& l : logs) {
        l = nd(rng);
        mean += l;
    }
    mean /= d;
    std::vector<double> f(d);
    for (int i = 0; i < d; ++i) f[i] = std::exp(logs[i] - mean);
    return f;
}

AxisBox centered_box(std::span<const double> h, std::span<const double> shift = {}) {
    std::vector<double> lo(h.size()), hi(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double s = shift.empty() ? 0.0 : shift[i];
        lo[i] = s - h[i];
        hi[i] = s + h[i];
    }
    return AxisBox(std::move(lo), std::move(hi));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

double grid_max_interpolation_error(const QuadraticModel& q, const AxisBox& box,
                                    int points_per_axis) {
    if (points_per_axis < 2) throw ArgumentError("grid needs at least 2 points per axis");
    const int d = q.dim();
    const auto patch = interpolate_quadratic(q, box);
    std::array<int, kMaxDim> idx{};
    std::array<double, kMaxDim> x{};
    const std::span<const double> xs(x.data(), d);
    double worst = 0.0;
    while (true) {
        for (int a = 0; a < d; ++a) {
            x[a] = box.lower(a) + box.width(a) * idx[a] / (points_per_axis - 1);
        }
        worst = std::max(worst, std::abs(q(xs) - patch.evaluate_unchecked(xs)));
        int a = 0;
        for (; a < d; ++a) {
            if (++idx[a] < points_per_axis) break;
            idx[a] = 0;
        }
        if (a == d) break;
    }
    return worst;
}

std::vector<PropertyResult> run_quadratic_suite(const QuadraticSuiteOptions& opts) {
    if (opts.dim < 1 || opts.dim > 3) throw ArgumentError("verify-quadratic supports d in {1,2,3}");
    if (opts.cases < 1) throw ArgumentError("verify-quadratic needs at least one case");
    const int d = opts.dim;
    std::mt19937_64 rng(opts.seed);
    std::vector<PropertyResult> results;

    {
        PropertyResult r{"closed form vs grid maximisation", true, ""};
        double worst_gap = 0.0;
        for (int c = 0; c < opts.cases && r.passed; ++c) {
            const auto rc = random_case(d, rng);
            const double analytic = quad_error_on_centered_box(rc.q, rc.h);
            const double grid = grid_max_interpolation_error(rc.q, centered_box(rc.h), opts.grid_points);
            double slack = 0.0;
            for (int i = 0; i < d; ++i) {
                const double spacing = 2.0 * rc.h[i] / (opts.grid_points - 1);
                slack += 2.0 * spacing * 2.0 * std::abs(rc.q.coeffs()[i]) * rc.h[i];
            }
            worst_gap = std::max(worst_gap, analytic - grid);
            if (grid > analytic * (1.0 + 1e-12) + 1e-15 || grid < analytic - slack) {
                r.passed = false;
                r.detail = "case " + std::to_string(c) + ": analytic " + fmt(analytic) + ", grid " + fmt(grid);
            }
        }
        if (r.passed) r.detail = std::to_string(opts.cases) + " cases, max gap " + fmt(worst_gap);
        results.push_back(r);
    }

    {
        PropertyResult r{"optimal shape beats volume-preserving perturbations", true, ""};
        std::uniform_real_distribution<double> vol(0.01, 2.0);
        std::uniform_int_distribution<int> kdist(0, d);
        for (int c = 0; c < opts.cases && r.passed; ++c) {
            const Signature sig{kdist(rng), d};
            const auto q = QuadraticModel::unit(sig);
            const double V = vol(rng);
            const auto h = optimal_box_halfwidths(sig, V);
            const double best = quad_error_on_centered_box(q, h);
            for (int p = 0; p < opts.perturbations; ++p) {
                auto f = unit_product_factors(d, rng);
                std::vector<double> hp(d);
                for (int i = 0; i < d; ++i) hp[i] = h[i] * f[i];
                const double e = quad_error_on_centered_box(q, hp);
                if (e < best - 1e-12) {
                    r.passed = false;
                    r.detail = "perturbed shape error " + fmt(e) + " < optimal " + fmt(best);
                    break;
                }
            }
        }
        if (r.passed) r.detail = std::to_string(opts.cases * opts.perturbations) + " perturbations";
        results.push_back(r);
    }

    {
        PropertyResult r{"minimal error equals error at rescaled optimal shape", true, ""};
        std::uniform_real_distribution<double> vol(0.01, 2.0);
        for (int c = 0; c < opts.cases && r.passed; ++c) {
            const auto rc = random_case(d, rng);
            const double V = vol(rng);
            const auto h = optimal_box_halfwidths(rc.q, V);
            double box_vol = std::pow(2.0, d);
            for (double x : h) box_vol *= x;
            const double closed = min_error_fixed_volume(rc.q, V);
            const double at_shape = quad_error_on_centered_box(rc.q, h);
            if (std::abs(closed - at_shape) > 1e-12 * closed || std::abs(box_vol - V) > 1e-12 * V) {
                r.passed = false;
                r.detail = "closed form " + fmt(closed) + " vs shape error " + fmt(at_shape);
            }
        }
        results.push_back(r);
    }

    {
        PropertyResult r{"scaling law E(lambda V) = lambda^{2/d} E(V)", true, ""};
        std::uniform_real_distribution<double> vol(0.01, 2.0);
        std::uniform_real_distribution<double> lam(0.05, 20.0);
        for (int c = 0; c < opts.cases && r.passed; ++c) {
            const auto rc = random_case(d, rng);
            const double V = vol(rng), l = lam(rng);
            const double lhs = min_error_fixed_volume(rc.q, l * V);
            const double rhs = std::pow(l, 2.0 / d) * min_error_fixed_volume(rc.q, V);
            if (std::abs(lhs - rhs) > 1e-12 * rhs) {
                r.passed = false;
                r.detail = fmt(lhs) + " vs " + fmt(rhs);
            }
        }
        results.push_back(r);
    }

    {
        PropertyResult r{"translation invariance of the interpolation error", true, ""};
        std::uniform_real_distribution<double> shift(-3.0, 3.0);
        const int cases = std::max(1, opts.cases / 4);
        const int g = std::min(opts.grid_points, d == 3 ? 41 : 101);
        for (int c = 0; c < cases && r.passed; ++c) {
            const auto rc = random_case(d, rng);
            std::vector<double> a(d);
            double scale = 1.0;
            for (int i = 0; i < d; ++i) {
                a[i] = shift(rng);
                scale += std::abs(rc.q.coeffs()[i]) * (std::abs(a[i]) + rc.h[i]) * (std::abs(a[i]) + rc.h[i]);
            }
            const double e0 = grid_max_interpolation_error(rc.q, centered_box(rc.h), g);
            const double e1 = grid_max_interpolation_error(rc.q, centered_box(rc.h, a), g);
            if (std::abs(e0 - e1) > 1e-12 * scale * 16) {
                r.passed = false;
                r.detail = "centred " + fmt(e0) + " vs shifted " + fmt(e1);
            }
        }
        results.push_back(r);
    }
    return results;
}

}  // namespace boxmesh
