#include "boxmesh/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "boxmesh/errors.hpp"
#include "boxmesh/meshgen.hpp"
#include "boxmesh/parallel.hpp"
#include "boxmesh/quadratic.hpp"
#include "boxmesh/stitch.hpp"

namespace boxmesh {

namespace {

// Visits every point of a g^d tensor grid; coord(a, j) gives the coordinate.
template <class Coord, class Visit>
void for_each_grid_point(int d, int g, Coord&& coord, Visit&& visit) {
    std::array<int, kMaxDim> idx{};
    std::array<double, kMaxDim> x{};
    const std::span<const double> xs(x.data(), d);
    for (int a = 0; a < d; ++a) x[a] = coord(a, 0);
    while (true) {
        visit(xs);
        int a = 0;
        for (; a < d; ++a) {
            if (++idx[a] < g) {
                x[a] = coord(a, idx[a]);
                break;
            }
            idx[a] = 0;
            x[a] = coord(a, 0);
        }
        if (a == d) break;
    }
}

}  // namespace

double weighted_sup_error(const TargetFunction& f, const MultilinearSpline& s, const WeightFunction& w,
                          int grid_per_axis, int workers) {
    if (grid_per_axis < 2) throw ArgumentError("weighted_sup_error: grid_per_axis must be at least 2");
    const auto& boxes = s.partition().boxes();
    const int d = s.partition().dim();
    const int g = grid_per_axis;
    const int nw = std::max(1, workers);
    std::vector<double> partial(static_cast<std::size_t>(nw), 0.0);
    parallel_chunks(boxes.size(), nw, [&](std::size_t begin, std::size_t end, int worker) {
        double worst = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const AxisBox& b = boxes[i];
            const auto& patch = s.patches()[i];
            for_each_grid_point(
                d, g,
                [&](int a, int j) {
                    const double off = std::min(kFaceOffset, 0.25 * b.width(a));
                    return b.lower(a) + off + (b.width(a) - 2.0 * off) * j / (g - 1);
                },
                [&](std::span<const double> x) {
                    const double e = std::abs(f(x) - patch.evaluate_unchecked(x)) * w(x);
                    if (!std::isfinite(e)) throw EvaluationError("weighted_sup_error: non-finite error sample");
                    worst = std::max(worst, e);
                });
        }
        partial[static_cast<std::size_t>(worker)] = worst;
    });
    return *std::max_element(partial.begin(), partial.end());
}

TaylorCheck taylor_bound_check(const TargetFunction& f, std::span<const double> center, double h,
                               int samples_per_axis) {
    const int d = f.dim();
    if (static_cast<int>(center.size()) != d) throw ArgumentError("taylor_bound_check: centre has wrong dimension");
    if (!(h >= 0.0)) throw ArgumentError("taylor_bound_check: h must be nonnegative");
    for (int a = 0; a < d; ++a) {
        if (center[a] - 0.5 * h < -kGeomTol || center[a] + 0.5 * h > 1.0 + kGeomTol) {
            std::ostringstream os;
            os << "taylor_bound_check: cube of side " << h << " leaves the domain along axis " << a;
            throw ArgumentError(os.str());
        }
    }
    if (h == 0.0) return {};
    int g = samples_per_axis;
    if (g <= 0) g = d <= 2 ? 101 : (d == 3 ? 21 : 7);
    if (g < 2) throw ArgumentError("taylor_bound_check: need at least 2 samples per axis");

    std::array<double, kMaxDim * kMaxDim> hess{};
    std::array<double, kMaxDim> grad{};
    f.eval_hessian(center, std::span<double>(hess.data(), d * d));
    f.eval_gradient(center, std::span<double>(grad.data(), d));
    const double f0 = f(center);

    TaylorCheck r;
    for_each_grid_point(
        d, g, [&](int a, int j) { return center[a] - 0.5 * h + h * j / (g - 1); },
        [&](std::span<const double> x) {
            double p = f0;
            for (int i = 0; i < d; ++i) {
                const double di = x[i] - center[i];
                p += grad[i] * di;
                for (int j = 0; j < d; ++j) p += 0.5 * hess[i * d + j] * di * (x[j] - center[j]);
            }
            r.lhs = std::max(r.lhs, std::abs(f(x) - p));
        });
    const double half = 0.5 * h;
    r.rhs = 0.5 * d * d * half * half * omega_star_estimate(f, half);
    return r;
}

double theorem_constant(const TargetFunction& f, const WeightFunction& w, int quad_points, int workers) {
    if (quad_points < 2) throw ArgumentError("theorem_constant: quad_points must be at least 2");
    validate_signature(f.signature);
    const int d = f.dim();
    const int q = quad_points;
    long long cells = 1;
    for (int a = 0; a < d; ++a) cells *= q;
    // Chunk over the slowest axis so each worker sums whole slabs.
    const int nw = std::max(1, workers);
    std::vector<double> partial(static_cast<std::size_t>(nw), 0.0);
    parallel_chunks(static_cast<std::size_t>(q), nw, [&](std::size_t begin, std::size_t end, int worker) {
        double sum = 0.0;
        std::array<double, kMaxDim * kMaxDim> hess{};
        std::array<double, kMaxDim> x{};
        const std::span<const double> xs(x.data(), d);
        const long long slab = cells / q;
        for (std::size_t top = begin; top < end; ++top) {
            for (long long c = 0; c < slab; ++c) {
                long long rem = c;
                for (int a = 0; a < d - 1; ++a) {
                    x[a] = (static_cast<double>(rem % q) + 0.5) / q;
                    rem /= q;
                }
                x[d - 1] = (static_cast<double>(top) + 0.5) / q;
                f.eval_hessian(xs, std::span<double>(hess.data(), d * d));
                double H = 1.0;
                for (int i = 0; i < d; ++i) H *= hess[i * d + i];
                if (H == 0.0) {
                    std::ostringstream os;
                    os << "theorem_constant: Hessian diagonal vanishes at (";
                    for (int a = 0; a < d; ++a) os << (a ? ", " : "") << x[a];
                    os << ")";
                    throw SignatureError(os.str());
                }
                sum += std::sqrt(std::abs(H)) * std::pow(w(xs), 0.5 * d);
            }
        }
        partial[static_cast<std::size_t>(worker)] = sum;
    });
    double integral = 0.0;
    for (double p : partial) integral += p;
    integral /= static_cast<double>(cells);
    return gamma(f.signature) * std::pow(integral, 2.0 / d);
}

double theorem_constant_converged(const TargetFunction& f, const WeightFunction& w, double rel_tol, int start,
                                  long long max_nodes, int workers) {
    const int d = f.dim();
    int q = std::max(2, start);
    double prev = theorem_constant(f, w, q, workers);
    while (true) {
        const double nodes = std::pow(2.0 * q, d);
        if (nodes > static_cast<double>(max_nodes)) return prev;
        q *= 2;
        const double cur = theorem_constant(f, w, q, workers);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
}

ConvergenceRecord measure_rung(const TargetFunction& f, const WeightFunction& w, long long N,
                               const StudyOptions& opts, double constant) {
    const int d = f.dim();
    const MeshPlan plan = build_plan(f, w, N, opts.epsilon);
    const BoxPartition p = build_partition(plan);
    ConvergenceRecord r;
    r.N_requested = N;
    r.epsilon = opts.epsilon;
    r.m = plan.m;
    r.constant = constant;
    MultilinearSpline s;
    if (opts.stitched) {
        const StitchedMesh sm = refine_interfaces(plan, p);
        s = build_quasi_interpolating_spline(f, sm, opts.workers);
        r.irregular_count = sm.irregular_box_count;
        if (opts.measure_deficit) r.vertex_deficit = interpolation_deficit(f, s).fraction();
    } else {
        s = build_interpolating_spline(f, p, opts.workers);
    }
    r.boxes_used = static_cast<long long>(s.partition().box_count());
    r.sup_error = weighted_sup_error(f, s, w, opts.grid_per_axis, opts.workers);
    r.normalized = std::pow(static_cast<double>(r.boxes_used), 2.0 / d) * r.sup_error;
    r.ratio = r.normalized / constant;
    r.admissibility = admissibility_metric(s.partition());
    return r;
}

std::vector<ConvergenceRecord> convergence_study(const TargetFunction& f, const WeightFunction& w,
                                                 std::span<const long long> ladder, const StudyOptions& opts,
                                                 double constant) {
    if (ladder.empty()) throw ConfigError("convergence study needs a nonempty N ladder");
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] <= ladder[i - 1]) throw ConfigError("N ladder must be strictly increasing");
    }
    if (constant <= 0.0) constant = theorem_constant_converged(f, w, 1e-6, 16, 1LL << 24, opts.workers);
    std::vector<ConvergenceRecord> out;
    for (long long N : ladder) out.push_back(measure_rung(f, w, N, opts, constant));
    return out;
}

BoxPartition uniform_partition(int dim, int n) {
    if (n < 1) throw ArgumentError("uniform_partition: n must be positive");
    return BoxPartition(AxisBox::unit_cube(dim), subcubes(dim, n));
}

ConvergenceRecord measure_uniform(const TargetFunction& f, const WeightFunction& w, int n, int grid_per_axis,
                                  double constant, int workers) {
    const int d = f.dim();
    const BoxPartition p = uniform_partition(d, n);
    const auto s = build_interpolating_spline(f, p, workers);
    ConvergenceRecord r;
    r.boxes_used = static_cast<long long>(p.box_count());
    r.N_requested = r.boxes_used;
    r.sup_error = weighted_sup_error(f, s, w, grid_per_axis, workers);
    r.normalized = std::pow(static_cast<double>(r.boxes_used), 2.0 / d) * r.sup_error;
    r.constant = constant;
    r.ratio = r.normalized / constant;
    r.admissibility = admissibility_metric(p);
    return r;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ArgumentError("log_log_slope: need two or more pairs");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ArgumentError("log_log_slope: values must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw ArgumentError("log_log_slope: x values are all equal");
    return (n * sxy - sx * sy) / den;
}

}  // namespace boxmesh
