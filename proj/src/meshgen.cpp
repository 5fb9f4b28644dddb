#include "boxmesh/meshgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "boxmesh/errors.hpp"

namespace boxmesh {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
}

int default_samples(int d) {
    switch (d) {
        case 1: return 129;
        case 2: return 25;
        case 3: return 11;
        default: return 5;
    }
}

}  // namespace

long long MeshPlan::budget_sum() const {
    long long s = 0;
    for (const auto& r : subregions) s += r.n;
    return s;
}

int MeshPlan::subregion_of(std::span<const double> x) const {
    int flat = 0, stride = 1;
    for (int a = 0; a < dim(); ++a) {
        const int i = std::clamp(static_cast<int>(std::floor(x[a] * m)), 0, m - 1);
        flat += i * stride;
        stride *= m;
    }
    return flat;
}

OmegaStarEstimator::OmegaStarEstimator(const TargetFunction& f, int samples_per_axis) {
    const int d = f.dim();
    const int s = samples_per_axis > 1 ? samples_per_axis : default_samples(d);
    constexpr int kRungsPerOctave = 16;
    constexpr int kOctaves = 14;
    std::vector<double> ladder;
    for (int j = kRungsPerOctave * kOctaves; j >= 0; --j) {
        ladder.push_back(std::pow(2.0, -static_cast<double>(j) / kRungsPerOctave));
    }
    std::vector<double> best(ladder.size(), 0.0);

    const int dd = d * d;
    std::array<double, kMaxDim> x{}, y{};
    std::array<double, kMaxDim * kMaxDim> hx{}, hy{};
    std::array<int, kMaxDim> idx{};
    while (true) {
        for (int a = 0; a < d; ++a) x[a] = static_cast<double>(idx[a]) / (s - 1);
        f.eval_hessian(std::span<const double>(x.data(), d), std::span<double>(hx.data(), dd));
        for (int a = 0; a < d; ++a) {
            for (std::size_t r = 0; r < ladder.size(); ++r) {
                for (double dir : {-1.0, 1.0}) {
                    y = x;
                    y[a] = x[a] + dir * ladder[r];
                    if (y[a] < 0.0 || y[a] > 1.0) continue;
                    f.eval_hessian(std::span<const double>(y.data(), d), std::span<double>(hy.data(), dd));
                    for (int e = 0; e < dd; ++e) best[r] = std::max(best[r], std::abs(hx[e] - hy[e]));
                }
            }
        }
        int a = 0;
        for (; a < d; ++a) {
            if (++idx[a] < s) break;
            idx[a] = 0;
        }
        if (a == d) break;
    }
    distances_ = std::move(ladder);
    envelope_.resize(best.size());
    double run = 0.0;
    for (std::size_t r = 0; r < best.size(); ++r) {
        run = std::max(run, best[r]);
        envelope_[r] = run;
    }
}

double OmegaStarEstimator::operator()(double delta) const {
    if (delta < 0.0) throw ArgumentError("omega*: delta must be nonnegative");
    const auto it = std::upper_bound(distances_.begin(), distances_.end(), delta);
    if (it == distances_.begin()) return 0.0;
    return envelope_[static_cast<std::size_t>(it - distances_.begin()) - 1];
}

double omega_star_estimate(const TargetFunction& f, double delta, int samples_per_axis) {
    if (delta < 0.0) throw ArgumentError("omega*: delta must be nonnegative");
    if (f.omega_star) return f.omega_star(delta);
    return OmegaStarEstimator(f, samples_per_axis)(delta);
}

int choose_m(const TargetFunction& f, long long N, double epsilon) {
    if (N < 1) throw ConfigError("N must be at least 1");
    check_epsilon(epsilon);
    ModulusField omega = f.omega_star;
    if (!omega) {
        auto est = std::make_shared<OmegaStarEstimator>(f);
        omega = [est](double delta) { return (*est)(delta); };
    }
    const double d = f.dim();
    const double threshold = epsilon / std::pow(static_cast<double>(N), 2.0 / d);
    for (long long m = 1; m <= N; ++m) {
        const double delta = 1.0 / (2.0 * static_cast<double>(m));
        const double lhs = 0.5 * d * d * delta * delta * omega(delta);
        if (lhs <= threshold) return static_cast<int>(m);
    }
    std::ostringstream os;
    os << "no subregion count m <= N = " << N << " satisfies the Taylor-error threshold";
    throw ConfigError(os.str());
}

std::vector<long long> allocate_counts(std::span<const double> weights, long long N, double epsilon) {
    if (N < 1) throw ConfigError("N must be at least 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in [0,1)");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ArgumentError("allocation weights must be positive");
        total += w;
    }
    const double budget = static_cast<double>(N) * (1.0 - epsilon);
    std::vector<long long> n(weights.size());
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const double share = budget * weights[l] / total;
        // Relative guard so exact proportional splits are not floored one below.
        n[l] = static_cast<long long>(std::floor(share * (1.0 + 1e-12)));
        if (n[l] == 0) {
            std::ostringstream os;
            os << "subregion " << l << " receives no boxes (share " << share
               << "); increase N or decrease the number of subregions";
            throw InfeasibleBudgetError(os.str());
        }
    }
    return n;
}

std::vector<AxisBox> subcubes(int dim, int m) {
    if (m < 1) throw ArgumentError("m must be positive");
    std::vector<std::vector<double>> breaks(dim);
    for (int a = 0; a < dim; ++a) {
        for (int i = 0; i <= m; ++i) breaks[a].push_back(static_cast<double>(i) / m);
    }
    return tensor_cells(breaks);
}

std::vector<long long> allocate_counts(const TargetFunction& f, const WeightFunction& w, int m,
                                       long long N, double epsilon) {
    const int d = f.dim();
    const auto cubes = subcubes(d, m);
    std::vector<double> weights(cubes.size());
    std::array<double, kMaxDim * kMaxDim> hess{};
    for (std::size_t l = 0; l < cubes.size(); ++l) {
        const auto c = cubes[l].center();
        f.eval_hessian(c, std::span<double>(hess.data(), d * d));
        double H = 1.0;
        for (int i = 0; i < d; ++i) H *= 0.5 * hess[i * d + i];
        if (H == 0.0) throw SignatureError("Hessian diagonal vanishes at a subregion centre");
        weights[l] = std::sqrt(std::abs(H)) * std::pow(w(c), 0.5 * d);
    }
    return allocate_counts(weights, N, epsilon);
}

std::vector<double> grid_steps(Signature sig, int m, long long n_l) {
    validate_signature(sig);
    if (n_l < 1) throw ArgumentError("grid_steps: n_l must be positive");
    if (m < 1) throw ArgumentError("grid_steps: m must be positive");
    const double d = sig.d, k = sig.k;
    const double volume = 1.0 / (std::pow(static_cast<double>(m), d) * static_cast<double>(n_l));
    const double side = std::pow(volume, 1.0 / d);
    std::vector<double> steps(sig.d, side);
    if (!sig.definite()) {
        const double ratio = (d - k) / k;
        const double pos = side * std::pow(ratio, (d - k) / (2.0 * d));
        const double neg = side * std::pow(ratio, -k / (2.0 * d));
        for (int i = 0; i < sig.d; ++i) steps[i] = i < sig.k ? pos : neg;
    }
    return steps;
}

MeshPlan build_plan_with_m(const TargetFunction& f, const WeightFunction& w, long long N,
                           double epsilon, int m) {
    if (N < 1) throw ConfigError("N must be at least 1");
    check_epsilon(epsilon);
    validate_signature(f.signature);
    const int d = f.dim();
    MeshPlan plan;
    plan.N_requested = N;
    plan.epsilon = epsilon;
    plan.m = m;
    plan.signature = f.signature;

    const auto cubes = subcubes(d, m);
    std::vector<double> weights(cubes.size());
    std::array<double, kMaxDim * kMaxDim> hess{};
    plan.subregions.resize(cubes.size());
    for (std::size_t l = 0; l < cubes.size(); ++l) {
        auto& s = plan.subregions[l];
        s.region = cubes[l];
        s.center = cubes[l].center();
        s.index.resize(d);
        for (std::size_t a = 0, rem = l; a < static_cast<std::size_t>(d); ++a, rem /= m) {
            s.index[a] = static_cast<int>(rem % m);
        }
        f.check_signature_at(s.center);
        f.eval_hessian(s.center, std::span<double>(hess.data(), d * d));
        s.hessian_halves.resize(d);
        s.H = 1.0;
        for (int i = 0; i < d; ++i) {
            s.hessian_halves[i] = 0.5 * hess[i * d + i];
            s.H *= s.hessian_halves[i];
        }
        s.omega = w(s.center);
        if (!(s.omega > 0.0) || !std::isfinite(s.omega)) {
            throw ArgumentError("weight function must be positive at every subregion centre");
        }
        weights[l] = std::sqrt(std::abs(s.H)) * std::pow(s.omega, 0.5 * d);
    }
    const auto n = allocate_counts(weights, N, epsilon);
    for (std::size_t l = 0; l < cubes.size(); ++l) {
        plan.subregions[l].n = n[l];
        plan.subregions[l].steps = grid_steps(f.signature, m, n[l]);
    }
    return plan;
}

MeshPlan build_plan(const TargetFunction& f, const WeightFunction& w, long long N, double epsilon) {
    validate_signature(f.signature);
    const int m = choose_m(f, N, epsilon);
    return build_plan_with_m(f, w, N, epsilon, m);
}

BoxPartition build_partition(const MeshPlan& plan) {
    std::vector<AxisBox> boxes;
    for (const auto& s : plan.subregions) {
        auto part = lattice_partition(s.region, s.steps);
        boxes.insert(boxes.end(), part.boxes().begin(), part.boxes().end());
    }
    return BoxPartition(AxisBox::unit_cube(plan.dim()), std::move(boxes));
}

}  // namespace boxmesh
