#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boxmesh/function.hpp"
#include "boxmesh/geometry.hpp"

namespace boxmesh {

/// One of the m^d congruent subcubes D_l and its local lattice.
struct Subregion {
    std::vector<int> index;              ///< multi-index, axis 0 fastest in the flat id
    AxisBox region;                      ///< D_l, side 1/m
    std::vector<double> center;          ///< x_l
    std::vector<double> hessian_halves;  ///< A_ii = f_{x_i x_i}(x_l) / 2
    double H = 0.0;                      ///< prod A_ii (signed)
    double omega = 0.0;                  ///< Omega(x_l)
    long long n = 0;                     ///< box budget n_l
    std::vector<double> steps;           ///< lattice steps (2h_l ... 2h~_l)
};

/// Every intermediate quantity of the adaptive construction for one N.
struct MeshPlan {
    long long N_requested = 0;
    double epsilon = 0.1;
    int m = 1;
    Signature signature;
    std::vector<Subregion> subregions;

    int dim() const { return signature.d; }
    long long budget_sum() const;
    /// Flat id of the subregion holding x (upper faces closed at the domain).
    int subregion_of(std::span<const double> x) const;
};

/**
 * Sampling lower estimate of omega*(f, delta) = max_{i,j} omega(f_{x_i x_j}, delta).
 *
 * Hessians are sampled on a grid of centres (endpoints included) and at
 * axis-aligned partners x +- t e_a for t on a geometric ladder. The pair set
 * is fixed at construction, so the estimate is the envelope over pairs with
 * |x - x'|_inf <= delta and is nondecreasing in delta.
 */
class OmegaStarEstimator {
public:
    explicit OmegaStarEstimator(const TargetFunction& f, int samples_per_axis = 0);

    double operator()(double delta) const;

private:
    std::vector<double> distances_;  // ascending
    std::vector<double> envelope_;   // running max of |dH| up to distances_[i]
};

/// Analytic omega* when `f` supplies one, otherwise the sampling estimate.
double omega_star_estimate(const TargetFunction& f, double delta, int samples_per_axis = 0);

/// Smallest m >= 1 with (d^2/2)(1/(2m))^2 omega*(f, 1/(2m)) <= epsilon / N^{2/d},
/// found by a linear scan. Throws ConfigError when no m <= N qualifies.
int choose_m(const TargetFunction& f, long long N, double epsilon);

/// n_l = floor(N (1 - epsilon) w_l / sum_j w_j). Throws InfeasibleBudgetError
/// when some n_l is zero.
std::vector<long long> allocate_counts(std::span<const double> weights, long long N, double epsilon);

/// Budgets for the m^d subcubes with weights |H(x_l)|^{1/2} Omega(x_l)^{d/2}.
std::vector<long long> allocate_counts(const TargetFunction& f, const WeightFunction& w, int m,
                                       long long N, double epsilon);

/// Lattice steps for one subregion: each planned cell has volume 1/(m^d n_l)
/// and the error-optimal aspect ratio for signature `sig`.
std::vector<double> grid_steps(Signature sig, int m, long long n_l);

/// Centres of the m^d subcubes, flat id with axis 0 fastest.
std::vector<AxisBox> subcubes(int dim, int m);

/// Runs choose_m, validates the signature at every centre, allocates budgets
/// and lattice steps. Deterministic for fixed inputs.
MeshPlan build_plan(const TargetFunction& f, const WeightFunction& w, long long N, double epsilon);

/// As build_plan, but with m fixed by the caller instead of choose_m.
MeshPlan build_plan_with_m(const TargetFunction& f, const WeightFunction& w, long long N,
                           double epsilon, int m);

/// Union of the per-subregion lattices, ordered by subregion id.
BoxPartition build_partition(const MeshPlan& plan);

}  // namespace boxmesh
