#pragma once

#include <span>
#include <vector>

#include "boxmesh/function.hpp"
#include "boxmesh/geometry.hpp"
#include "boxmesh/spline.hpp"

namespace boxmesh {

/// Distance of the sampling grid from box faces, so the half-open lookup and
/// the averaging rule never come into play.
inline constexpr double kFaceOffset = 1e-9;

/**
 * Sampled weighted sup norm of f - s.
 *
 * Each box is sampled on its own tensor grid of grid_per_axis points per
 * axis spanning [lower + 1e-9, upper - 1e-9], and the box's own patch is
 * used. The result is a lower bound on the true sup. Grids with
 * grid_per_axis - 1 doubling are nested, so refining never decreases it.
 */
double weighted_sup_error(const TargetFunction& f, const MultilinearSpline& s, const WeightFunction& w,
                          int grid_per_axis, int workers = 1);

struct TaylorCheck {
    double lhs = 0.0;  ///< sampled max |f - P2| over the cube
    double rhs = 0.0;  ///< (d^2/2) (h/2)^2 omega*(f, h/2)
};

/// Compares the quadratic Taylor remainder at `center` over the cube of side
/// h with its modulus-of-continuity bound. samples_per_axis = 0 picks 101 in
/// d <= 2 and fewer above. Throws ArgumentError when the cube leaves [0,1]^d.
TaylorCheck taylor_bound_check(const TargetFunction& f, std::span<const double> center, double h,
                               int samples_per_axis = 0);

/// gamma_{k,d} (int |H|^{1/2} Omega^{d/2})^{2/d} with H the product of the
/// pure second derivatives, by composite midpoint rule on quad_points^d cells.
double theorem_constant(const TargetFunction& f, const WeightFunction& w, int quad_points, int workers = 1);

/// Doubles quad_points from `start` until the relative change is at most
/// rel_tol or the node count would exceed max_nodes.
double theorem_constant_converged(const TargetFunction& f, const WeightFunction& w, double rel_tol = 1e-6,
                                  int start = 16, long long max_nodes = 1LL << 24, int workers = 1);

struct ConvergenceRecord {
    long long N_requested = 0;
    long long boxes_used = 0;
    double sup_error = 0.0;
    double normalized = 0.0;  ///< boxes_used^{2/d} * sup_error
    double constant = 0.0;
    double ratio = 0.0;  ///< normalized / constant
    long long irregular_count = 0;
    double admissibility = 0.0;
    double epsilon = 0.0;
    int m = 0;
    double vertex_deficit = 0.0;  ///< non-interpolated vertex fraction, stitched runs only
};

struct StudyOptions {
    double epsilon = 0.1;
    bool stitched = false;
    int grid_per_axis = 21;
    int workers = 1;
    bool measure_deficit = false;
};

/// One record per N in the ladder, which must be strictly increasing.
/// `constant` is the theorem constant; pass 0 to compute it.
std::vector<ConvergenceRecord> convergence_study(const TargetFunction& f, const WeightFunction& w,
                                                 std::span<const long long> ladder, const StudyOptions& opts,
                                                 double constant = 0.0);

ConvergenceRecord measure_rung(const TargetFunction& f, const WeightFunction& w, long long N,
                               const StudyOptions& opts, double constant);

/// The n^d uniform grid on the unit cube.
BoxPartition uniform_partition(int dim, int n);

/// Record for the interpolating spline on the n^d uniform grid.
ConvergenceRecord measure_uniform(const TargetFunction& f, const WeightFunction& w, int n, int grid_per_axis,
                                  double constant, int workers = 1);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace boxmesh
