#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boxmesh/geometry.hpp"

namespace boxmesh {

/**
 * Diagonal quadratic form Q(x) = sum_i A_i x_i^2.
 *
 * Coordinates with positive coefficients come first: A_i > 0 for i < k and
 * A_i < 0 for i >= k. Zero coefficients are rejected.
 */
class QuadraticModel {
public:
    QuadraticModel(std::vector<double> coeffs, Signature sig);

    /// Infers k from the sign pattern; still requires positives first.
    static QuadraticModel from_coefficients(std::vector<double> coeffs);
    /// sum_{i<k} x_i^2 - sum_{i>=k} x_i^2
    static QuadraticModel unit(Signature sig);

    const std::vector<double>& coeffs() const { return coeffs_; }
    const Signature& signature() const { return sig_; }
    int dim() const { return sig_.d; }

    double operator()(std::span<const double> x) const;

private:
    std::vector<double> coeffs_;
    Signature sig_;
};

/// gamma_{k,d}: (1/8) k^{k/d} (d-k)^{1-k/d} for 0<k<d, d/8 when k is 0 or d.
double gamma(Signature sig);

/// Sup-norm error of multilinear interpolation of q on prod [-h_i, h_i]:
/// max{ sum_{i<k} A_i h_i^2, sum_{i>=k} |A_i| h_i^2 }.
double quad_error_on_centered_box(const QuadraticModel& q, std::span<const double> halfwidths);

/// Error-minimising half-widths for the unit form of signature `sig` among
/// boxes of the given volume (2^d prod h_i = volume).
std::vector<double> optimal_box_halfwidths(Signature sig, double volume);

/// Optimal half-widths for general coefficients: the unit-form optimum for
/// volume V sqrt(prod |A_i|), with axis i scaled by |A_i|^{-1/2}.
std::vector<double> optimal_box_halfwidths(const QuadraticModel& q, double volume);

/// Minimal interpolation error of q over all boxes of the given volume.
double min_error_fixed_volume(const QuadraticModel& q, double volume);

/// prod_i (2 A_i), the signed product of pure second derivatives.
double hessian_product(const QuadraticModel& q);

// --- brute-force checks (used by `boxmesh verify-quadratic`) ---

/// Max |Q - P| over a tensor grid of `points_per_axis` points on the box,
/// with P the multilinear interpolant of Q at the box corners.
double grid_max_interpolation_error(const QuadraticModel& q, const AxisBox& box,
                                    int points_per_axis);

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct QuadraticSuiteOptions {
    int dim = 2;
    int cases = 200;
    int grid_points = 101;
    int perturbations = 100;
    std::uint64_t seed = 1;
};

/// Closed forms against grid maximisation, shape optimality under
/// volume-preserving perturbations, transformed-shape identity, scaling law
/// and translation invariance. One result per property.
std::vector<PropertyResult> run_quadratic_suite(const QuadraticSuiteOptions& opts);

}  // namespace boxmesh
