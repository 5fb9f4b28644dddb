#pragma once

#include <functional>
#include <span>
#include <string>

#include "boxmesh/geometry.hpp"

namespace boxmesh {

using ScalarField = std::function<double(std::span<const double>)>;
/// Writes the row-major d x d matrix of second derivatives into `out`.
using HessianField = std::function<void(std::span<const double>, std::span<double>)>;
/// Writes the d first derivatives into `out`.
using GradientField = std::function<void(std::span<const double>, std::span<double>)>;
/// Modulus of continuity delta -> omega*(f, delta).
using ModulusField = std::function<double(double)>;

/// Step for central second differences: eps^{1/4}, scaled by max(1, |x_i|).
inline constexpr double kHessianFdStep = 1.220703125e-4;
/// Step for central first differences: eps^{1/3}.
inline constexpr double kGradientFdStep = 6.0554544523933395e-6;

/**
 * A C^2 function on [0,1]^d with a declared Hessian-sign signature.
 *
 * `hessian`, `gradient` and `omega_star` are optional; empty members fall
 * back to finite differences (derivatives) or the sampling estimator
 * (modulus, see OmegaStarEstimator).
 */
struct TargetFunction {
    std::string name;
    Signature signature;
    ScalarField value;
    HessianField hessian;
    GradientField gradient;
    ModulusField omega_star;

    int dim() const { return signature.d; }
    double operator()(std::span<const double> x) const { return value(x); }

    /// Analytic Hessian when available, central differences otherwise.
    void eval_hessian(std::span<const double> x, std::span<double> out) const;
    void eval_gradient(std::span<const double> x, std::span<double> out) const;

    /// Throws SignatureError when the Hessian diagonal at x has the wrong signs.
    void check_signature_at(std::span<const double> x) const;
};

/// Positive weight Omega of the weighted sup norm.
struct WeightFunction {
    std::string name;
    ScalarField value;

    double operator()(std::span<const double> x) const { return value(x); }

    static WeightFunction constant(double c);
};

void finite_difference_hessian(const ScalarField& f, std::span<const double> x, int dim,
                               std::span<double> out);
void finite_difference_gradient(const ScalarField& f, std::span<const double> x, int dim,
                                std::span<double> out);

}  // namespace boxmesh
