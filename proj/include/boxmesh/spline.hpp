#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boxmesh/function.hpp"
#include "boxmesh/geometry.hpp"

namespace boxmesh {

/// A polynomial linear in each variable on one box, stored by its 2^d
/// vertex values. Vertex index bit i set means the upper[i] coordinate.
class MultilinearPatch {
public:
    MultilinearPatch() = default;
    MultilinearPatch(AxisBox box, std::vector<double> vertex_values);

    const AxisBox& box() const { return box_; }
    std::span<const double> vertex_values() const { return values_; }

    /// Tensor-product blend; x is not checked against the box, so points
    /// slightly outside extrapolate linearly.
    double evaluate_unchecked(std::span<const double> x) const;

private:
    AxisBox box_;
    std::vector<double> values_;
};

/// Checked evaluation: throws DomainError when x is outside the box (kGeomTol).
double eval_patch(const MultilinearPatch& p, std::span<const double> x);

/// Patch interpolating f at the 2^d corners of b.
MultilinearPatch interpolate_on_box(const TargetFunction& f, const AxisBox& b);

/// Uniform spatial hash over the domain mapping points to candidate boxes.
class BoxLocator {
public:
    BoxLocator() = default;
    explicit BoxLocator(const BoxPartition& p);

    /// Box owning x under half-open attribution [lower, upper) per axis, with
    /// the domain's upper faces closed. Returns -1 when x is outside.
    int locate(std::span<const AxisBox> boxes, std::span<const double> x) const;

    /// All boxes whose closed extent contains x within tol.
    void incident(std::span<const AxisBox> boxes, std::span<const double> x, double tol,
                  std::vector<int>& out) const;

private:
    std::size_t cell_of(std::span<const double> x) const;

    AxisBox domain_;
    std::vector<int> resolution_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> entries_;
};

/// Multilinear spline over a box partition: one patch per box, and on box
/// boundaries the arithmetic mean of all patches whose closed box holds x.
class MultilinearSpline {
public:
    MultilinearSpline() = default;
    MultilinearSpline(BoxPartition partition, std::vector<MultilinearPatch> patches);

    const BoxPartition& partition() const { return partition_; }
    const std::vector<MultilinearPatch>& patches() const { return patches_; }
    const BoxLocator& locator() const { return locator_; }

    /// With boundary_aware == false the owning box is found by half-open
    /// attribution; with true, points on shared boundaries average every
    /// incident patch. Throws DomainError outside the domain.
    double evaluate(std::span<const double> x, bool boundary_aware = false) const;

private:
    BoxPartition partition_;
    std::vector<MultilinearPatch> patches_;
    BoxLocator locator_;
};

MultilinearSpline build_interpolating_spline(const TargetFunction& f, const BoxPartition& p,
                                             int workers = 1);

double eval_spline(const MultilinearSpline& s, std::span<const double> x,
                   bool boundary_aware = false);

}  // namespace boxmesh
