#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace boxmesh {

/// Largest supported dimension; patches store 2^d vertex values on the stack.
inline constexpr int kMaxDim = 8;

/// Absolute per-coordinate tolerance for containment and disjointness.
inline constexpr double kGeomTol = 1e-12;

/**
 * Closed axis-aligned box [lower_0, upper_0] x ... x [lower_{d-1}, upper_{d-1}].
 *
 * Construction enforces finite coordinates and a nonempty interior
 * (lower[i] < upper[i] on every axis).
 */
class AxisBox {
public:
    AxisBox() = default;
    AxisBox(std::vector<double> lower, std::vector<double> upper);

    static AxisBox unit_cube(int dim);

    int dim() const { return static_cast<int>(lower_.size()); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    double lower(int i) const { return lower_[i]; }
    double upper(int i) const { return upper_[i]; }
    double width(int i) const { return upper_[i] - lower_[i]; }
    double half_width(int i) const { return 0.5 * (upper_[i] - lower_[i]); }
    double center(int i) const { return 0.5 * (lower_[i] + upper_[i]); }
    std::vector<double> center() const;

    /// Corner selected by bitmask: bit i set means upper[i].
    void corner(unsigned mask, std::span<double> out) const;

    /// Closed containment with absolute slack `tol`.
    bool contains(std::span<const double> x, double tol = kGeomTol) const;

    bool operator==(const AxisBox&) const = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

double box_volume(const AxisBox& b);

/// Diameter under the max-coordinate metric: the longest side.
double box_diameter(const AxisBox& b);

/// Volume of the intersection of two boxes (0 when they only touch).
double overlap_volume(const AxisBox& a, const AxisBox& b);

/// A covering of `domain` by interior-disjoint boxes.
class BoxPartition {
public:
    BoxPartition() = default;
    BoxPartition(AxisBox domain, std::vector<AxisBox> boxes);

    const AxisBox& domain() const { return domain_; }
    const std::vector<AxisBox>& boxes() const { return boxes_; }
    std::size_t box_count() const { return boxes_.size(); }
    int dim() const { return domain_.dim(); }

    /// Checks volume conservation, containment and pairwise disjointness.
    /// Throws ArgumentError naming the first violation.
    void validate() const;

private:
    AxisBox domain_;
    std::vector<AxisBox> boxes_;
};

/// Sign pattern of the Hessian diagonal: k positive entries, then d - k negative.
struct Signature {
    int k = 0;
    int d = 1;

    bool definite() const { return k == 0 || k == d; }
    bool operator==(const Signature&) const = default;
};

/// Throws ArgumentError unless 0 <= k <= d and 1 <= d <= kMaxDim.
void validate_signature(const Signature& sig);

/// Grid lines lo, lo + step, lo + 2 step, ... clipped at hi. Lines within
/// kGeomTol of hi are snapped onto it so no sliver cells appear.
std::vector<double> lattice_breaks(double lo, double hi, double step);

/// Tensor lattice anchored at region.lower with the given per-axis steps;
/// cells overhanging region.upper are clipped. Axis 0 varies fastest.
BoxPartition lattice_partition(const AxisBox& region, std::span<const double> steps);

/// Tensor-product partition from explicit per-axis break lists.
std::vector<AxisBox> tensor_cells(const std::vector<std::vector<double>>& breaks);

/// N^{1/d} * max diam(R): the per-partition term of the admissibility bound.
double admissibility_metric(const BoxPartition& p);

}  // namespace boxmesh
