#pragma once

#include <cstddef>
#include <vector>

#include "boxmesh/function.hpp"
#include "boxmesh/geometry.hpp"
#include "boxmesh/meshgen.hpp"
#include "boxmesh/spline.hpp"

namespace boxmesh {

enum class VertexLabel { regular, irregular };

struct LabeledVertex {
    std::vector<double> x;
    VertexLabel label = VertexLabel::regular;
    bool on_interface = false;  ///< lies on a stitched face
};

/**
 * The pre-stitch partition after interface refinement.
 *
 * Every refined box lies in exactly one pre-stitch box (`parent`). Vertices
 * of the pre-stitch partition are regular; vertices introduced by the
 * refinement are irregular. `vertices` is sorted lexicographically.
 */
struct StitchedMesh {
    BoxPartition partition;
    std::vector<int> parent;
    std::vector<LabeledVertex> vertices;
    long long irregular_box_count = 0;
    MeshPlan source_plan;
    BoxPartition original;
    /// Per pre-stitch box: bit 2a is the lower face along axis a, bit 2a+1
    /// the upper one; set when that face was refined against a neighbour.
    std::vector<unsigned> stitched_faces;

    std::size_t irregular_vertex_count() const;
    bool on_stitched_face(std::size_t box, std::span<const double> x) const;
};

/// True when x lies on a face shared by two subregions of the plan.
bool on_subregion_interface(const MeshPlan& plan, std::span<const double> x, double tol = 1e-9);

/// Subdivides the boxes meeting each face between subregions with different
/// lattices so that both sides carry the common refinement of the face.
/// One layer of boxes per side is touched. A box meeting several such faces
/// is split at the union of their breaks, and the union is passed back
/// across each face until both sides agree.
StitchedMesh refine_interfaces(const MeshPlan& plan, const BoxPartition& p);

/**
 * Continuous quasi-interpolant on the stitched mesh.
 *
 * A refined box interpolates its parent's patch at its corners, except at
 * corners on a stitched face of the parent, which take f. Regular vertices
 * therefore interpolate f; irregular ones off the stitched faces do not.
 */
MultilinearSpline build_quasi_interpolating_spline(const TargetFunction& f, const StitchedMesh& sm,
                                                   int workers = 1);

struct JumpReport {
    double max_jump = 0.0;
    double max_interface_jump = 0.0;  ///< faces on subregion interfaces
    double max_interior_jump = 0.0;   ///< faces inside a subregion
    std::size_t faces = 0;
};

/// Samples every interior box face at ~samples_per_face points and compares
/// the patch on each side. Faces are classified against the plan's
/// subregion grid.
JumpReport continuity_report(const MultilinearSpline& s, const MeshPlan& plan, int samples_per_face,
                             int workers = 1);
JumpReport continuity_report(const MultilinearSpline& s, const StitchedMesh& sm, int samples_per_face,
                             int workers = 1);

struct InterpolationDeficit {
    std::size_t non_interpolated = 0;
    std::size_t total = 0;
    double fraction() const { return total ? static_cast<double>(non_interpolated) / total : 0.0; }
};

/// Counts partition vertices where the boundary-averaged spline value differs
/// from f by more than tol * max(1, |f|).
InterpolationDeficit interpolation_deficit(const TargetFunction& f, const MultilinearSpline& s,
                                           double tol = 1e-12);

}  // namespace boxmesh
