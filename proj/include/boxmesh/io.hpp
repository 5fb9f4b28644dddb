#pragma once

#include "json.hpp"
#include <ostream>
#include <span>
#include <string>

#include "boxmesh/analysis.hpp"
#include "boxmesh/geometry.hpp"
#include "boxmesh/meshgen.hpp"
#include "boxmesh/spline.hpp"
#include "boxmesh/stitch.hpp"

namespace boxmesh {

nlohmann::json box_to_json(const AxisBox& b);
AxisBox box_from_json(const nlohmann::json& j);

/// {"domain", "boxes", "metadata"}; metadata holds the box count and the
/// admissibility metric.
nlohmann::json partition_to_json(const BoxPartition& p);
BoxPartition partition_from_json(const nlohmann::json& j);

/// {"metadata": {N, epsilon, m, k, d}, "subregions": [{center, H, omega, n, steps}]}
nlohmann::json plan_to_json(const MeshPlan& plan);

/// Partition JSON with the plan under "plan" and plan metadata merged in.
nlohmann::json mesh_to_json(const MeshPlan& plan, const BoxPartition& p);

/// Mesh JSON of the refined partition plus "vertex_labels" and
/// "irregular_box_count".
nlohmann::json stitched_to_json(const StitchedMesh& sm);

/// Adds "patches": per-box vertex values in box order.
void embed_patches(nlohmann::json& mesh, const MultilinearSpline& s);

inline constexpr const char* kCsvHeader = "N,boxes,sup_error,normalized,constant,ratio,irregular,admissibility,epsilon";

/// One CSV row (no newline), reals with 12 significant digits.
std::string csv_row(const ConvergenceRecord& r);
void write_csv(std::ostream& os, std::span<const ConvergenceRecord> records);

}  // namespace boxmesh
