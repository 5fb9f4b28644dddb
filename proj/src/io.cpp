#include "boxmesh/io.hpp"

#include <cstdio>

#include "boxmesh/errors.hpp"

namespace boxmesh {

using nlohmann::json;

json box_to_json(const AxisBox& b) { return json{{"lower", b.lower()}, {"upper", b.upper()}}; }

AxisBox box_from_json(const json& j) {
    try {
        return AxisBox(j.at("lower").get<std::vector<double>>(), j.at("upper").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed box JSON: ") + e.what());
    }
}

json partition_to_json(const BoxPartition& p) {
    json boxes = json::array();
    for (const auto& b : p.boxes()) boxes.push_back(box_to_json(b));
    return json{{"domain", box_to_json(p.domain())},
                {"boxes", std::move(boxes)},
                {"metadata", {{"boxes", p.box_count()}, {"d", p.dim()}, {"admissibility", admissibility_metric(p)}}}};
}

BoxPartition partition_from_json(const json& j) {
    if (!j.contains("domain") || !j.contains("boxes")) throw ArgumentError("mesh JSON needs 'domain' and 'boxes'");
    std::vector<AxisBox> boxes;
    for (const auto& b : j.at("boxes")) boxes.push_back(box_from_json(b));
    return BoxPartition(box_from_json(j.at("domain")), std::move(boxes));
}

json plan_to_json(const MeshPlan& plan) {
    json subs = json::array();
    for (const auto& s : plan.subregions) {
        subs.push_back(json{{"center", s.center}, {"H", s.H}, {"omega", s.omega}, {"n", s.n}, {"steps", s.steps}});
    }
    return json{{"metadata",
                 {{"N", plan.N_requested},
                  {"epsilon", plan.epsilon},
                  {"m", plan.m},
                  {"k", plan.signature.k},
                  {"d", plan.signature.d},
                  {"budget_sum", plan.budget_sum()}}},
                {"subregions", std::move(subs)}};
}

json mesh_to_json(const MeshPlan& plan, const BoxPartition& p) {
    json j = partition_to_json(p);
    json pj = plan_to_json(plan);
    j["metadata"].update(pj["metadata"]);
    j["plan"] = std::move(pj);
    return j;
}

json stitched_to_json(const StitchedMesh& sm) {
    json j = mesh_to_json(sm.source_plan, sm.partition);
    json labels = json::array();
    for (const auto& v : sm.vertices) {
        labels.push_back(json{{"x", v.x}, {"label", v.label == VertexLabel::regular ? "regular" : "irregular"}});
    }
    j["vertex_labels"] = std::move(labels);
    j["irregular_box_count"] = sm.irregular_box_count;
    j["metadata"]["irregular_box_count"] = sm.irregular_box_count;
    j["metadata"]["pre_stitch_boxes"] = sm.original.box_count();
    return j;
}

void embed_patches(json& mesh, const MultilinearSpline& s) {
    json patches = json::array();
    for (const auto& p : s.patches()) {
        patches.push_back(std::vector<double>(p.vertex_values().begin(), p.vertex_values().end()));
    }
    mesh["patches"] = std::move(patches);
}

std::string csv_row(const ConvergenceRecord& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%lld,%lld,%.12g,%.12g,%.12g,%.12g,%lld,%.12g,%.12g", r.N_requested,
                  r.boxes_used, r.sup_error, r.normalized, r.constant, r.ratio, r.irregular_count, r.admissibility,
                  r.epsilon);
    return buf;
}

void write_csv(std::ostream& os, std::span<const ConvergenceRecord> records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) os << csv_row(r) << '\n';
}

}  // namespace boxmesh
