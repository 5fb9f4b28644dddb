#include <algorithm>
#include <sstream>

#include "boxmesh/builtins.hpp"
#include "boxmesh/errors.hpp"
#include "boxmesh/io.hpp"
#include "doctest.h"

using namespace boxmesh;

TEST_CASE("mesh JSON layout and round trip") {
    const auto f = make_builtin("exp-elliptic", {2, 2});
    const auto plan = build_plan(f, make_weight("one"), 2000, 0.1);
    const auto p = build_partition(plan);
    const auto j = mesh_to_json(plan, p);
    CHECK(j.at("domain").at("lower") == std::vector<double>{0, 0});
    CHECK(j.at("boxes").size() == p.box_count());
    const auto& meta = j.at("metadata");
    CHECK(meta.at("N") == 2000);
    CHECK(meta.at("m") == plan.m);
    CHECK(meta.at("k") == 2);
    CHECK(meta.at("d") == 2);
    CHECK(meta.at("epsilon") == 0.1);
    const auto& subs = j.at("plan").at("subregions");
    REQUIRE(subs.size() == plan.subregions.size());
    for (const char* key : {"center", "H", "omega", "n", "steps"}) CHECK(subs[0].contains(key));
    const auto back = partition_from_json(nlohmann::json::parse(j.dump()));
    REQUIRE(back.box_count() == p.box_count());
    for (std::size_t i = 0; i < p.box_count(); ++i) CHECK(back.boxes()[i] == p.boxes()[i]);
    CHECK(mesh_to_json(plan, build_partition(build_plan(f, make_weight("one"), 2000, 0.1))).dump() == j.dump());
    CHECK_THROWS_AS(partition_from_json(nlohmann::json::object()), ArgumentError);
    CHECK_THROWS_AS(box_from_json(nlohmann::json{{"lower", {0}}}), ArgumentError);
}

TEST_CASE("stitched JSON carries labels") {
    const auto f = make_builtin("exp-saddle", {1, 2});
    const auto plan = build_plan(f, make_weight("one"), 2000, 0.1);
    const auto sm = refine_interfaces(plan, build_partition(plan));
    auto j = stitched_to_json(sm);
    CHECK(j.at("irregular_box_count") == sm.irregular_box_count);
    CHECK(j.at("vertex_labels").size() == sm.vertices.size());
    std::size_t irregular = 0;
    for (const auto& v : j.at("vertex_labels")) irregular += v.at("label") == "irregular";
    CHECK(irregular == sm.irregular_vertex_count());
    embed_patches(j, build_quasi_interpolating_spline(f, sm));
    CHECK(j.at("patches").size() == sm.partition.box_count());
    CHECK(j.at("patches")[0].size() == 4);
}

TEST_CASE("convergence CSV") {
    ConvergenceRecord r;
    r.N_requested = 10000;
    r.boxes_used = 10201;
    r.sup_error = 1.0 / 3.0;
    r.normalized = 2.0 / 3.0;
    r.constant = 0.5;
    r.ratio = 4.0 / 3.0;
    r.irregular_count = 7;
    r.admissibility = 1.01;
    r.epsilon = 0.01;
    CHECK(csv_row(r) == "10000,10201,0.333333333333,0.666666666667,0.5,1.33333333333,7,1.01,0.01");
    std::ostringstream os;
    const ConvergenceRecord rs[] = {r, r};
    write_csv(os, rs);
    const std::string text = os.str();
    CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
