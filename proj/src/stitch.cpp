#include "boxmesh/stitch.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>

#include "boxmesh/errors.hpp"
#include "boxmesh/parallel.hpp"

namespace boxmesh {

namespace {

using VertexKey = std::array<long long, kMaxDim>;

VertexKey key_of(std::span<const double> x) {
    VertexKey k{};
    for (std::size_t a = 0; a < x.size(); ++a) k[a] = std::llround(x[a] * 1e12);
    return k;
}

bool same_steps(const Subregion& a, const Subregion& b) {
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        if (std::abs(a.steps[i] - b.steps[i]) > 1e-12 * std::max(a.steps[i], b.steps[i])) return false;
    }
    return true;
}

void merge_breaks(std::vector<double>& v, double lo, double hi) {
    v.push_back(lo);
    v.push_back(hi);
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (x < lo - kGeomTol || x > hi + kGeomTol) continue;
        if (!out.empty() && x - out.back() <= kGeomTol) continue;
        out.push_back(x);
    }
    // The snapped list must end exactly at hi.
    if (hi - out.back() <= kGeomTol) out.back() = hi;
    v = std::move(out);
}

}  // namespace

std::size_t StitchedMesh::irregular_vertex_count() const {
    return static_cast<std::size_t>(std::count_if(vertices.begin(), vertices.end(), [](const LabeledVertex& v) {
        return v.label == VertexLabel::irregular;
    }));
}

bool StitchedMesh::on_stitched_face(std::size_t box, std::span<const double> x) const {
    const unsigned faces = stitched_faces[box];
    if (faces == 0) return false;
    const AxisBox& b = original.boxes()[box];
    for (int a = 0; a < b.dim(); ++a) {
        if ((faces >> (2 * a) & 1u) && std::abs(x[a] - b.lower(a)) <= kGeomTol) return true;
        if ((faces >> (2 * a + 1) & 1u) && std::abs(x[a] - b.upper(a)) <= kGeomTol) return true;
    }
    return false;
}

bool on_subregion_interface(const MeshPlan& plan, std::span<const double> x, double tol) {
    for (int a = 0; a < plan.dim(); ++a) {
        const double s = x[a] * plan.m;
        const double j = std::round(s);
        if (j > 0.5 && j < plan.m - 0.5 && std::abs(s - j) <= tol * plan.m) return true;
    }
    return false;
}

StitchedMesh refine_interfaces(const MeshPlan& plan, const BoxPartition& p) {
    const int d = plan.dim();
    const int m = plan.m;
    const auto& boxes = p.boxes();

    std::vector<std::vector<int>> members(plan.subregions.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        members[plan.subregion_of(boxes[i].center())].push_back(static_cast<int>(i));
    }
    // Box pairs facing each other across a face between subregions with
    // different steps.
    struct FacePair {
        int i, j, axis;
    };
    std::vector<FacePair> pairs;
    std::vector<unsigned> stitched(boxes.size(), 0u);
    for (std::size_t l = 0; l < plan.subregions.size(); ++l) {
        const auto& s = plan.subregions[l];
        int stride = 1;
        for (int a = 0; a < d; ++a, stride *= m) {
            if (s.index[a] + 1 >= m) continue;
            const std::size_t q = l + static_cast<std::size_t>(stride);
            if (same_steps(s, plan.subregions[q])) continue;
            const double face = s.region.upper(a);
            std::vector<int> lo_side, hi_side;
            for (int i : members[l]) {
                if (std::abs(boxes[i].upper(a) - face) <= kGeomTol) lo_side.push_back(i);
            }
            for (int j : members[q]) {
                if (std::abs(boxes[j].lower(a) - face) <= kGeomTol) hi_side.push_back(j);
            }
            for (int i : lo_side) {
                stitched[i] |= 1u << (2 * a + 1);
                for (int j : hi_side) {
                    bool overlap = true;
                    for (int t = 0; t < d && overlap; ++t) {
                        if (t == a) continue;
                        overlap = std::min(boxes[i].upper(t), boxes[j].upper(t)) -
                                      std::max(boxes[i].lower(t), boxes[j].lower(t)) > kGeomTol;
                    }
                    if (overlap) pairs.push_back({i, j, a});
                }
            }
            for (int j : hi_side) stitched[j] |= 1u << (2 * a);
        }
    }

    // splits[i][t]: interior breaks of box i along axis t. Each side of a
    // stitched face must carry the other's nodes on the common part of the
    // face; a box touching several stitched faces passes breaks on between
    // them, so iterate to a fixed point.
    std::vector<std::vector<std::vector<double>>> splits(boxes.size());
    auto insert = [&](int i, int t, double x) {
        const AxisBox& b = boxes[i];
        if (!(x > b.lower(t) + kGeomTol && x < b.upper(t) - kGeomTol)) return false;
        auto& sp = splits[i];
        if (sp.empty()) sp.resize(d);
        auto& v = sp[t];
        const auto it = std::lower_bound(v.begin(), v.end(), x - kGeomTol);
        if (it != v.end() && *it <= x + kGeomTol) return false;
        v.insert(it, x);
        return true;
    };
    auto share = [&](int from, int to, int axis) {
        bool changed = false;
        const AxisBox& b = boxes[from];
        for (int t = 0; t < d; ++t) {
            if (t == axis) continue;
            changed = insert(to, t, b.lower(t)) | changed;
            changed = insert(to, t, b.upper(t)) | changed;
            if (splits[from].empty()) continue;
            const std::vector<double> own = splits[from][t];
            for (double x : own) changed = insert(to, t, x) | changed;
        }
        return changed;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& fp : pairs) {
            changed = share(fp.j, fp.i, fp.axis) | changed;
            changed = share(fp.i, fp.j, fp.axis) | changed;
        }
    }

    StitchedMesh sm;
    sm.source_plan = plan;
    sm.original = p;
    sm.stitched_faces = stitched;
    std::vector<AxisBox> refined;
    refined.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const AxisBox& b = boxes[i];
        bool split = false;
        if (!splits[i].empty()) {
            for (const auto& v : splits[i]) split = split || !v.empty();
        }
        if (!split) {
            refined.push_back(b);
            sm.parent.push_back(static_cast<int>(i));
            continue;
        }
        std::vector<std::vector<double>> cell_breaks(d);
        for (int t = 0; t < d; ++t) {
            cell_breaks[t] = splits[i][t];
            merge_breaks(cell_breaks[t], b.lower(t), b.upper(t));
        }
        auto children = tensor_cells(cell_breaks);
        sm.irregular_box_count += static_cast<long long>(children.size());
        for (auto& c : children) {
            refined.push_back(std::move(c));
            sm.parent.push_back(static_cast<int>(i));
        }
    }
    sm.partition = BoxPartition(p.domain(), std::move(refined));

    std::map<VertexKey, std::size_t> regular;
    std::array<double, kMaxDim> v{};
    const std::span<double> vs(v.data(), d);
    const unsigned corners = 1u << d;
    for (const auto& b : boxes) {
        for (unsigned mask = 0; mask < corners; ++mask) {
            b.corner(mask, vs);
            regular.emplace(key_of(vs), 0);
        }
    }
    std::map<VertexKey, LabeledVertex> all;
    const auto& refined_boxes = sm.partition.boxes();
    for (std::size_t c = 0; c < refined_boxes.size(); ++c) {
        for (unsigned mask = 0; mask < corners; ++mask) {
            refined_boxes[c].corner(mask, vs);
            const auto k = key_of(vs);
            const bool on_face = sm.on_stitched_face(static_cast<std::size_t>(sm.parent[c]), vs);
            auto it = all.find(k);
            if (it != all.end()) {
                it->second.on_interface = it->second.on_interface || on_face;
                continue;
            }
            LabeledVertex lv;
            lv.x.assign(v.begin(), v.begin() + d);
            lv.label = regular.count(k) ? VertexLabel::regular : VertexLabel::irregular;
            lv.on_interface = on_face;
            all.emplace(k, std::move(lv));
        }
    }
    sm.vertices.reserve(all.size());
    for (auto& [k, lv] : all) sm.vertices.push_back(std::move(lv));
    return sm;
}

MultilinearSpline build_quasi_interpolating_spline(const TargetFunction& f, const StitchedMesh& sm,
                                                   int workers) {
    const int d = sm.partition.dim();
    const auto& orig = sm.original.boxes();
    std::vector<MultilinearPatch> parents(orig.size());
    parallel_chunks(orig.size(), workers, [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) parents[i] = interpolate_on_box(f, orig[i]);
    });

    const auto& boxes = sm.partition.boxes();
    std::vector<MultilinearPatch> patches(boxes.size());
    parallel_chunks(boxes.size(), workers, [&](std::size_t begin, std::size_t end, int) {
        std::array<double, kMaxDim> v{};
        const std::span<double> vs(v.data(), d);
        for (std::size_t i = begin; i < end; ++i) {
            const auto& parent = parents[sm.parent[i]];
            if (parent.box() == boxes[i]) {
                patches[i] = parent;
                continue;
            }
            std::vector<double> values(std::size_t{1} << d);
            for (unsigned mask = 0; mask < values.size(); ++mask) {
                boxes[i].corner(mask, vs);
                values[mask] = sm.on_stitched_face(static_cast<std::size_t>(sm.parent[i]), vs)
                                  ? f(vs)
                                  : parent.evaluate_unchecked(vs);
            }
            patches[i] = MultilinearPatch(boxes[i], std::move(values));
        }
    });
    return MultilinearSpline(sm.partition, std::move(patches));
}

JumpReport continuity_report(const MultilinearSpline& s, const MeshPlan& plan, int samples_per_face,
                             int workers) {
    if (samples_per_face < 1) throw ArgumentError("continuity_report: samples_per_face must be positive");
    const auto& part = s.partition();
    const auto& boxes = part.boxes();
    const int d = part.dim();
    const int per_axis =
        d == 1 ? 1 : std::max(1, static_cast<int>(std::lround(std::pow(samples_per_face, 1.0 / (d - 1)))));

    struct Partial {
        double interface = 0.0, interior = 0.0;
        std::size_t faces = 0;
    };
    const int w = std::max(1, workers);
    std::vector<Partial> partial(static_cast<std::size_t>(w));
    parallel_chunks(boxes.size(), w, [&](std::size_t begin, std::size_t end, int worker) {
        Partial acc;
        std::array<double, kMaxDim> y{}, probe{};
        std::array<int, kMaxDim> idx{};
        const std::span<const double> ys(y.data(), d), ps(probe.data(), d);
        for (std::size_t i = begin; i < end; ++i) {
            const AxisBox& b = boxes[i];
            for (int a = 0; a < d; ++a) {
                if (b.upper(a) >= part.domain().upper(a) - kGeomTol) continue;
                const double plane = b.upper(a) * plan.m;
                const bool interface = std::abs(plane - std::round(plane)) <= 1e-9 * plan.m;
                ++acc.faces;
                double worst = 0.0;
                idx.fill(0);
                while (true) {
                    for (int t = 0; t < d; ++t) {
                        y[t] = t == a ? b.upper(a) : b.lower(t) + b.width(t) * (idx[t] + 0.5) / per_axis;
                    }
                    probe = y;
                    probe[a] += 1e-10;
                    const int nb = s.locator().locate(boxes, ps);
                    if (nb >= 0 && static_cast<std::size_t>(nb) != i) {
                        const double jump = std::abs(s.patches()[i].evaluate_unchecked(ys) -
                                                     s.patches()[nb].evaluate_unchecked(ys));
                        worst = std::max(worst, jump);
                    }
                    int t = 0;
                    for (; t < d; ++t) {
                        if (t == a) continue;
                        if (++idx[t] < per_axis) break;
                        idx[t] = 0;
                    }
                    if (t == d) break;
                }
                (interface ? acc.interface : acc.interior) =
                    std::max(interface ? acc.interface : acc.interior, worst);
            }
        }
        partial[static_cast<std::size_t>(worker)] = acc;
    });
    JumpReport r;
    for (const auto& p : partial) {
        r.max_interface_jump = std::max(r.max_interface_jump, p.interface);
        r.max_interior_jump = std::max(r.max_interior_jump, p.interior);
        r.faces += p.faces;
    }
    r.max_jump = std::max(r.max_interface_jump, r.max_interior_jump);
    return r;
}

JumpReport continuity_report(const MultilinearSpline& s, const StitchedMesh& sm, int samples_per_face,
                             int workers) {
    return continuity_report(s, sm.source_plan, samples_per_face, workers);
}

InterpolationDeficit interpolation_deficit(const TargetFunction& f, const MultilinearSpline& s, double tol) {
    const int d = s.partition().dim();
    std::map<VertexKey, std::vector<double>> vertices;
    std::array<double, kMaxDim> v{};
    const std::span<double> vs(v.data(), d);
    for (const auto& b : s.partition().boxes()) {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            b.corner(mask, vs);
            auto k = key_of(vs);
            if (!vertices.count(k)) vertices.emplace(k, std::vector<double>(v.begin(), v.begin() + d));
        }
    }
    InterpolationDeficit out;
    out.total = vertices.size();
    for (const auto& [k, x] : vertices) {
        const double fv = f(x);
        const double sv = s.evaluate(x, true);
        if (std::abs(sv - fv) > tol * std::max(1.0, std::abs(fv))) ++out.non_interpolated;
    }
    return out;
}

}  // namespace boxmesh
