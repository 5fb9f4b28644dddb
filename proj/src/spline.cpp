#include "boxmesh/spline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "boxmesh/errors.hpp"
#include "boxmesh/parallel.hpp"

namespace boxmesh {

MultilinearPatch::MultilinearPatch(AxisBox box, std::vector<double> vertex_values)
    : box_(std::move(box)), values_(std::move(vertex_values)) {
    if (values_.size() != (std::size_t{1} << box_.dim())) {
        throw ArgumentError("MultilinearPatch: expected 2^d vertex values");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw ArgumentError("MultilinearPatch: non-finite vertex value");
    }
}

double MultilinearPatch::evaluate_unchecked(std::span<const double> x) const {
    const int d = box_.dim();
    std::array<double, std::size_t{1} << kMaxDim> buf;
    std::size_t n = values_.size();
    std::copy(values_.begin(), values_.end(), buf.begin());
    // Collapse the highest axis first: entries c and c + n/2 differ only in bit d-1.
    for (int a = d - 1; a >= 0; --a) {
        const double t = (x[a] - box_.lower(a)) / box_.width(a);
        n >>= 1;
        for (std::size_t c = 0; c < n; ++c) {
            buf[c] = (1.0 - t) * buf[c] + t * buf[c + n];
        }
    }
    return buf[0];
}

double eval_patch(const MultilinearPatch& p, std::span<const double> x) {
    if (!p.box().contains(x)) throw DomainError("eval_patch: point outside patch box");
    return p.evaluate_unchecked(x);
}

MultilinearPatch interpolate_on_box(const TargetFunction& f, const AxisBox& b) {
    const int d = b.dim();
    if (d != f.dim()) throw ArgumentError("interpolate_on_box: dimension mismatch");
    std::vector<double> values(std::size_t{1} << d);
    std::array<double, kMaxDim> v{};
    const std::span<double> vs(v.data(), d);
    for (unsigned mask = 0; mask < values.size(); ++mask) {
        b.corner(mask, vs);
        const double fv = f(vs);
        if (!std::isfinite(fv)) {
            std::ostringstream os;
            os.precision(17);
            os << "non-finite value " << fv << " at vertex (";
            for (int a = 0; a < d; ++a) os << (a ? ", " : "") << v[a];
            os << ")";
            throw EvaluationError(os.str());
        }
        values[mask] = fv;
    }
    return MultilinearPatch(b, std::move(values));
}

BoxLocator::BoxLocator(const BoxPartition& p) : domain_(p.domain()) {
    const int d = p.dim();
    const double target = std::max<double>(1.0, 2.0 * static_cast<double>(p.box_count()));
    const double per_axis = std::pow(target, 1.0 / d);
    resolution_.assign(d, 1);
    double geo = 1.0;
    for (int a = 0; a < d; ++a) geo *= domain_.width(a);
    geo = std::pow(geo, 1.0 / d);
    std::size_t cells = 1;
    for (int a = 0; a < d; ++a) {
        resolution_[a] = std::max(1, static_cast<int>(std::lround(per_axis * domain_.width(a) / geo)));
        cells *= static_cast<std::size_t>(resolution_[a]);
    }

    // Two passes over the boxes: count per cell, then fill (CSR layout).
    std::vector<std::array<int, 2 * kMaxDim>> ranges(p.box_count());
    offsets_.assign(cells + 1, 0);
    auto cell_range = [&](const AxisBox& b, std::array<int, 2 * kMaxDim>& r) {
        for (int a = 0; a < d; ++a) {
            const double scale = resolution_[a] / domain_.width(a);
            int lo = static_cast<int>(std::floor((b.lower(a) - kGeomTol - domain_.lower(a)) * scale));
            int hi = static_cast<int>(std::floor((b.upper(a) + kGeomTol - domain_.lower(a)) * scale));
            r[2 * a] = std::clamp(lo, 0, resolution_[a] - 1);
            r[2 * a + 1] = std::clamp(hi, 0, resolution_[a] - 1);
        }
    };
    auto for_each_cell = [&](const std::array<int, 2 * kMaxDim>& r, auto&& fn) {
        std::array<int, kMaxDim> idx{};
        for (int a = 0; a < d; ++a) idx[a] = r[2 * a];
        while (true) {
            std::size_t flat = 0, stride = 1;
            for (int a = 0; a < d; ++a) {
                flat += static_cast<std::size_t>(idx[a]) * stride;
                stride *= static_cast<std::size_t>(resolution_[a]);
            }
            fn(flat);
            int a = 0;
            for (; a < d; ++a) {
                if (++idx[a] <= r[2 * a + 1]) break;
                idx[a] = r[2 * a];
            }
            if (a == d) break;
        }
    };
    for (std::size_t i = 0; i < p.box_count(); ++i) {
        cell_range(p.boxes()[i], ranges[i]);
        for_each_cell(ranges[i], [&](std::size_t c) { ++offsets_[c + 1]; });
    }
    for (std::size_t c = 0; c < cells; ++c) offsets_[c + 1] += offsets_[c];
    entries_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < p.box_count(); ++i) {
        for_each_cell(ranges[i], [&](std::size_t c) { entries_[fill[c]++] = static_cast<std::uint32_t>(i); });
    }
}

std::size_t BoxLocator::cell_of(std::span<const double> x) const {
    std::size_t flat = 0, stride = 1;
    for (int a = 0; a < domain_.dim(); ++a) {
        const double scale = resolution_[a] / domain_.width(a);
        const int i = std::clamp(static_cast<int>(std::floor((x[a] - domain_.lower(a)) * scale)), 0,
                                 resolution_[a] - 1);
        flat += static_cast<std::size_t>(i) * stride;
        stride *= static_cast<std::size_t>(resolution_[a]);
    }
    return flat;
}

int BoxLocator::locate(std::span<const AxisBox> boxes, std::span<const double> x) const {
    if (!domain_.contains(x, kGeomTol)) return -1;
    const int d = domain_.dim();
    const std::size_t c = cell_of(x);
    int closed_match = -1;
    for (std::uint32_t k = offsets_[c]; k < offsets_[c + 1]; ++k) {
        const AxisBox& b = boxes[entries_[k]];
        bool inside = true;
        for (int a = 0; a < d && inside; ++a) {
            const bool top_closed = b.upper(a) >= domain_.upper(a) - kGeomTol;
            inside = x[a] >= b.lower(a) && (x[a] < b.upper(a) || (top_closed && x[a] <= b.upper(a) + kGeomTol));
        }
        if (inside) return static_cast<int>(entries_[k]);
        if (closed_match < 0 && b.contains(x)) closed_match = static_cast<int>(entries_[k]);
    }
    // Rounding can leave a point a few ulps outside every half-open cell.
    return closed_match;
}

void BoxLocator::incident(std::span<const AxisBox> boxes, std::span<const double> x, double tol,
                          std::vector<int>& out) const {
    out.clear();
    if (!domain_.contains(x, tol)) return;
    const std::size_t c = cell_of(x);
    for (std::uint32_t k = offsets_[c]; k < offsets_[c + 1]; ++k) {
        if (boxes[entries_[k]].contains(x, tol)) out.push_back(static_cast<int>(entries_[k]));
    }
}

MultilinearSpline::MultilinearSpline(BoxPartition partition, std::vector<MultilinearPatch> patches)
    : partition_(std::move(partition)), patches_(std::move(patches)) {
    if (patches_.size() != partition_.box_count()) {
        throw ArgumentError("MultilinearSpline: patch count differs from box count");
    }
    for (std::size_t i = 0; i < patches_.size(); ++i) {
        if (!(patches_[i].box() == partition_.boxes()[i])) {
            throw ArgumentError("MultilinearSpline: patch box differs from partition box");
        }
    }
    locator_ = BoxLocator(partition_);
}

double MultilinearSpline::evaluate(std::span<const double> x, bool boundary_aware) const {
    const auto& boxes = partition_.boxes();
    if (!boundary_aware) {
        const int i = locator_.locate(boxes, x);
        if (i < 0) throw DomainError("eval_spline: point outside domain");
        return patches_[i].evaluate_unchecked(x);
    }
    thread_local std::vector<int> hits;
    locator_.incident(boxes, x, kGeomTol, hits);
    if (hits.empty()) throw DomainError("eval_spline: point outside domain");
    double sum = 0.0;
    for (int i : hits) sum += patches_[i].evaluate_unchecked(x);
    return sum / static_cast<double>(hits.size());
}

MultilinearSpline build_interpolating_spline(const TargetFunction& f, const BoxPartition& p,
                                             int workers) {
    std::vector<MultilinearPatch> patches(p.box_count());
    parallel_chunks(p.box_count(), workers, [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) patches[i] = interpolate_on_box(f, p.boxes()[i]);
    });
    return MultilinearSpline(p, std::move(patches));
}

double eval_spline(const MultilinearSpline& s, std::span<const double> x, bool boundary_aware) {
    return s.evaluate(x, boundary_aware);
}

}  // namespace boxmesh
