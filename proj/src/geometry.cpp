#include "boxmesh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "boxmesh/errors.hpp"

namespace boxmesh {

AxisBox::AxisBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size() || lower_.empty()) {
        throw ArgumentError("AxisBox: lower/upper dimension mismatch");
    }
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
            throw ArgumentError("AxisBox: non-finite coordinate");
        }
        if (!(lower_[i] < upper_[i])) {
            std::ostringstream os;
            os << "AxisBox: empty interior on axis " << i << " [" << lower_[i] << ", "
               << upper_[i] << "]";
            throw ArgumentError(os.str());
        }
    }
}

AxisBox AxisBox::unit_cube(int dim) {
    return AxisBox(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

std::vector<double> AxisBox::center() const {
    std::vector<double> c(lower_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
    return c;
}

void AxisBox::corner(unsigned mask, std::span<double> out) const {
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        out[i] = (mask >> i) & 1u ? upper_[i] : lower_[i];
    }
}

bool AxisBox::contains(std::span<const double> x, double tol) const {
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
    }
    return true;
}

double box_volume(const AxisBox& b) {
    double v = 1.0;
    for (int i = 0; i < b.dim(); ++i) v *= b.width(i);
    return v;
}

double box_diameter(const AxisBox& b) {
    double d = 0.0;
    for (int i = 0; i < b.dim(); ++i) d = std::max(d, b.width(i));
    return d;
}

double overlap_volume(const AxisBox& a, const AxisBox& b) {
    double v = 1.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double w = std::min(a.upper(i), b.upper(i)) - std::max(a.lower(i), b.lower(i));
        if (w <= 0.0) return 0.0;
        v *= w;
    }
    return v;
}

BoxPartition::BoxPartition(AxisBox domain, std::vector<AxisBox> boxes)
    : domain_(std::move(domain)), boxes_(std::move(boxes)) {
    for (const auto& b : boxes_) {
        if (b.dim() != domain_.dim()) {
            throw ArgumentError("BoxPartition: box dimension differs from domain");
        }
    }
}

void BoxPartition::validate() const {
    const double dom_vol = box_volume(domain_);
    double total = 0.0;
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
        const auto& b = boxes_[i];
        for (int a = 0; a < dim(); ++a) {
            if (b.lower(a) < domain_.lower(a) - kGeomTol || b.upper(a) > domain_.upper(a) + kGeomTol) {
                std::ostringstream os;
                os << "BoxPartition: box " << i << " leaves the domain on axis " << a;
                throw ArgumentError(os.str());
            }
        }
        total += box_volume(b);
    }
    if (std::abs(total - dom_vol) > 1e-9 * dom_vol) {
        std::ostringstream os;
        os.precision(17);
        os << "BoxPartition: box volumes sum to " << total << ", domain volume " << dom_vol;
        throw ArgumentError(os.str());
    }

    // Sweep along axis 0: only boxes whose axis-0 ranges overlap can intersect.
    std::vector<std::size_t> order(boxes_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return boxes_[a].lower(0) < boxes_[b].lower(0);
    });
    const double overlap_tol = 1e-12 * dom_vol;
    for (std::size_t s = 0; s < order.size(); ++s) {
        const auto& a = boxes_[order[s]];
        for (std::size_t t = s + 1; t < order.size(); ++t) {
            const auto& b = boxes_[order[t]];
            if (b.lower(0) >= a.upper(0) - kGeomTol) break;
            if (overlap_volume(a, b) > overlap_tol) {
                std::ostringstream os;
                os << "BoxPartition: boxes " << order[s] << " and " << order[t] << " overlap";
                throw ArgumentError(os.str());
            }
        }
    }
}

void validate_signature(const Signature& sig) {
    if (sig.d < 1 || sig.d > kMaxDim) {
        throw ArgumentError("signature: dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
    }
    if (sig.k < 0 || sig.k > sig.d) {
        throw ArgumentError("signature: k must satisfy 0 <= k <= d");
    }
}

std::vector<double> lattice_breaks(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ArgumentError("lattice step must be positive and finite");
    }
    std::vector<double> breaks{lo};
    for (long long L = 1;; ++L) {
        const double x = lo + static_cast<double>(L) * step;
        if (x >= hi - kGeomTol) break;
        breaks.push_back(x);
    }
    breaks.push_back(hi);
    return breaks;
}

std::vector<AxisBox> tensor_cells(const std::vector<std::vector<double>>& breaks) {
    const int d = static_cast<int>(breaks.size());
    std::vector<std::size_t> counts(d);
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) {
        counts[a] = breaks[a].size() - 1;
        total *= counts[a];
    }
    std::vector<AxisBox> cells;
    cells.reserve(total);
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> lo(d), hi(d);
    for (std::size_t c = 0; c < total; ++c) {
        for (int a = 0; a < d; ++a) {
            lo[a] = breaks[a][idx[a]];
            hi[a] = breaks[a][idx[a] + 1];
        }
        cells.emplace_back(lo, hi);
        for (int a = 0; a < d; ++a) {
            if (++idx[a] < counts[a]) break;
            idx[a] = 0;
        }
    }
    return cells;
}

BoxPartition lattice_partition(const AxisBox& region, std::span<const double> steps) {
    if (static_cast<int>(steps.size()) != region.dim()) {
        throw ArgumentError("lattice_partition: steps dimension mismatch");
    }
    std::vector<std::vector<double>> breaks(region.dim());
    for (int a = 0; a < region.dim(); ++a) {
        breaks[a] = lattice_breaks(region.lower(a), region.upper(a), steps[a]);
    }
    return BoxPartition(region, tensor_cells(breaks));
}

double admissibility_metric(const BoxPartition& p) {
    double max_diam = 0.0;
    for (const auto& b : p.boxes()) max_diam = std::max(max_diam, box_diameter(b));
    const double n = static_cast<double>(p.box_count());
    return std::pow(n, 1.0 / p.dim()) * max_diam;
}

}  // namespace boxmesh
