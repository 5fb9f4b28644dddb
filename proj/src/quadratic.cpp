#include "boxmesh/quadratic.hpp"

#include <cmath>

#include "boxmesh/errors.hpp"

namespace boxmesh {

QuadraticModel::QuadraticModel(std::vector<double> coeffs, Signature sig)
    : coeffs_(std::move(coeffs)), sig_(sig) {
    validate_signature(sig_);
    if (static_cast<int>(coeffs_.size()) != sig_.d) {
        throw ArgumentError("QuadraticModel: coefficient count differs from dimension");
    }
    for (int i = 0; i < sig_.d; ++i) {
        const double a = coeffs_[i];
        if (!std::isfinite(a) || a == 0.0) {
            throw ArgumentError("QuadraticModel: coefficients must be finite and nonzero");
        }
        if ((i < sig_.k) != (a > 0.0)) {
            throw ArgumentError("QuadraticModel: positive coefficients must come first (k = " +
                                std::to_string(sig_.k) + ")");
        }
    }
}

QuadraticModel QuadraticModel::from_coefficients(std::vector<double> coeffs) {
    int k = 0;
    while (k < static_cast<int>(coeffs.size()) && coeffs[k] > 0.0) ++k;
    const int d = static_cast<int>(coeffs.size());
    return QuadraticModel(std::move(coeffs), Signature{k, d});
}

QuadraticModel QuadraticModel::unit(Signature sig) {
    validate_signature(sig);
    std::vector<double> c(sig.d, -1.0);
    for (int i = 0; i < sig.k; ++i) c[i] = 1.0;
    return QuadraticModel(std::move(c), sig);
}

double QuadraticModel::operator()(std::span<const double> x) const {
    double s = 0.0;
    for (int i = 0; i < sig_.d; ++i) s += coeffs_[i] * x[i] * x[i];
    return s;
}

double gamma(Signature sig) {
    validate_signature(sig);
    const double k = sig.k, d = sig.d;
    if (sig.definite()) return d / 8.0;
    return 0.125 * std::pow(k, k / d) * std::pow(d - k, 1.0 - k / d);
}

double quad_error_on_centered_box(const QuadraticModel& q, std::span<const double> halfwidths) {
    if (static_cast<int>(halfwidths.size()) != q.dim()) {
        throw ArgumentError("quad_error_on_centered_box: dimension mismatch");
    }
    double pos = 0.0, neg = 0.0;
    for (int i = 0; i < q.dim(); ++i) {
        if (halfwidths[i] < 0.0) throw ArgumentError("half-widths must be nonnegative");
        const double t = std::abs(q.coeffs()[i]) * halfwidths[i] * halfwidths[i];
        (i < q.signature().k ? pos : neg) += t;
    }
    return std::max(pos, neg);
}

std::vector<double> optimal_box_halfwidths(Signature sig, double volume) {
    validate_signature(sig);
    if (!(volume > 0.0)) throw ArgumentError("optimal_box_halfwidths: volume must be positive");
    const double d = sig.d, k = sig.k;
    const double base = 0.5 * std::pow(volume, 1.0 / d);
    std::vector<double> h(sig.d, base);
    if (!sig.definite()) {
        const double ratio = (d - k) / k;
        const double hp = base * std::pow(ratio, (d - k) / (2.0 * d));
        const double hn = base * std::pow(ratio, -k / (2.0 * d));
        for (int i = 0; i < sig.d; ++i) h[i] = i < sig.k ? hp : hn;
    }
    return h;
}

std::vector<double> optimal_box_halfwidths(const QuadraticModel& q, double volume) {
    if (!(volume > 0.0)) throw ArgumentError("optimal_box_halfwidths: volume must be positive");
    double prod = 1.0;
    for (double a : q.coeffs()) prod *= std::abs(a);
    auto h = optimal_box_halfwidths(q.signature(), volume * std::sqrt(prod));
    for (int i = 0; i < q.dim(); ++i) h[i] /= std::sqrt(std::abs(q.coeffs()[i]));
    return h;
}

double min_error_fixed_volume(const QuadraticModel& q, double volume) {
    if (!(volume > 0.0)) throw ArgumentError("min_error_fixed_volume: volume must be positive");
    double prod = 1.0;
    for (double a : q.coeffs()) prod *= std::abs(a);
    const Signature sig = q.signature();
    const double d = sig.d, k = sig.k;
    const double scaled = std::pow(volume * std::sqrt(prod), 2.0 / d);
    if (sig.definite()) return 0.25 * d * scaled;
    return 0.25 * std::pow(k, k / d) * std::pow(d - k, 1.0 - k / d) * scaled;
}

double hessian_product(const QuadraticModel& q) {
    double p = 1.0;
    for (double a : q.coeffs()) p *= 2.0 * a;
    return p;
}

}  // namespace boxmesh
