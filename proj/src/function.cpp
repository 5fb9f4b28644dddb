#include "boxmesh/function.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "boxmesh/errors.hpp"

namespace boxmesh {

void finite_difference_hessian(const ScalarField& f, std::span<const double> x, int dim,
                               std::span<double> out) {
    std::array<double, kMaxDim> p{};
    std::copy(x.begin(), x.begin() + dim, p.begin());
    const std::span<const double> pt(p.data(), dim);
    const double f0 = f(pt);
    std::array<double, kMaxDim> h{};
    for (int i = 0; i < dim; ++i) h[i] = kHessianFdStep * std::max(1.0, std::abs(x[i]));

    for (int i = 0; i < dim; ++i) {
        const double xi = p[i];
        p[i] = xi + h[i];
        const double fp = f(pt);
        p[i] = xi - h[i];
        const double fm = f(pt);
        p[i] = xi;
        out[i * dim + i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double xi = p[i], xj = p[j];
            p[i] = xi + h[i]; p[j] = xj + h[j];
            const double fpp = f(pt);
            p[j] = xj - h[j];
            const double fpm = f(pt);
            p[i] = xi - h[i];
            const double fmm = f(pt);
            p[j] = xj + h[j];
            const double fmp = f(pt);
            p[i] = xi; p[j] = xj;
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            out[i * dim + j] = v;
            out[j * dim + i] = v;
        }
    }
}

void finite_difference_gradient(const ScalarField& f, std::span<const double> x, int dim,
                                std::span<double> out) {
    std::array<double, kMaxDim> p{};
    std::copy(x.begin(), x.begin() + dim, p.begin());
    const std::span<const double> pt(p.data(), dim);
    for (int i = 0; i < dim; ++i) {
        const double h = kGradientFdStep * std::max(1.0, std::abs(x[i]));
        const double xi = p[i];
        p[i] = xi + h;
        const double fp = f(pt);
        p[i] = xi - h;
        const double fm = f(pt);
        p[i] = xi;
        out[i] = (fp - fm) / (2.0 * h);
    }
}

void TargetFunction::eval_hessian(std::span<const double> x, std::span<double> out) const {
    if (hessian) {
        hessian(x, out);
    } else {
        finite_difference_hessian(value, x, dim(), out);
    }
}

void TargetFunction::eval_gradient(std::span<const double> x, std::span<double> out) const {
    if (gradient) {
        gradient(x, out);
    } else {
        finite_difference_gradient(value, x, dim(), out);
    }
}

void TargetFunction::check_signature_at(std::span<const double> x) const {
    const int d = dim();
    std::array<double, kMaxDim * kMaxDim> hess{};
    eval_hessian(x, std::span<double>(hess.data(), d * d));
    for (int i = 0; i < d; ++i) {
        const double h = hess[i * d + i];
        const bool ok = i < signature.k ? h > 0.0 : h < 0.0;
        if (!ok || !std::isfinite(h)) {
            std::ostringstream os;
            os.precision(10);
            os << "signature (" << signature.k << "," << signature.d << ") violated";
            if (!name.empty()) os << " by " << name;
            os << " at (";
            for (int a = 0; a < d; ++a) os << (a ? ", " : "") << x[a];
            os << "): d2f/dx" << (i + 1) << "^2 = " << h;
            throw SignatureError(os.str());
        }
    }
}

WeightFunction WeightFunction::constant(double c) {
    if (!(c > 0.0)) throw ArgumentError("weight must be positive");
    std::ostringstream os;
    os << c;
    return WeightFunction{"constant(" + os.str() + ")", [c](std::span<const double>) { return c; }};
}

}  // namespace boxmesh
