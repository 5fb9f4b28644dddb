#include "boxmesh/builtins.hpp"

#include <algorithm>
#include <cmath>

#include "boxmesh/errors.hpp"

namespace boxmesh {

namespace {

// f = sum_i s_i g(c x_i) with s_i = +1 for i < k, -1 otherwise.
struct SeparableSpec {
    double scale;  // c
    bool exponential;
};

TargetFunction separable(const std::string& name, Signature sig, SeparableSpec spec) {
    const int d = sig.d, k = sig.k;
    const double c = spec.scale;
    auto sign = [k](int i) { return i < k ? 1.0 : -1.0; };
    TargetFunction f;
    f.name = name;
    f.signature = sig;
    if (spec.exponential) {
        f.value = [=](std::span<const double> x) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += sign(i) * std::exp(c * x[i]);
            return s;
        };
        f.gradient = [=](std::span<const double> x, std::span<double> out) {
            for (int i = 0; i < d; ++i) out[i] = sign(i) * c * std::exp(c * x[i]);
        };
        f.hessian = [=](std::span<const double> x, std::span<double> out) {
            std::fill(out.begin(), out.begin() + d * d, 0.0);
            for (int i = 0; i < d; ++i) out[i * d + i] = sign(i) * c * c * std::exp(c * x[i]);
        };
        // |c^2 (e^{c t} - e^{c s})| over [0,1] is largest at the top end.
        f.omega_star = [=](double delta) {
            const double t = std::min(delta, 1.0);
            return c * c * std::exp(c) * (1.0 - std::exp(-c * t));
        };
    } else {
        f.value = [=](std::span<const double> x) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += sign(i) * x[i] * x[i];
            return s;
        };
        f.gradient = [=](std::span<const double> x, std::span<double> out) {
            for (int i = 0; i < d; ++i) out[i] = 2.0 * sign(i) * x[i];
        };
        f.hessian = [=](std::span<const double>, std::span<double> out) {
            std::fill(out.begin(), out.begin() + d * d, 0.0);
            for (int i = 0; i < d; ++i) out[i * d + i] = 2.0 * sign(i);
        };
        f.omega_star = [](double) { return 0.0; };
    }
    return f;
}

}  // namespace

std::vector<std::string> builtin_names() {
    return {"quad-elliptic", "quad-saddle", "exp-elliptic", "exp-saddle", "exp-steep"};
}

std::vector<std::string> weight_names() { return {"one", "linear"}; }

bool builtin_is_definite(const std::string& name) {
    return name == "quad-elliptic" || name == "exp-elliptic" || name == "exp-steep";
}

TargetFunction make_builtin(const std::string& name, Signature sig) {
    validate_signature(sig);
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ArgumentError("unknown function '" + name + "'");
    }
    if (builtin_is_definite(name) && sig.k != sig.d) {
        throw ArgumentError(name + " requires signature k = d");
    }
    if (name == "quad-elliptic" || name == "quad-saddle") return separable(name, sig, {1.0, false});
    if (name == "exp-steep") return separable(name, sig, {2.0, true});
    return separable(name, sig, {1.0, true});
}

WeightFunction make_weight(const std::string& name) {
    if (name == "one") return WeightFunction::constant(1.0);
    if (name == "linear") {
        WeightFunction w;
        w.name = "linear";
        w.value = [](std::span<const double> x) { return 1.0 + 0.5 * x[0]; };
        return w;
    }
    throw ArgumentError("unknown weight '" + name + "'");
}

}  // namespace boxmesh
