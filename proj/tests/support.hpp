#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "boxmesh/geometry.hpp"

namespace testsupport {

// Seeded generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::vector<double> point(int d, double lo = 0.0, double hi = 1.0) {
        std::vector<double> x(d);
        for (auto& v : x) v = uniform(lo, hi);
        return x;
    }

    boxmesh::AxisBox box(int d, double lo = -2.0, double hi = 2.0, double min_width = 0.05) {
        std::vector<double> a(d), b(d);
        for (int i = 0; i < d; ++i) {
            a[i] = uniform(lo, hi - min_width);
            b[i] = a[i] + uniform(min_width, hi - a[i]);
        }
        return boxmesh::AxisBox(a, b);
    }

    std::vector<double> point_in(const boxmesh::AxisBox& b) {
        std::vector<double> x(b.dim());
        for (int i = 0; i < b.dim(); ++i) x[i] = uniform(b.lower(i), b.upper(i));
        return x;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testsupport
