#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hpws/metric.hpp"
#include "hpws/points.hpp"

namespace hpws {

/// mt19937_64 with an explicit 53-bit mapping to [0,1), so streams depend only
/// on the seed, not on library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

inline PointSet random_point_set(std::size_t n, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    PointSet pts(dim);
    std::vector<double> row(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& x : row) x = rng.uniform01();
        pts.add(row);
    }
    pts.require_distinct();
    return pts;
}

/// Nested clusters spanning several distance scales: each point picks one of
/// four shared centers per level, scaled by shrink^level, plus a final
/// jitter. Net trees over uniform unit-cube data collapse to one or two
/// levels; this shape gives them real depth.
inline PointSet clustered_point_set(std::size_t n, std::size_t dim, std::uint64_t seed,
                                    int levels = 3, double shrink = 0.04) {
    Rng rng(seed);
    std::vector<std::vector<double>> palette(levels * 4, std::vector<double>(dim));
    for (auto& center : palette)
        for (auto& x : center) x = rng.uniform01();
    PointSet pts(dim);
    std::vector<double> row(dim);
    double jitter_scale = std::pow(shrink, levels);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(row.begin(), row.end(), 0.0);
        double scale = 1.0;
        for (int l = 0; l < levels; ++l) {
            const auto& center = palette[l * 4 + rng.bits() % 4];
            for (std::size_t k = 0; k < dim; ++k) row[k] += center[k] * scale;
            scale *= shrink;
        }
        for (std::size_t k = 0; k < dim; ++k) row[k] += rng.uniform01() * jitter_scale;
        pts.add(row);
    }
    pts.require_distinct();
    return pts;
}

inline Metric euclidean_as_matrix(const PointSet& pts) {
    std::size_t n = pts.size();
    std::vector<double> m(n * n, 0.0);
    for (PointId i = 0; i < n; ++i)
        for (PointId j = 0; j < n; ++j)
            m[std::size_t(i) * n + j] = euclidean_distance(pts[i], pts[j]);
    return Metric::explicit_matrix(n, std::move(m));
}

inline Metric manhattan_as_matrix(const PointSet& pts) {
    std::size_t n = pts.size();
    std::vector<double> m(n * n, 0.0);
    for (PointId i = 0; i < n; ++i)
        for (PointId j = 0; j < n; ++j) {
            double sum = 0;
            auto a = pts[i], b = pts[j];
            for (std::size_t k = 0; k < pts.dimension(); ++k) sum += std::abs(a[k] - b[k]);
            m[std::size_t(i) * n + j] = sum;
        }
    return Metric::explicit_matrix(n, std::move(m));
}

}  // namespace hpws
