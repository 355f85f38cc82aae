#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/points.hpp"

namespace hpws {

/// Axis-aligned hypercube: one corner plus a common side length.
struct Hypercube {
    std::vector<double> lo;
    double side = 0;

    std::size_t dimension() const { return lo.size(); }
    double hi(std::size_t axis) const { return lo[axis] + side; }
    double mid(std::size_t axis) const { return lo[axis] + side / 2; }
    double diagonal() const { return side * std::sqrt(double(lo.size())); }

    bool contains(std::span<const double> p) const {
        if (p.size() != lo.size()) return false;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (p[k] < lo[k] || p[k] > hi(k)) return false;
        return true;
    }
};

/// Min distance between two closed boxes: per-axis gap clamped at 0, then l2.
inline double hypercube_distance(const Hypercube& c1, const Hypercube& c2) {
    require(c1.dimension() == c2.dimension(), errc::dimension_mismatch,
            "hypercube dimension mismatch");
    double sq = 0;
    for (std::size_t k = 0; k < c1.dimension(); ++k) {
        double gap = std::max({0.0, c2.lo[k] - c1.hi(k), c1.lo[k] - c2.hi(k)});
        sq += gap * gap;
    }
    return std::sqrt(sq);
}

/// Smallest axis-aligned enclosing cube: side = max coordinate extent.
/// A single point gets side 1 by convention (a 1-point tree is a lone leaf,
/// so the value never enters a distance test).
inline Hypercube smallest_enclosing_hypercube(const PointSet& pts) {
    require(!pts.empty(), errc::invalid_argument, "enclosing cube of empty set");
    std::size_t d = pts.dimension();
    std::vector<double> lo(pts[0].begin(), pts[0].end());
    std::vector<double> hi(lo);
    for (PointId i = 1; i < pts.size(); ++i) {
        auto p = pts[i];
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    double side = 0;
    for (std::size_t k = 0; k < d; ++k) side = std::max(side, hi[k] - lo[k]);
    if (side == 0) side = 1.0;
    return Hypercube{std::move(lo), side};
}

}  // namespace hpws
