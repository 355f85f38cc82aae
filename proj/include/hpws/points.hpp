#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hpws/error.hpp"

namespace hpws {

using PointId = std::uint32_t;

/// A finite set of points in R^d, stored row-major. For explicit-matrix
/// metrics the coordinates are optional; points are then just ids 0..n-1.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dimension) : dim_(dimension) {}

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const { return size() == 0; }

    void add(std::span<const double> xs) {
        require(dim_ != 0, errc::invalid_argument, "point set has no dimension");
        require(xs.size() == dim_, errc::dimension_mismatch,
                "point has " + std::to_string(xs.size()) + " coordinates, expected " +
                    std::to_string(dim_));
        for (double x : xs)
            require(std::isfinite(x), errc::invalid_argument, "non-finite coordinate");
        coords_.insert(coords_.end(), xs.begin(), xs.end());
    }

    std::span<const double> operator[](PointId i) const {
        return {coords_.data() + std::size_t(i) * dim_, dim_};
    }

    /// Rejects exact duplicates; the downstream structures assume distinct points.
    void require_distinct() const {
        std::vector<PointId> order(size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
            return std::lexicographical_compare((*this)[a].begin(), (*this)[a].end(),
                                                (*this)[b].begin(), (*this)[b].end());
        });
        for (std::size_t i = 1; i < order.size(); ++i) {
            auto a = (*this)[order[i - 1]], b = (*this)[order[i]];
            if (std::equal(a.begin(), a.end(), b.begin()))
                fail(errc::duplicate_points,
                     "duplicate points at indices " + std::to_string(order[i - 1]) + " and " +
                         std::to_string(order[i]));
        }
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

namespace detail {
inline double parse_double(std::string_view tok, const std::string& ctx) {
    double value = 0;
    auto first = tok.data();
    auto last = tok.data() + tok.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    while (ptr != last && (*ptr == ' ' || *ptr == '\t' || *ptr == '\r')) ++ptr;
    require(ec == std::errc() && ptr == last, errc::io_error, "bad number '" + std::string(tok) + "' in " + ctx);
    return value;
}
}  // namespace detail

/// CSV: one point per line, comma-separated decimal coordinates, `#` comments.
inline PointSet load_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open points file " + path.string());
    PointSet pts;
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv(line);
        if (sv.empty() || sv.front() == '#') continue;
        row.clear();
        std::size_t start = 0;
        while (start <= sv.size()) {
            std::size_t comma = sv.find(',', start);
            std::string_view tok = sv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            row.push_back(detail::parse_double(tok, path.string() + ":" + std::to_string(lineno)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (pts.dimension() == 0) pts = PointSet(row.size());
        pts.add(row);
    }
    require(!pts.empty(), errc::io_error, "no points in " + path.string());
    pts.require_distinct();
    return pts;
}

inline void save_points_csv(const PointSet& pts, const std::filesystem::path& path) {
    std::ofstream out(path);
    require(out.good(), errc::io_error, "cannot write " + path.string());
    out.precision(17);
    for (PointId i = 0; i < pts.size(); ++i) {
        auto p = pts[i];
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
        out << '\n';
    }
}

}  // namespace hpws
