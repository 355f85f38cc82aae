#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "hpws/error.hpp"
#include "hpws/points.hpp"

namespace hpws {

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), errc::dimension_mismatch, "dimension mismatch");
    double sq = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

/// Distance function over point ids: the built-in Euclidean metric or an
/// explicit symmetric matrix (validated at construction).
class Metric {
public:
    static Metric euclidean() { return Metric(); }

    static Metric explicit_matrix(std::size_t n, std::vector<double> entries) {
        require(entries.size() == n * n, errc::invalid_argument, "matrix is not n x n");
        Metric m;
        m.n_ = n;
        m.matrix_ = std::move(entries);
        m.validate();
        return m;
    }

    bool is_euclidean() const { return matrix_.empty() && n_ == 0; }
    std::size_t matrix_size() const { return n_; }
    const std::vector<double>& matrix() const { return matrix_; }

    double distance(const PointSet& pts, PointId i, PointId j) const {
        if (is_euclidean()) return euclidean_distance(pts[i], pts[j]);
        require(i < n_ && j < n_, errc::invalid_argument, "matrix metric: point id out of range");
        return matrix_[std::size_t(i) * n_ + j];
    }

private:
    Metric() = default;

    void validate() const {
        for (std::size_t i = 0; i < n_; ++i) {
            require(matrix_[i * n_ + i] == 0.0, errc::metric_violation,
                    "d(x,x) != 0 at index " + std::to_string(i));
            for (std::size_t j = i + 1; j < n_; ++j) {
                double dij = matrix_[i * n_ + j];
                require(std::isfinite(dij), errc::metric_violation, "non-finite matrix entry");
                require(dij > 0.0, errc::metric_violation,
                        "d(x,y) <= 0 for distinct x,y (" + std::to_string(i) + "," + std::to_string(j) + ")");
                require(dij == matrix_[j * n_ + i], errc::metric_violation,
                        "matrix not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        // Full triangle-inequality sweep is cubic; capped at n <= 500.
        if (n_ > 500) return;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) {
                    double lhs = matrix_[i * n_ + j];
                    double rhs = matrix_[i * n_ + k] + matrix_[k * n_ + j];
                    if (lhs > rhs * (1.0 + 1e-12))
                        fail(errc::metric_violation,
                             "triangle inequality violated at (" + std::to_string(i) + "," +
                                 std::to_string(j) + "," + std::to_string(k) + ")");
                }
    }

    std::size_t n_ = 0;
    std::vector<double> matrix_;
};

inline double distance(const PointSet& pts, const Metric& m, PointId i, PointId j) {
    return m.distance(pts, i, j);
}

/// Max pairwise distance by exhaustive enumeration; the brute-force oracle
/// every diameter bound in the test suite is checked against.
inline double set_diameter(const PointSet& pts, const Metric& m, std::span<const PointId> ids) {
    require(!ids.empty(), errc::invalid_argument, "set_diameter of empty set");
    double best = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            best = std::max(best, m.distance(pts, ids[i], ids[j]));
    return best;
}

/// Min distance between two sets, exhaustively.
inline double set_distance(const PointSet& pts, const Metric& m, std::span<const PointId> a,
                           std::span<const PointId> b) {
    require(!a.empty() && !b.empty(), errc::invalid_argument, "set_distance of empty set");
    double best = std::numeric_limits<double>::infinity();
    for (PointId i : a)
        for (PointId j : b) best = std::min(best, m.distance(pts, i, j));
    return best;
}

/// File format: first line n, then n rows of n whitespace-separated floats.
inline Metric load_metric_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open matrix file " + path.string());
    std::size_t n = 0;
    in >> n;
    require(in.good() && n > 0, errc::io_error, "bad matrix header in " + path.string());
    std::vector<double> entries(n * n);
    for (auto& e : entries) {
        in >> e;
        require(!in.fail(), errc::io_error, "truncated matrix in " + path.string());
    }
    return Metric::explicit_matrix(n, std::move(entries));
}

inline void save_metric_matrix(const Metric& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    require(out.good(), errc::io_error, "cannot write " + path.string());
    out.precision(17);
    std::size_t n = m.matrix_size();
    out << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << m.matrix()[i * n + j];
        out << '\n';
    }
}

}  // namespace hpws
