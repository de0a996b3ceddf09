// Point clouds (coordinates or metric) and the vertex-indexed k-skeleton
// representation shared by the approximation, Rips, and Cech builders.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permrips/geom.hpp"

namespace permrips {

// Input data: coordinate points, or a full symmetric distance matrix when
// only metric information is available.
struct point_cloud {
    std::vector<vec> points;                  // n x dim; empty when metric-only
    std::vector<std::vector<double>> dists;   // n x n; empty when coordinate-only
    std::vector<std::string> labels;          // optional

    int size() const { return static_cast<int>(points.empty() ? dists.size() : points.size()); }
    int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
    bool metric_only() const { return points.empty(); }

    double distance(int i, int j) const {
        if (!dists.empty()) return dists[i][j];
        return dist(points[i], points[j]);
    }
};

point_cloud make_point_cloud(std::vector<vec> pts);
// Validates symmetry, zero diagonal, and the triangle inequality (1e-9).
point_cloud make_metric_cloud(std::vector<std::vector<double>> dists);

double closest_pair_distance(const point_cloud& pc);  // smallest positive pair distance
double diameter(const point_cloud& pc);

// k-skeleton with simplices stored per dimension as flat ascending vertex
// tuples, rows sorted lexicographically. `values[p]`, when nonempty, holds
// one filtration value per row of `cells[p]`.
struct skeleton {
    std::vector<std::vector<std::int32_t>> cells;  // cells[p]: flat, stride p+1
    std::vector<std::vector<double>> values;

    int top_dim() const { return static_cast<int>(cells.size()) - 1; }
    std::size_t count(int p) const {
        if (p < 0 || p > top_dim()) return 0;
        return cells[p].size() / (p + 1);
    }
    std::size_t total() const {
        std::size_t t = 0;
        for (int p = 0; p <= top_dim(); ++p) t += count(p);
        return t;
    }
    std::span<const std::int32_t> simplex(int p, std::size_t row) const {
        return {cells[p].data() + row * (p + 1), static_cast<std::size_t>(p + 1)};
    }
    // Row of the simplex in dimension p, or -1 (binary search; rows sorted).
    std::int64_t find(int p, std::span<const std::int32_t> verts) const;

    bool has_values() const { return !values.empty() && !values[0].empty(); }
    bool operator==(const skeleton& o) const { return cells == o.cells; }
};

// Verifies closure under faces, ascending tuples, sorted rows, and (when
// values are present) monotonicity. Throws std::runtime_error on violation.
void validate_skeleton(const skeleton& K);

}  // namespace permrips
