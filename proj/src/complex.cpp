#include "permrips/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace permrips {

point_cloud make_point_cloud(std::vector<vec> pts) {
    if (pts.empty()) throw std::invalid_argument("point_cloud: need at least one point");
    for (const vec& p : pts)
        if (p.size() != pts[0].size()) throw std::invalid_argument("point_cloud: ragged coordinates");
    point_cloud pc;
    pc.points = std::move(pts);
    return pc;
}

point_cloud make_metric_cloud(std::vector<std::vector<double>> dists) {
    const std::size_t n = dists.size();
    if (n == 0) throw std::invalid_argument("point_cloud: empty distance matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (dists[i].size() != n) throw std::invalid_argument("point_cloud: distance matrix not square");
        if (std::abs(dists[i][i]) > 1e-12) throw std::invalid_argument("point_cloud: nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(dists[i][j] - dists[j][i]) > 1e-9)
                throw std::invalid_argument("point_cloud: distance matrix not symmetric");
            if (dists[i][j] < 0) throw std::invalid_argument("point_cloud: negative distance");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dists[i][j] > dists[i][k] + dists[k][j] + 1e-9)
                    throw std::invalid_argument("point_cloud: triangle inequality violated");
    point_cloud pc;
    pc.dists = std::move(dists);
    return pc;
}

double closest_pair_distance(const point_cloud& pc) {
    const int n = pc.size();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = pc.distance(i, j);
            if (d > 0 && d < best) best = d;
        }
    return best;
}

double diameter(const point_cloud& pc) {
    const int n = pc.size();
    double best = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) best = std::max(best, pc.distance(i, j));
    return best;
}

std::int64_t skeleton::find(int p, std::span<const std::int32_t> verts) const {
    if (p < 0 || p > top_dim()) return -1;
    const auto& rows = cells[p];
    const std::size_t stride = p + 1;
    std::size_t lo = 0, hi = rows.size() / stride;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        const std::int32_t* r = rows.data() + mid * stride;
        int cmp = 0;
        for (std::size_t t = 0; t < stride; ++t) {
            if (r[t] != verts[t]) {
                cmp = r[t] < verts[t] ? -1 : 1;
                break;
            }
        }
        if (cmp == 0) return static_cast<std::int64_t>(mid);
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return -1;
}

void validate_skeleton(const skeleton& K) {
    for (int p = 0; p <= K.top_dim(); ++p) {
        const std::size_t stride = p + 1;
        const std::size_t cnt = K.count(p);
        for (std::size_t r = 0; r < cnt; ++r) {
            auto s = K.simplex(p, r);
            for (std::size_t t = 1; t < stride; ++t)
                if (s[t - 1] >= s[t]) throw std::runtime_error("skeleton: vertex tuple not ascending");
            if (r > 0) {
                auto prev = K.simplex(p, r - 1);
                if (!std::lexicographical_compare(prev.begin(), prev.end(), s.begin(), s.end()))
                    throw std::runtime_error("skeleton: rows not sorted");
            }
            if (p > 0) {
                std::vector<std::int32_t> facet(p);
                for (std::size_t omit = 0; omit < stride; ++omit) {
                    std::size_t t2 = 0;
                    for (std::size_t t = 0; t < stride; ++t)
                        if (t != omit) facet[t2++] = s[t];
                    std::int64_t row = K.find(p - 1, facet);
                    if (row < 0) throw std::runtime_error("skeleton: missing facet");
                    if (K.has_values() && K.values[p - 1][row] > K.values[p][r] + 1e-12)
                        throw std::runtime_error("skeleton: non-monotone filtration values");
                }
            }
        }
    }
}

}  // namespace permrips
