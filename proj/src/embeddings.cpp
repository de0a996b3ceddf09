#include "permrips/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace permrips {

std::uint64_t rng_stream::next_u64() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double rng_stream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double rng_stream::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_unit() - 1.0;
        v = 2.0 * next_unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

int jl_target_dim(int n, double lambda, double eps) {
    if (n < 2 || lambda <= 0 || eps <= 0) throw std::invalid_argument("jl_target_dim: bad parameters");
    return static_cast<int>(std::ceil(lambda * std::log(static_cast<double>(n)) / (eps * eps)));
}

int matousek_target_dim(int n) {
    if (n < 3) throw std::invalid_argument("matousek_target_dim: n too small");
    const double ln = std::log(static_cast<double>(n));
    return static_cast<int>(std::ceil(4.0 * ln / std::log(ln)));
}

point_cloud random_projection(const point_cloud& pc, const projection_spec& spec) {
    if (pc.metric_only()) throw std::invalid_argument("random_projection: coordinates required");
    const int d = pc.dim();
    const int m = spec.target_dim;
    if (m < 1 || m > d) throw std::invalid_argument("random_projection: need 1 <= m <= d");

    rng_stream rng(spec.seed);
    std::vector<vec> frame(m, vec(d));
    for (auto& row : frame)
        for (double& x : row) x = rng.next_gaussian();
    // modified Gram-Schmidt on the rows
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            const double c = dot(frame[i], frame[j]);
            for (int t = 0; t < d; ++t) frame[i][t] -= c * frame[j][t];
        }
        const double nn = norm(frame[i]);
        if (nn < 1e-12) throw std::runtime_error("random_projection: degenerate frame");
        for (int t = 0; t < d; ++t) frame[i][t] /= nn;
    }
    const double s = std::sqrt(static_cast<double>(d) / m);
    std::vector<vec> out;
    out.reserve(pc.size());
    for (const vec& p : pc.points) {
        vec q(m);
        for (int i = 0; i < m; ++i) q[i] = s * dot(frame[i], p);
        out.push_back(std::move(q));
    }
    return make_point_cloud(std::move(out));
}

point_cloud bourgain_embed(const point_cloud& metric, const bourgain_spec& spec) {
    const int n = metric.size();
    if (n < 2) throw std::invalid_argument("bourgain_embed: need at least two points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (metric.distance(i, j) <= 0)
                throw std::invalid_argument("bourgain_embed: degenerate metric");

    const int scales = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))));
    const int reps = std::max(1, static_cast<int>(std::llround(spec.c_b * scales)));
    const int m = scales * reps;
    rng_stream rng(spec.seed);
    std::vector<vec> out(n, vec(m, 0.0));
    const double normalize = 1.0 / std::sqrt(static_cast<double>(m));
    int coord = 0;
    for (int s = 1; s <= scales; ++s) {
        const double prob = std::pow(2.0, -s);
        for (int r = 0; r < reps; ++r, ++coord) {
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (rng.next_unit() < prob) subset.push_back(i);
            for (int i = 0; i < n; ++i) {
                double mind = 0.0;
                if (!subset.empty()) {
                    mind = metric.distance(i, subset[0]);
                    for (int q : subset) mind = std::min(mind, metric.distance(i, q));
                }
                out[i][coord] = normalize * mind;
            }
        }
    }
    return make_point_cloud(std::move(out));
}

std::pair<double, double> measure_distortion(const point_cloud& before, const point_cloud& after) {
    const int n = before.size();
    if (after.size() != n) throw std::invalid_argument("measure_distortion: size mismatch");
    double xi1 = std::numeric_limits<double>::infinity(), xi2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double db = before.distance(i, j);
            if (db <= 0) throw std::invalid_argument("measure_distortion: coincident source points");
            const double r = after.distance(i, j) / db;
            xi1 = std::min(xi1, r);
            xi2 = std::max(xi2, r);
        }
    return {xi1, xi2};
}

point_cloud center_distortion(const point_cloud& before, const point_cloud& embedded) {
    auto [xi1, xi2] = measure_distortion(before, embedded);
    if (xi1 <= 0) throw std::runtime_error("center_distortion: embedding collapsed a pair");
    const double f = 1.0 / std::sqrt(xi1 * xi2);
    std::vector<vec> out = embedded.points;
    for (vec& p : out)
        for (double& x : p) x *= f;
    return make_point_cloud(std::move(out));
}

}  // namespace permrips
