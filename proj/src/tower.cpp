#include "permrips/tower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace permrips {

double phi_source_scale(double beta, int d) { return beta / (std::sqrt(2.0) * (d + 1)); }
double psi_target_scale(double beta, int d) { return 2.0 * std::sqrt(static_cast<double>(d)) * beta; }

scale_grid default_scale_grid(const point_cloud& pc) {
    scale_grid g;
    g.d = pc.dim();
    const double cp = closest_pair_distance(pc);
    const double diam = diameter(pc);
    if (pc.size() < 2 || !std::isfinite(cp) || diam <= 0) {
        g.beta0 = 1.0;
        g.count = 1;
        return g;
    }
    g.beta0 = cp * std::sqrt(2.0) * (g.d + 1) / 2.0;
    const double step = std::pow(2.0 * (g.d + 1), 2.0);
    const double spread = diam / cp;
    g.count = static_cast<int>(std::ceil(std::log(spread) / std::log(step))) + 2;
    if (g.count < 1) g.count = 1;
    return g;
}

const std::vector<std::int32_t>& map_phi(const approx_complex& ac) { return ac.point_vertex; }

std::vector<std::int32_t> map_psi(const approx_complex& ac, const point_cloud& pc) {
    const std::size_t nv = ac.vertices.size();
    std::vector<std::int32_t> out(nv, -1);
    std::vector<double> best(nv, std::numeric_limits<double>::infinity());
    for (int p = 0; p < pc.size(); ++p) {
        const std::int32_t v = ac.point_vertex[p];
        const double d2 = dist2(embed_point(pc.points[p]), lattice_coords(ac.vertices[v], ac.beta));
        if (d2 < best[v] - 1e-15) {
            best[v] = d2;
            out[v] = p;
        }
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (out[v] < 0) throw std::runtime_error("map_psi: vertex without a snapped point");
    return out;
}

const std::vector<std::int32_t>& map_theta(const tower& t, int i) { return t.theta.at(i); }

void assert_simplicial(const skeleton& src, const std::vector<std::int32_t>& vertex_map,
                       const skeleton& dst) {
    for (int p = 1; p <= src.top_dim(); ++p) {
        for (std::size_t r = 0; r < src.count(p); ++r) {
            auto s = src.simplex(p, r);
            std::vector<std::int32_t> img(s.begin(), s.end());
            for (auto& v : img) v = vertex_map[v];
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (img.size() == 1) continue;  // collapsed to a vertex
            if (dst.find(static_cast<int>(img.size()) - 1, img) < 0)
                throw std::runtime_error("vertex map is not simplicial: image simplex missing");
        }
    }
}

tower build_tower(const point_cloud& pc, const scale_grid& grid, int k,
                  std::size_t size_cap) {
    if (grid.count < 1 || grid.beta0 <= 0) throw std::invalid_argument("build_tower: bad grid");
    tower t;
    t.grid = grid;
    t.k = k;
    const double step = std::pow(2.0 * (grid.d + 1), 2.0);
    double beta = grid.beta0;
    for (int i = 0; i < grid.count; ++i) {
        t.scales.push_back(beta);
        t.complexes.push_back(build_approx_complex(pc, beta, k, size_cap));
        t.psi.push_back(map_psi(t.complexes.back(), pc));
        beta *= step;
    }
    for (int i = 0; i + 1 < grid.count; ++i) {
        const auto& src = t.complexes[i];
        const auto& dst = t.complexes[i + 1];
        std::vector<std::int32_t> th(src.vertices.size());
        for (std::size_t v = 0; v < src.vertices.size(); ++v)
            th[v] = dst.point_vertex[t.psi[i][v]];
        assert_simplicial(src.K, th, dst.K);
        t.theta.push_back(std::move(th));
    }
    return t;
}

contiguity_report check_contiguity(const point_cloud& pc, double beta) {
    const int d = pc.dim();
    const int n = pc.size();
    contiguity_report rep;
    rep.beta = beta;
    rep.bound = 16.0 * std::pow(static_cast<double>(d + 1), 3.0) * beta;

    // h = psi after phi through the complex at scale 4(d+1)^2 beta
    const double mid_beta = 4.0 * (d + 1) * (d + 1) * beta;
    approx_complex mid = build_approx_complex(pc, mid_beta, 1);
    std::vector<std::int32_t> psi_mid = map_psi(mid, pc);
    std::vector<std::int32_t> h(n);
    for (int i = 0; i < n; ++i) h[i] = psi_mid[mid.point_vertex[i]];

    // source Rips pairs at scale 2(d+1)beta (edge iff distance <= 2 * scale)
    const double source_edge = 2.0 * (2.0 * (d + 1) * beta);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (pc.distance(i, j) > source_edge) continue;
            ++rep.pairs_checked;
            // union of g- and h-images must span a simplex of the target
            // Rips complex: all pairwise distances below the bound
            const double dgh = dist(pc.points[i], pc.points[h[j]]);
            const double dhg = dist(pc.points[h[i]], pc.points[j]);
            const double dhh = dist(pc.points[h[i]], pc.points[h[j]]);
            const double mx = std::max({dgh, dhg, dhh});
            rep.max_pair_distance = std::max(rep.max_pair_distance, mx);
            if (mx >= rep.bound) ++rep.violations;
        }
    }
    return rep;
}

}  // namespace permrips
