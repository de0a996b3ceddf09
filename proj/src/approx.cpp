#include "permrips/approx.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>

namespace permrips {

namespace {

struct num_hash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int64_t x : v) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

std::uint64_t skeleton_size_bound(int n, int k, int d) {
    std::uint64_t b = static_cast<std::uint64_t>(n);
    const std::uint64_t base = static_cast<std::uint64_t>(k + 1);
    for (int i = 0; i < 2 * (d + 1); ++i) {
        if (b > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        b *= base;
    }
    return b;
}

std::vector<lattice_point> snap(const point_cloud& pc, const scaled_lattice& L) {
    if (pc.metric_only())
        throw std::invalid_argument("snap: coordinates required (metric-only input)");
    std::vector<lattice_point> out;
    out.reserve(pc.size());
    for (const vec& p : pc.points) out.push_back(closest_lattice_point(L, embed_point(p)));
    return out;
}

namespace {

// Shared vertex/edge stage: dedup snapped cells, find adjacent pairs.
struct vertex_graph {
    std::vector<lattice_point> vertices;
    std::vector<std::int32_t> point_vertex;
    std::vector<std::vector<std::int32_t>> adj;  // sorted neighbor rows
};

vertex_graph build_vertex_graph(const point_cloud& pc, double beta, int d) {
    vertex_graph g;
    scaled_lattice L{d, beta};
    std::vector<lattice_point> snapped = snap(pc, L);
    g.vertices = snapped;
    std::sort(g.vertices.begin(), g.vertices.end(),
              [](const lattice_point& a, const lattice_point& b) { return lex_less(a, b); });
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());

    std::unordered_map<std::vector<std::int64_t>, std::int32_t, num_hash> index;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        index.emplace(g.vertices[i].num, static_cast<std::int32_t>(i));
    g.point_vertex.resize(snapped.size());
    for (std::size_t i = 0; i < snapped.size(); ++i) g.point_vertex[i] = index.at(snapped[i].num);

    g.adj.resize(g.vertices.size());
    const std::uint64_t full = (std::uint64_t{1} << (d + 1)) - 1;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            lattice_point q = delaunay_neighbor(g.vertices[i], mask);
            auto it = index.find(q.num);
            if (it != index.end() && it->second != static_cast<std::int32_t>(i))
                g.adj[i].push_back(it->second);
        }
        std::sort(g.adj[i].begin(), g.adj[i].end());
        g.adj[i].erase(std::unique(g.adj[i].begin(), g.adj[i].end()), g.adj[i].end());
    }
    return g;
}

// DFS flag/nerve expansion in lexicographic order. `accept` decides whether a
// candidate simplex (>= 2 vertices) enters; for the flag complex it is
// constant true.
template <typename Accept>
approx_complex expand(const point_cloud& pc, double beta, int k, std::size_t size_cap,
                      vertex_graph g, Accept accept) {
    const int d = pc.dim();
    approx_complex ac;
    ac.beta = beta;
    ac.d = d;
    ac.requested_k = k;
    ac.effective_k = std::min(k, d);
    ac.vertices = std::move(g.vertices);
    ac.point_vertex = std::move(g.point_vertex);
    const int topk = ac.effective_k;
    ac.K.cells.assign(topk + 1, {});
    const std::size_t nv = ac.vertices.size();
    std::size_t count = 0;
    auto bump = [&](std::size_t add) {
        count += add;
        if (size_cap && count > size_cap)
            throw size_cap_exceeded("approximation complex exceeds the configured size cap");
    };
    for (std::size_t v = 0; v < nv; ++v) ac.K.cells[0].push_back(static_cast<std::int32_t>(v));
    bump(nv);

    std::vector<std::int32_t> simplex;
    auto rec = [&](auto&& self, const std::vector<std::int32_t>& cands) -> void {
        const int p = static_cast<int>(simplex.size()) - 1;
        if (p >= topk) return;
        for (std::size_t ci = 0; ci < cands.size(); ++ci) {
            std::int32_t u = cands[ci];
            simplex.push_back(u);
            if (accept(simplex, ac.vertices)) {
                bump(1);
                ac.K.cells[p + 1].insert(ac.K.cells[p + 1].end(), simplex.begin(), simplex.end());
                // candidates for the extension: common neighbors beyond u
                std::vector<std::int32_t> next;
                const auto& au = g.adj[u];
                std::set_intersection(cands.begin() + ci + 1, cands.end(),
                                      std::upper_bound(au.begin(), au.end(), u), au.end(),
                                      std::back_inserter(next));
                self(self, next);
            }
            simplex.pop_back();
        }
    };
    for (std::size_t v = 0; v < nv; ++v) {
        simplex.assign(1, static_cast<std::int32_t>(v));
        std::vector<std::int32_t> cands(
            std::upper_bound(g.adj[v].begin(), g.adj[v].end(), static_cast<std::int32_t>(v)),
            g.adj[v].end());
        rec(rec, cands);
    }
    ac.size = ac.K.total();
    ac.size_bound = skeleton_size_bound(pc.size(), k, d);
    ac.within_bound = ac.size <= ac.size_bound;
    return ac;
}

}  // namespace

approx_complex build_approx_complex(const point_cloud& pc, double beta, int k,
                                    std::size_t size_cap) {
    if (beta <= 0) throw std::invalid_argument("build_approx_complex: beta must be positive");
    if (k < 0) throw std::invalid_argument("build_approx_complex: k must be nonnegative");
    vertex_graph g = build_vertex_graph(pc, beta, pc.dim());
    return expand(pc, beta, k, size_cap, std::move(g),
                  [](const std::vector<std::int32_t>&, const std::vector<lattice_point>&) {
                      return true;
                  });
}

approx_complex nerve_oracle(const point_cloud& pc, double beta, int k) {
    const int d = pc.dim();
    if (d > 6) throw std::invalid_argument("nerve_oracle: verification oracle is limited to d <= 6");
    vertex_graph g = build_vertex_graph(pc, beta, d);
    // cells share a common face iff the relative neighbor masks of the
    // non-base cells form a strictly nested chain
    auto accept = [d](const std::vector<std::int32_t>& s, const std::vector<lattice_point>& verts) {
        if (s.size() == 2) return true;  // adjacency is exactly pairwise intersection
        const lattice_point& base = verts[s[0]];
        std::vector<std::uint64_t> masks;
        for (std::size_t i = 1; i < s.size(); ++i) {
            const lattice_point& q = verts[s[i]];
            std::uint64_t mask = 0;
            const std::int64_t k0 =
                (((q.num[0] - base.num[0]) % (d + 1)) + (d + 1)) % (d + 1);
            for (int t = 0; t <= d; ++t)
                if (q.num[t] - base.num[t] == k0 - (d + 1)) mask |= std::uint64_t{1} << t;
            masks.push_back(mask);
        }
        std::sort(masks.begin(), masks.end(),
                  [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
        for (std::size_t i = 1; i < masks.size(); ++i) {
            if (masks[i] == masks[i - 1]) return false;
            if ((masks[i - 1] & masks[i]) != masks[i - 1]) return false;
        }
        return true;
    };
    return expand(pc, beta, k, 0, std::move(g), accept);
}

}  // namespace permrips
