#include "permrips/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace permrips {

void barcode::sort() {
    std::sort(bars.begin(), bars.end(), [](const bar& a, const bar& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
}

barcode restrict_dim(const barcode& bc, int dim) {
    barcode out;
    for (const bar& b : bc.bars)
        if (b.dim == dim) out.bars.push_back(b);
    return out;
}

barcode clamp_below(const barcode& bc, double lo) {
    barcode out;
    for (bar b : bc.bars) {
        if (b.death <= lo) continue;
        b.birth = std::max(b.birth, lo);
        out.bars.push_back(b);
    }
    return out;
}

filtration build_filtration(const skeleton& K, int max_simplex_dim) {
    if (!K.has_values()) throw std::invalid_argument("build_filtration: skeleton has no values");
    const int top = std::min(max_simplex_dim, K.top_dim());
    struct entry {
        double value;
        int dim;
        std::size_t row;
    };
    std::vector<entry> order;
    for (int p = 0; p <= top; ++p)
        for (std::size_t r = 0; r < K.count(p); ++r) order.push_back({K.values[p][r], p, r});
    std::sort(order.begin(), order.end(), [](const entry& a, const entry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.row < b.row;  // rows are lex-sorted per dimension
    });
    filtration f;
    f.max_dim = top;
    f.offset.push_back(0);
    for (const entry& e : order) {
        f.value.push_back(e.value);
        f.dim.push_back(static_cast<std::int8_t>(e.dim));
        auto s = K.simplex(e.dim, e.row);
        f.verts.insert(f.verts.end(), s.begin(), s.end());
        f.offset.push_back(f.verts.size());
    }
    return f;
}

namespace {

// Per-dimension row->global-index tables plus facet column assembly.
struct boundary_index {
    // key: packed vertex tuple per dimension, sorted; value: global index
    std::vector<std::vector<std::pair<std::vector<std::int32_t>, std::int64_t>>> table;

    explicit boundary_index(const filtration& f) : table(f.max_dim + 1) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto s = f.simplex(i);
            table[f.dim[i]].push_back({{s.begin(), s.end()}, static_cast<std::int64_t>(i)});
        }
        for (auto& t : table) std::sort(t.begin(), t.end());
    }

    std::int64_t find(int dim, const std::vector<std::int32_t>& key) const {
        const auto& t = table[dim];
        auto it = std::lower_bound(t.begin(), t.end(), key,
                                   [](const auto& a, const auto& k) { return a.first < k; });
        if (it == t.end() || it->first != key) throw std::runtime_error("filtration: missing facet");
        return it->second;
    }

    // Sorted global indices of the facets of simplex i.
    std::vector<std::int64_t> facets(const filtration& f, std::size_t i) const {
        auto s = f.simplex(i);
        const int p = f.dim[i];
        std::vector<std::int64_t> col;
        if (p == 0) return col;
        std::vector<std::int32_t> key(p);
        for (int omit = 0; omit <= p; ++omit) {
            int t = 0;
            for (int j = 0; j <= p; ++j)
                if (j != omit) key[t++] = s[j];
            std::int64_t g = find(p - 1, key);
            if (f.value[g] > f.value[i] + 1e-12)
                throw std::invalid_argument("reduce_filtration: non-monotone filtration values");
            col.push_back(g);
        }
        std::sort(col.begin(), col.end());
        return col;
    }
};

// symmetric difference of sorted index vectors
std::vector<std::int64_t> add_columns(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else
            ++i, ++j;
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

barcode bars_from_pairs(const filtration& f, const std::vector<std::int64_t>& pair,
                        const std::vector<char>& positive, int max_hom_dim) {
    barcode bc;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!positive[i] || f.dim[i] > max_hom_dim) continue;
        if (pair[i] < 0) {
            bc.bars.push_back({f.dim[i], f.value[i], kInf});
        } else {
            double death = f.value[pair[i]];
            if (death > f.value[i]) bc.bars.push_back({f.dim[i], f.value[i], death});
        }
    }
    bc.sort();
    return bc;
}

}  // namespace

reduction_result reduce_filtration(const filtration& f, int max_hom_dim) {
    const std::size_t m = f.size();
    boundary_index bindex(f);
    reduction_result res;
    res.pair.assign(m, -1);
    res.positive.assign(m, 0);

    std::vector<std::int64_t> low_to_col(m, -1);
    std::vector<std::vector<std::int64_t>> stored(m);

    // top dimension first so lower dimensions can use clearing
    for (int p = f.max_dim; p >= 1; --p) {
        for (std::size_t i = 0; i < m; ++i) {
            if (f.dim[i] != p) continue;
            if (res.pair[i] != -1) continue;  // cleared: already paired as positive
            std::vector<std::int64_t> col = bindex.facets(f, i);
            while (!col.empty()) {
                std::int64_t low = col.back();
                std::int64_t j = low_to_col[low];
                if (j < 0) break;
                col = add_columns(col, stored[j]);
            }
            if (col.empty()) {
                res.positive[i] = 1;
            } else {
                std::int64_t low = col.back();
                low_to_col[low] = static_cast<std::int64_t>(i);
                stored[i] = std::move(col);
                res.pair[low] = static_cast<std::int64_t>(i);
                res.pair[i] = low;
                res.positive[low] = 1;
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        if (f.dim[i] == 0) res.positive[i] = 1;
    res.bc = bars_from_pairs(f, res.pair, res.positive, max_hom_dim);
    return res;
}

reduction_result reduce_filtration_basic(const filtration& f, int max_hom_dim) {
    const std::size_t m = f.size();
    boundary_index bindex(f);
    reduction_result res;
    res.pair.assign(m, -1);
    res.positive.assign(m, 0);
    std::vector<std::int64_t> low_to_col(m, -1);
    std::vector<std::vector<std::int64_t>> stored(m);

    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::int64_t> col = bindex.facets(f, i);
        while (!col.empty() && low_to_col[col.back()] >= 0)
            col = add_columns(col, stored[low_to_col[col.back()]]);
        if (col.empty()) {
            res.positive[i] = 1;
        } else {
            std::int64_t low = col.back();
            low_to_col[low] = static_cast<std::int64_t>(i);
            stored[i] = std::move(col);
            res.pair[low] = static_cast<std::int64_t>(i);
            res.pair[i] = low;
        }
    }
    res.bc = bars_from_pairs(f, res.pair, res.positive, max_hom_dim);
    return res;
}

// --- bottleneck --------------------------------------------------------

namespace {

struct hk_matching {
    // Hopcroft-Karp maximum bipartite matching
    int nl, nr;
    std::vector<std::vector<int>> adj;
    std::vector<int> match_l, match_r, dist;

    hk_matching(int l, int r) : nl(l), nr(r), adj(l) {}
    void add_edge(int l, int r) { adj[l].push_back(r); }

    bool bfs() {
        std::vector<int> q;
        dist.assign(nl, -1);
        for (int u = 0; u < nl; ++u)
            if (match_l[u] < 0) dist[u] = 0, q.push_back(u);
        bool found = false;
        for (std::size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w < 0)
                    found = true;
                else if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        return found;
    }
    bool dfs(int u) {
        for (int v : adj[u]) {
            int w = match_r[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    }
    int run() {
        match_l.assign(nl, -1);
        match_r.assign(nr, -1);
        int total = 0;
        while (bfs())
            for (int u = 0; u < nl; ++u)
                if (match_l[u] < 0 && dfs(u)) ++total;
        return total;
    }
};

struct finite_bar {
    double b, d;
};

double pair_cost(const finite_bar& x, const finite_bar& y) {
    return std::max(std::abs(x.b - y.b), std::abs(x.d - y.d));
}

// Perfect matching feasibility at threshold lam on the doubled bipartite
// graph (bars of A + diagonal copies of B) x (bars of B + diagonal copies
// of A); diagonal-diagonal pairs are free.
bool feasible(const std::vector<finite_bar>& A, const std::vector<finite_bar>& B, double lam) {
    const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size());
    hk_matching hk(na + nb, nb + na);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if (pair_cost(A[i], B[j]) <= lam) hk.add_edge(i, j);
    for (int i = 0; i < na; ++i)
        if ((A[i].d - A[i].b) / 2 <= lam) hk.add_edge(i, nb + i);
    for (int j = 0; j < nb; ++j)
        if ((B[j].d - B[j].b) / 2 <= lam) hk.add_edge(na + j, j);
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < na; ++i) hk.add_edge(na + j, nb + i);
    return hk.run() == na + nb;
}

}  // namespace

double bottleneck_distance(const barcode& a, const barcode& b, bool log_scale) {
    std::vector<finite_bar> A, B;
    std::vector<double> ainf, binf;
    auto ingest = [&](const barcode& bc, std::vector<finite_bar>& fin, std::vector<double>& inf) {
        for (const bar& x : bc.bars) {
            double birth = x.birth, death = x.death;
            if (log_scale) {
                if (birth <= 0) throw std::invalid_argument("bottleneck: log scale needs positive births");
                birth = std::log(birth);
                if (death != kInf) death = std::log(death);
            }
            if (death == kInf)
                inf.push_back(birth);
            else if (death > birth)
                fin.push_back({birth, death});
        }
    };
    ingest(a, A, ainf);
    ingest(b, B, binf);

    if (ainf.size() != binf.size()) return kInf;
    double inf_cost = 0;
    std::sort(ainf.begin(), ainf.end());
    std::sort(binf.begin(), binf.end());
    for (std::size_t i = 0; i < ainf.size(); ++i)
        inf_cost = std::max(inf_cost, std::abs(ainf[i] - binf[i]));

    std::vector<double> cand{0.0};
    for (const auto& x : A) cand.push_back((x.d - x.b) / 2);
    for (const auto& y : B) cand.push_back((y.d - y.b) / 2);
    for (const auto& x : A)
        for (const auto& y : B) cand.push_back(pair_cost(x, y));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t lo = 0, hi = cand.size() - 1;
    if (!feasible(A, B, cand[hi])) return kInf;  // cannot happen: diagonal always feasible at max
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(A, B, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max(cand[lo], inf_cost);
}

// --- F2 matrices --------------------------------------------------------

f2_matrix f2_matrix::zero(int r, int c) {
    f2_matrix m;
    m.rows = r;
    m.cols = c;
    m.words.assign(static_cast<std::size_t>(r) * ((c + 63) / 64), 0);
    return m;
}

f2_matrix f2_matrix::identity(int n) {
    f2_matrix m = zero(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

bool f2_matrix::get(int r, int c) const {
    return (words[static_cast<std::size_t>(r) * words_per_row() + c / 64] >> (c % 64)) & 1;
}

void f2_matrix::set(int r, int c, bool v) {
    auto& w = words[static_cast<std::size_t>(r) * words_per_row() + c / 64];
    if (v)
        w |= std::uint64_t{1} << (c % 64);
    else
        w &= ~(std::uint64_t{1} << (c % 64));
}

f2_matrix f2_mul(const f2_matrix& a, const f2_matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("f2_mul: shape mismatch");
    f2_matrix out = f2_matrix::zero(a.rows, b.cols);
    const int wb = b.words_per_row();
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k)
            if (a.get(i, k))
                for (int w = 0; w < wb; ++w)
                    out.words[static_cast<std::size_t>(i) * wb + w] ^=
                        b.words[static_cast<std::size_t>(k) * wb + w];
    return out;
}

int f2_rank(f2_matrix m) {
    const int wpr = m.words_per_row();
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.get(r, c)) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (int w = 0; w < wpr; ++w)
            std::swap(m.words[static_cast<std::size_t>(rank) * wpr + w],
                      m.words[static_cast<std::size_t>(piv) * wpr + w]);
        for (int r = 0; r < m.rows; ++r)
            if (r != rank && m.get(r, c))
                for (int w = 0; w < wpr; ++w)
                    m.words[static_cast<std::size_t>(r) * wpr + w] ^=
                        m.words[static_cast<std::size_t>(rank) * wpr + w];
        ++rank;
    }
    return rank;
}

// --- homology bases -----------------------------------------------------

namespace {

std::vector<std::int32_t> add_rows(const std::vector<std::int32_t>& a,
                                   const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else
            ++i, ++j;
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

std::vector<std::int32_t> facet_rows(const skeleton& K, int p, std::size_t row) {
    auto s = K.simplex(p, row);
    std::vector<std::int32_t> out;
    if (p == 0) return out;
    std::vector<std::int32_t> key(p);
    for (int omit = 0; omit <= p; ++omit) {
        int t = 0;
        for (int j = 0; j <= p; ++j)
            if (j != omit) key[t++] = s[j];
        std::int64_t r = K.find(p - 1, key);
        if (r < 0) throw std::runtime_error("homology_basis: skeleton not closed under faces");
        out.push_back(static_cast<std::int32_t>(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

chain_basis homology_basis(const skeleton& K, int p) {
    chain_basis cb;
    cb.p = p;
    cb.n_cells = K.count(p);
    cb.low_kind.assign(cb.n_cells, 0);
    cb.low_index.assign(cb.n_cells, -1);

    // reduce d_{p+1}: nonzero reduced columns are a basis of the boundaries
    std::vector<std::int32_t> killed(cb.n_cells, 0);
    std::vector<std::int32_t> low_to_bcol(cb.n_cells, -1);
    for (std::size_t r = 0; r < K.count(p + 1); ++r) {
        std::vector<std::int32_t> col = facet_rows(K, p + 1, r);
        while (!col.empty() && low_to_bcol[col.back()] >= 0)
            col = add_rows(col, cb.boundaries[low_to_bcol[col.back()]]);
        if (!col.empty()) {
            std::int32_t low = col.back();
            low_to_bcol[low] = static_cast<std::int32_t>(cb.boundaries.size());
            killed[low] = 1;
            cb.boundaries.push_back(std::move(col));
        }
    }

    // reduce d_p with basis tracking: V columns of zero-reduced rows are cycles
    std::vector<std::int32_t> low_to_zcol(K.count(p - 1 >= 0 ? p - 1 : 0), -1);
    std::vector<std::vector<std::int32_t>> stored_r(cb.n_cells), stored_v(cb.n_cells);
    if (p == 0) {
        // every vertex is a cycle
        for (std::size_t r = 0; r < cb.n_cells; ++r)
            if (!killed[r]) cb.cycles.push_back({static_cast<std::int32_t>(r)});
    } else {
        for (std::size_t r = 0; r < cb.n_cells; ++r) {
            std::vector<std::int32_t> col = facet_rows(K, p, r);
            std::vector<std::int32_t> v{static_cast<std::int32_t>(r)};
            while (!col.empty() && low_to_zcol[col.back()] >= 0) {
                std::int32_t j = low_to_zcol[col.back()];
                col = add_rows(col, stored_r[j]);
                v = add_rows(v, stored_v[j]);
            }
            if (col.empty()) {
                if (!killed[r]) cb.cycles.push_back(std::move(v));
            } else {
                low_to_zcol[col.back()] = static_cast<std::int32_t>(r);
                stored_r[r] = std::move(col);
                stored_v[r] = std::move(v);
            }
        }
    }

    for (std::size_t i = 0; i < cb.boundaries.size(); ++i) {
        cb.low_kind[cb.boundaries[i].back()] = 1;
        cb.low_index[cb.boundaries[i].back()] = static_cast<std::int32_t>(i);
    }
    for (std::size_t i = 0; i < cb.cycles.size(); ++i) {
        cb.low_kind[cb.cycles[i].back()] = 2;
        cb.low_index[cb.cycles[i].back()] = static_cast<std::int32_t>(i);
    }
    return cb;
}

std::vector<char> chain_basis::solve(std::vector<std::int32_t> z) const {
    std::vector<char> coeff(cycles.size(), 0);
    while (!z.empty()) {
        std::int32_t low = z.back();
        if (low_kind[low] == 1) {
            z = add_rows(z, boundaries[low_index[low]]);
        } else if (low_kind[low] == 2) {
            coeff[low_index[low]] ^= 1;
            z = add_rows(z, cycles[low_index[low]]);
        } else {
            throw std::runtime_error("chain_basis::solve: input is not a cycle");
        }
    }
    return coeff;
}

f2_matrix induced_map(const chain_basis& src_basis, const skeleton& src,
                      const std::vector<std::int32_t>& vertex_map, const chain_basis& dst_basis,
                      const skeleton& dst) {
    const int p = src_basis.p;
    f2_matrix M = f2_matrix::zero(dst_basis.betti(), src_basis.betti());
    for (int c = 0; c < src_basis.betti(); ++c) {
        // push the cycle through the vertex map, dropping degenerate images
        std::vector<std::int32_t> image;
        for (std::int32_t row : src_basis.cycles[c]) {
            auto s = src.simplex(p, row);
            std::vector<std::int32_t> mapped(s.size());
            for (std::size_t t = 0; t < s.size(); ++t) mapped[t] = vertex_map[s[t]];
            std::sort(mapped.begin(), mapped.end());
            if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end()) continue;
            std::int64_t r = dst.find(p, mapped);
            if (r < 0) throw std::runtime_error("induced_map: vertex map is not simplicial");
            image.push_back(static_cast<std::int32_t>(r));
        }
        std::sort(image.begin(), image.end());
        // cancel duplicate rows mod 2
        std::vector<std::int32_t> chain;
        for (std::size_t i = 0; i < image.size();) {
            std::size_t j = i;
            while (j < image.size() && image[j] == image[i]) ++j;
            if ((j - i) % 2) chain.push_back(image[i]);
            i = j;
        }
        std::vector<char> coeff = dst_basis.solve(std::move(chain));
        for (int r = 0; r < dst_basis.betti(); ++r)
            if (coeff[r]) M.set(r, c, true);
    }
    return M;
}

std::vector<std::vector<int>> composite_ranks(const std::vector<int>& betti,
                                              const std::vector<f2_matrix>& maps) {
    const int n = static_cast<int>(betti.size());
    std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        r[i][i] = betti[i];
        f2_matrix comp;
        for (int j = i + 1; j < n; ++j) {
            comp = (j == i + 1) ? maps[i] : f2_mul(maps[j - 1], comp);
            r[i][j] = f2_rank(comp);
        }
    }
    return r;
}

barcode rank_function_barcode(const std::vector<int>& betti, const std::vector<f2_matrix>& maps,
                              const std::vector<double>& scales, int hom_dim) {
    const int n = static_cast<int>(betti.size());
    if (maps.size() + 1 != static_cast<std::size_t>(n) || scales.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("rank_function_barcode: inconsistent sizes");
    auto ranks = composite_ranks(betti, maps);
    auto r = [&](int i, int j) {  // 1-based with boundary conventions
        if (i < 1 || j > n || i > j) return 0;
        return ranks[i - 1][j - 1];
    };
    barcode bc;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            int m = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1);
            if (m < 0) throw std::runtime_error("rank_function_barcode: negative multiplicity");
            for (int t = 0; t < m; ++t)
                bc.bars.push_back({hom_dim, scales[i - 1], j == n ? kInf : scales[j]});
        }
    }
    bc.sort();
    return bc;
}

}  // namespace permrips
