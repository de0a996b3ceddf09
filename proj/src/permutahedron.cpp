#include "permrips/permutahedron.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace permrips {

bool lex_less(const ordered_partition& a, const ordered_partition& b) {
    return std::lexicographical_compare(a.blocks.begin(), a.blocks.end(), b.blocks.begin(),
                                        b.blocks.end());
}

ordered_partition make_partition(std::vector<std::uint64_t> blocks, int d) {
    if (d < 1 || d >= 62) throw std::invalid_argument("ordered_partition: bad d");
    const std::uint64_t full = (std::uint64_t{1} << (d + 1)) - 1;
    std::uint64_t seen = 0;
    for (std::uint64_t b : blocks) {
        if (b == 0) throw std::invalid_argument("ordered_partition: empty block");
        if (b & ~full) throw std::invalid_argument("ordered_partition: block outside [d+1]");
        if (b & seen) throw std::invalid_argument("ordered_partition: overlapping blocks");
        seen |= b;
    }
    if (seen != full) throw std::invalid_argument("ordered_partition: blocks must cover [d+1]");
    ordered_partition p;
    p.blocks = std::move(blocks);
    p.d = d;
    return p;
}

perm_face make_face(ordered_partition p) {
    perm_face f;
    f.dim = p.d + 1 - p.block_count();
    f.partition = std::move(p);
    return f;
}

vec vertex_coordinates(const std::vector<int>& perm, int d) {
    if (perm.size() != static_cast<std::size_t>(d + 1))
        throw std::invalid_argument("vertex_coordinates: permutation must have length d+1");
    std::vector<bool> used(d + 1, false);
    for (int v : perm) {
        if (v < 0 || v > d || used[v]) throw std::invalid_argument("vertex_coordinates: not a permutation");
        used[v] = true;
    }
    vec out(d + 1);
    const double den = 2.0 * (d + 1);
    for (int i = 0; i <= d; ++i) out[i] = static_cast<double>(d - 2 * perm[i]) / den;
    return out;
}

double circumradius(int d) {
    return std::sqrt(static_cast<double>(d) * (d + 2) / (12.0 * (d + 1)));
}

namespace {

// Unordered set partitions of {0..d} into exactly b blocks, via restricted
// growth strings. Blocks come out ordered by smallest element.
void unordered_partitions(int d, int b, std::vector<std::vector<std::uint64_t>>& out) {
    const int n = d + 1;
    std::vector<int> a(n, 0);
    std::vector<std::uint64_t> blocks;
    auto rec = [&](auto&& self, int i, int maxc) -> void {
        if (i == n) {
            if (maxc + 1 == b) {
                blocks.assign(b, 0);
                for (int j = 0; j < n; ++j) blocks[a[j]] |= std::uint64_t{1} << j;
                out.push_back(blocks);
            }
            return;
        }
        int limit = std::min(maxc + 1, b - 1);
        for (int c = 0; c <= limit; ++c) {
            // remaining positions must still allow reaching b classes
            int newmax = std::max(maxc, c);
            if (newmax + 1 + (n - 1 - i) < b) continue;
            a[i] = c;
            self(self, i + 1, newmax);
        }
    };
    rec(rec, 0, -1);
}

}  // namespace

std::vector<perm_face> faces_of_dim(int d, int dim) {
    if (dim < 0 || dim > d - 1) throw std::invalid_argument("faces_of_dim: dim must be in [0, d-1]");
    const int b = d + 1 - dim;
    std::vector<std::vector<std::uint64_t>> parts;
    unordered_partitions(d, b, parts);
    std::vector<perm_face> out;
    std::vector<int> idx(b);
    for (auto& blocks : parts) {
        for (int i = 0; i < b; ++i) idx[i] = i;
        do {
            std::vector<std::uint64_t> arranged(b);
            for (int i = 0; i < b; ++i) arranged[i] = blocks[idx[i]];
            out.push_back(make_face(make_partition(std::move(arranged), d)));
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    std::sort(out.begin(), out.end(),
              [](const perm_face& x, const perm_face& y) { return lex_less(x.partition, y.partition); });
    return out;
}

std::uint64_t ordered_partition_count(int d, int b) {
    const int n = d + 1;
    if (b < 1 || b > n) return 0;
    // Stirling numbers of the second kind
    std::vector<std::vector<std::uint64_t>> S(n + 1, std::vector<std::uint64_t>(b + 1, 0));
    S[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= b; ++j) S[i][j] = S[i - 1][j - 1] + static_cast<std::uint64_t>(j) * S[i - 1][j];
    std::uint64_t f = 1;
    for (int j = 2; j <= b; ++j) f *= j;
    return f * S[n][b];
}

bool facets_adjacent(const perm_face& f1, const perm_face& f2) {
    if (f1.partition.block_count() != 2 || f2.partition.block_count() != 2)
        throw std::invalid_argument("facets_adjacent: both faces must be facets");
    std::uint64_t s = f1.partition.blocks[0], t = f2.partition.blocks[0];
    return (s & t) == s || (s & t) == t;
}

bool face_incidence(const perm_face& sub, const perm_face& sup) {
    if (sub.dim >= sup.dim) throw std::invalid_argument("face_incidence: need sub.dim < sup.dim");
    // each sup block must be the union of consecutive sub blocks
    std::size_t i = 0;
    for (std::uint64_t target : sup.partition.blocks) {
        std::uint64_t acc = 0;
        while (acc != target) {
            if (i >= sub.partition.blocks.size()) return false;
            acc |= sub.partition.blocks[i++];
            if (acc & ~target) return false;
        }
    }
    return i == sub.partition.blocks.size();
}

std::vector<std::int64_t> barycenter_numerators(const ordered_partition& p) {
    const int d = p.d;
    std::vector<std::int64_t> num(d + 1, 0);
    std::int64_t offset = 0;
    for (std::uint64_t b : p.blocks) {
        const std::int64_t s = std::popcount(b);
        const std::int64_t v = 2 * offset + s - (d + 1);
        for (int i = 0; i <= d; ++i)
            if ((b >> i) & 1) num[i] = v;
        offset += s;
    }
    return num;
}

vec barycenter(const perm_face& face) {
    const int d = face.partition.d;
    std::vector<std::int64_t> num = barycenter_numerators(face.partition);
    vec out(d + 1);
    const double den = 2.0 * (d + 1);
    for (int i = 0; i <= d; ++i) out[i] = static_cast<double>(num[i]) / den;
    return out;
}

void barycenter_norm2_exact(const ordered_partition& p, std::int64_t& num, std::int64_t& den) {
    std::vector<std::int64_t> b = barycenter_numerators(p);
    num = 0;
    for (std::int64_t v : b) num += v * v;
    den = 4ll * (p.d + 1) * (p.d + 1);
}

std::vector<ordered_partition> enumerate_good_partitions(int d, int ell, int k) {
    if (ell < 1 || k < 1) throw std::invalid_argument("enumerate_good_partitions: bad parameters");
    if (static_cast<std::int64_t>(k) * ell > d + 1)
        throw std::invalid_argument("enumerate_good_partitions: infeasible (k*ell > d+1)");
    const std::uint64_t full = (std::uint64_t{1} << (d + 1)) - 1;
    std::vector<ordered_partition> out;
    std::vector<std::uint64_t> blocks;
    auto rec = [&](auto&& self, std::uint64_t remaining, int left) -> void {
        if (left == 1) {
            if (std::popcount(remaining) >= ell) {
                blocks.push_back(remaining);
                out.push_back(make_partition(blocks, d));
                blocks.pop_back();
            }
            return;
        }
        const int avail = std::popcount(remaining);
        // enumerate submasks of `remaining` as the next block
        for (std::uint64_t s = remaining; s; s = (s - 1) & remaining) {
            const int c = std::popcount(s);
            if (c < ell || avail - c < (left - 1) * ell) continue;
            blocks.push_back(s);
            self(self, remaining & ~s, left - 1);
            blocks.pop_back();
        }
    };
    rec(rec, full, k);
    std::sort(out.begin(), out.end(), [](const ordered_partition& a, const ordered_partition& b) {
        return lex_less(a, b);
    });
    return out;
}

std::uint64_t uniform_good_count(int d, int ell) {
    if ((d + 1) % ell != 0) throw std::invalid_argument("uniform_good_count: ell must divide d+1");
    std::uint64_t num = 1;
    for (int i = 2; i <= d + 1; ++i) num *= i;
    std::uint64_t lf = 1;
    for (int i = 2; i <= ell; ++i) lf *= i;
    for (int i = 0; i < (d + 1) / ell; ++i) num /= lf;
    return num;
}

std::vector<vec> face_vertices(const perm_face& f) {
    const int d = f.partition.d;
    // Group positions by block; a vertex assigns the block's run of order
    // values to its positions in any within-block order.
    std::vector<std::vector<int>> positions;
    for (std::uint64_t b : f.partition.blocks) {
        std::vector<int> pos;
        for (int i = 0; i <= d; ++i)
            if ((b >> i) & 1) pos.push_back(i);
        positions.push_back(std::move(pos));
    }
    std::vector<vec> out;
    std::vector<int> rank(d + 1, 0);  // rank r -> base value index (d - 2r style)
    auto emit = [&]() {
        vec v(d + 1);
        const double den = 2.0 * (d + 1);
        for (int i = 0; i <= d; ++i) v[i] = static_cast<double>(2 * rank[i] - d) / den;
        out.push_back(std::move(v));
    };
    // ranks 0..d assigned increasingly across blocks; permute within block
    auto rec = [&](auto&& self, std::size_t bi, int next_rank) -> void {
        if (bi == positions.size()) {
            emit();
            return;
        }
        std::vector<int> pos = positions[bi];
        std::sort(pos.begin(), pos.end());
        do {
            for (std::size_t j = 0; j < pos.size(); ++j) rank[pos[j]] = next_rank + static_cast<int>(j);
            self(self, bi + 1, next_rank + static_cast<int>(pos.size()));
        } while (std::next_permutation(pos.begin(), pos.end()));
    };
    rec(rec, 0, 0);
    return out;
}

std::vector<lattice_point> partition_to_simplex(const ordered_partition& p) {
    std::vector<lattice_point> verts;
    verts.push_back(lattice_origin(p.d));
    std::uint64_t prefix = 0;
    for (std::size_t i = 0; i + 1 < p.blocks.size(); ++i) {
        prefix |= p.blocks[i];
        verts.push_back(delaunay_neighbor(lattice_origin(p.d), prefix));
    }
    return verts;
}

namespace {

// Min-norm point in the affine hull of given points (Wolfe minor step):
// solve for weights summing to one minimizing |sum w_i s_i|.
bool affine_min_norm(const std::vector<vec>& S, std::vector<double>& w) {
    const int m = static_cast<int>(S.size());
    // system: [0 1^T; 1 G] [nu; w] = [1; 0]
    const int n = m + 1;
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    A[0][0] = 0;
    for (int i = 0; i < m; ++i) A[0][i + 1] = 1, A[i + 1][0] = 1;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A[i + 1][j + 1] = dot(S[i], S[j]);
    A[0][n] = 1;
    // gaussian elimination with partial pivoting
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        if (std::abs(A[piv][c]) < 1e-14) return false;
        std::swap(A[c], A[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            for (int cc = c; cc <= n; ++cc) A[r][cc] -= f * A[c][cc];
        }
    }
    w.resize(m);
    for (int i = 0; i < m; ++i) w[i] = A[i + 1][n] / A[i + 1][i + 1];
    return true;
}

vec combine(const std::vector<vec>& S, const std::vector<double>& w) {
    vec x(S[0].size(), 0.0);
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += w[i] * S[i][j];
    return x;
}

}  // namespace

double convex_hulls_distance(const std::vector<vec>& A, const std::vector<vec>& B, double* gap) {
    if (A.empty() || B.empty()) throw std::invalid_argument("convex_hulls_distance: empty hull");
    // Minkowski difference point set
    std::vector<vec> P;
    P.reserve(A.size() * B.size());
    for (const vec& a : A)
        for (const vec& b : B) P.push_back(sub(a, b));

    // Wolfe's min-norm point algorithm
    std::size_t start = 0;
    for (std::size_t i = 1; i < P.size(); ++i)
        if (norm2(P[i]) < norm2(P[start])) start = i;
    std::vector<std::size_t> corral{start};
    std::vector<double> lambda{1.0};
    vec x = P[start];
    double g = 0.0;
    const double eps = 1e-13;
    for (int iter = 0; iter < 10000; ++iter) {
        // most violating vertex
        std::size_t jstar = 0;
        double best = dot(x, P[0]);
        for (std::size_t j = 1; j < P.size(); ++j) {
            double v = dot(x, P[j]);
            if (v < best) best = v, jstar = j;
        }
        g = norm2(x) - best;
        if (g <= eps * std::max(1.0, norm2(x))) break;
        if (std::find(corral.begin(), corral.end(), jstar) != corral.end()) break;
        corral.push_back(jstar);
        lambda.push_back(0.0);
        // minor cycles
        for (;;) {
            std::vector<vec> S;
            for (std::size_t idx : corral) S.push_back(P[idx]);
            std::vector<double> w;
            if (!affine_min_norm(S, w)) {
                // degenerate corral: drop the last added point
                corral.pop_back();
                lambda.pop_back();
                break;
            }
            bool interior = true;
            for (double wi : w)
                if (wi < 1e-12) interior = false;
            if (interior) {
                lambda = w;
                x = combine(S, w);
                break;
            }
            // step toward w until a coefficient vanishes
            double theta = 1.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] < 1e-12) theta = std::min(theta, lambda[i] / (lambda[i] - w[i]));
            for (std::size_t i = 0; i < w.size(); ++i)
                lambda[i] = (1 - theta) * lambda[i] + theta * w[i];
            std::vector<std::size_t> nc;
            std::vector<double> nl;
            for (std::size_t i = 0; i < lambda.size(); ++i)
                if (lambda[i] > 1e-12) nc.push_back(corral[i]), nl.push_back(lambda[i]);
            if (nc.empty()) {
                nc.push_back(corral[0]);
                nl.push_back(1.0);
            }
            corral = std::move(nc);
            lambda = std::move(nl);
            std::vector<vec> S2;
            for (std::size_t idx : corral) S2.push_back(P[idx]);
            double tot = 0;
            for (double l : lambda) tot += l;
            for (double& l : lambda) l /= tot;
            x = combine(S2, lambda);
        }
    }
    if (gap) *gap = g;
    return norm(x);
}

bool opposite_facet_certificate(const std::vector<int>& perm, int d) {
    if (perm.size() != static_cast<std::size_t>(d + 1)) return false;
    // position carrying the largest base value (perm value 0) and the smallest
    int i1 = -1, i2 = -1;
    for (int i = 0; i <= d; ++i) {
        if (perm[i] == 0) i1 = i;
        if (perm[i] == d) i2 = i;
    }
    if (i1 < 0 || i2 < 0) return false;
    const lattice_point origin = lattice_origin(d);
    // plane value scaled by (d+1): -num[i1] + num[i2] + (d+1)
    auto plane = [&](const lattice_point& p) { return -p.num[i1] + p.num[i2] + (d + 1); };

    // facet opposite the origin: the d prefix neighbors of the permuted chain
    // T_k = positions of the k smallest base values
    for (int k = 1; k <= d; ++k) {
        std::uint64_t mask = 0;
        for (int i = 0; i <= d; ++i)
            if (perm[i] >= d + 1 - k) mask |= std::uint64_t{1} << i;
        if (plane(delaunay_neighbor(origin, mask)) != 0) return false;
    }
    // all neighbors on the plane or strictly on the origin side
    for (const lattice_point& q : delaunay_neighbors(origin))
        if (plane(q) < 0) return false;
    if (plane(origin) != d + 1) return false;

    // permutahedron stays at distance >= 1/(sqrt2 (d+1)): with vertex
    // numerators over 2(d+1), plane*2(d+1) = -n[i1]+n[i2]+2(d+1) >= 2 since
    // n[i1]-n[i2] <= 2d for entries drawn from {d, d-2, ..., -d}.
    if (d <= 6) {
        std::vector<int> p(d + 1);
        for (int i = 0; i <= d; ++i) p[i] = i;
        do {
            std::int64_t n1 = d - 2 * p[i1], n2 = d - 2 * p[i2];
            if (-n1 + n2 + 2 * (d + 1) < 2) return false;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return true;
}

}  // namespace permrips
