#include "permrips/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "permrips/miniball.hpp"

namespace permrips {

namespace {

// all ascending (k+1)-tuples of {0..n-1}, emitted lexicographically
template <typename F>
void combinations(int n, int size, F&& emit) {
    std::vector<std::int32_t> c(size);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == size) {
            emit(c);
            return;
        }
        for (int v = start; v <= n - (size - pos); ++v) {
            c[pos] = v;
            self(self, pos + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
}

double half_diameter(const point_cloud& pc, const std::vector<std::int32_t>& s) {
    double mx = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) mx = std::max(mx, pc.distance(s[i], s[j]));
    return mx / 2.0;
}

std::vector<vec> gather(const point_cloud& pc, const std::vector<std::int32_t>& s) {
    std::vector<vec> pts;
    pts.reserve(s.size());
    for (std::int32_t i : s) pts.push_back(pc.points[i]);
    return pts;
}

}  // namespace

skeleton build_rips(const point_cloud& pc, double r, int k) {
    if (r < 0) throw std::invalid_argument("build_rips: negative scale");
    const int n = pc.size();
    const double cutoff = 2.0 * r;
    std::vector<std::vector<std::int32_t>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pc.distance(i, j) <= cutoff) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    skeleton K;
    K.cells.assign(std::max(k, 0) + 1, {});
    for (int v = 0; v < n; ++v) K.cells[0].push_back(v);
    std::vector<std::int32_t> simplex;
    auto rec = [&](auto&& self, const std::vector<std::int32_t>& cands) -> void {
        const int p = static_cast<int>(simplex.size()) - 1;
        if (p >= k) return;
        for (std::size_t ci = 0; ci < cands.size(); ++ci) {
            std::int32_t u = cands[ci];
            simplex.push_back(u);
            K.cells[p + 1].insert(K.cells[p + 1].end(), simplex.begin(), simplex.end());
            std::vector<std::int32_t> next;
            std::set_intersection(cands.begin() + ci + 1, cands.end(),
                                  std::upper_bound(adj[u].begin(), adj[u].end(), u), adj[u].end(),
                                  std::back_inserter(next));
            self(self, next);
            simplex.pop_back();
        }
    };
    for (int v = 0; v < n; ++v) {
        simplex.assign(1, v);
        std::vector<std::int32_t> cands(std::upper_bound(adj[v].begin(), adj[v].end(), v),
                                        adj[v].end());
        rec(rec, cands);
    }
    return K;
}

skeleton rips_filtration_skeleton(const point_cloud& pc, int k) {
    const int n = pc.size();
    skeleton K;
    K.cells.assign(k + 1, {});
    K.values.assign(k + 1, {});
    for (int p = 0; p <= k; ++p) {
        combinations(n, p + 1, [&](const std::vector<std::int32_t>& c) {
            K.cells[p].insert(K.cells[p].end(), c.begin(), c.end());
            K.values[p].push_back(p == 0 ? 0.0 : half_diameter(pc, c));
        });
    }
    return K;
}

skeleton cech_filtration_skeleton(const point_cloud& pc, int k) {
    if (pc.metric_only()) throw std::invalid_argument("cech: coordinates required");
    const int n = pc.size();
    skeleton K;
    K.cells.assign(k + 1, {});
    K.values.assign(k + 1, {});
    for (int p = 0; p <= k; ++p) {
        std::vector<std::int32_t> facet(p);
        combinations(n, p + 1, [&](const std::vector<std::int32_t>& c) {
            double a = p == 0 ? 0.0 : miniball_radius(gather(pc, c));
            if (p > 0) {
                // guard monotonicity against miniball slack
                for (int omit = 0; omit <= p; ++omit) {
                    int t = 0;
                    for (int j = 0; j <= p; ++j)
                        if (j != omit) facet[t++] = c[j];
                    std::int64_t row = K.find(p - 1, facet);
                    a = std::max(a, K.values[p - 1][row]);
                }
            }
            K.cells[p].insert(K.cells[p].end(), c.begin(), c.end());
            K.values[p].push_back(a);
        });
    }
    return K;
}

barcode rips_barcode(const point_cloud& pc, int max_hom_dim) {
    skeleton K = rips_filtration_skeleton(pc, max_hom_dim + 1);
    return reduce_filtration(build_filtration(K, max_hom_dim + 1), max_hom_dim).bc;
}

barcode cech_barcode(const point_cloud& pc, int max_hom_dim) {
    skeleton K = cech_filtration_skeleton(pc, max_hom_dim + 1);
    return reduce_filtration(build_filtration(K, max_hom_dim + 1), max_hom_dim).bc;
}

face_coface face_coface_distances(const point_cloud& pc, std::vector<int> sigma) {
    if (sigma.empty()) throw std::invalid_argument("face_coface_distances: empty simplex");
    std::sort(sigma.begin(), sigma.end());
    if (std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end())
        throw std::invalid_argument("face_coface_distances: repeated vertex");
    std::vector<std::int32_t> s(sigma.begin(), sigma.end());
    const double alpha = s.size() == 1 ? 0.0 : miniball_radius(gather(pc, s));
    face_coface out;
    if (s.size() > 1) {
        for (std::size_t omit = 0; omit < s.size(); ++omit) {
            std::vector<std::int32_t> f;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != omit) f.push_back(s[j]);
            double af = f.size() == 1 ? 0.0 : miniball_radius(gather(pc, f));
            out.L = std::min(out.L, alpha - af);
        }
    }
    for (int p = 0; p < pc.size(); ++p) {
        if (std::binary_search(s.begin(), s.end(), p)) continue;
        std::vector<std::int32_t> c(s);
        c.push_back(p);
        std::sort(c.begin(), c.end());
        out.L_star = std::min(out.L_star, miniball_radius(gather(pc, c)) - alpha);
    }
    return out;
}

int count_significant_intervals(const barcode& bc, double delta) {
    if (delta <= 0) throw std::invalid_argument("count_significant_intervals: delta must be positive");
    int count = 0;
    for (const bar& b : bc.bars) {
        if (b.death == kInf) {
            if (delta < 0.5) ++count;
        } else if (b.death > b.birth && b.death > 0 && delta < (b.death - b.birth) / (2 * b.death)) {
            ++count;
        }
    }
    return count;
}

// --- lower-bound instance ------------------------------------------------

lower_bound_instance build_lower_bound_instance(int d, int ell) {
    if (d < 1 || d > 10) throw std::invalid_argument("lower_bound_instance: d out of range");
    if (ell < 1) throw std::invalid_argument("lower_bound_instance: ell must be >= 1");
    lower_bound_instance inst;
    inst.d = d;
    inst.ell = ell;
    inst.uniform = (d + 1) % ell == 0;
    inst.k = inst.uniform ? (d + 1) / ell : 0;
    inst.points.push_back(lattice_origin(d));
    const std::uint64_t full = (std::uint64_t{1} << (d + 1)) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask)
        inst.points.push_back(delaunay_neighbor(lattice_origin(d), mask));
    std::vector<vec> coords;
    coords.reserve(inst.points.size());
    for (const auto& p : inst.points) coords.push_back(lattice_coords(p, 1.0));
    inst.cloud = make_point_cloud(std::move(coords));
    return inst;
}

namespace {

// partition of the simplex around a new base vertex, recovered from the
// translated neighbor masks (exact integer arithmetic)
std::vector<std::uint64_t> partition_from_masks(std::vector<std::uint64_t> masks, int d) {
    std::sort(masks.begin(), masks.end(),
              [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
    const std::uint64_t full = (std::uint64_t{1} << (d + 1)) - 1;
    std::vector<std::uint64_t> blocks;
    std::uint64_t prev = 0;
    for (std::uint64_t m : masks) {
        if ((prev & m) != prev || m == prev) return {};  // not a chain
        blocks.push_back(m & ~prev);
        prev = m;
    }
    blocks.push_back(full & ~prev);
    return blocks;
}

std::uint64_t mask_of_difference(const lattice_point& q, const lattice_point& base, int d) {
    const std::int64_t k0 = (((q.num[0] - base.num[0]) % (d + 1)) + (d + 1)) % (d + 1);
    std::uint64_t mask = 0;
    for (int t = 0; t <= d; ++t)
        if (q.num[t] - base.num[t] == k0 - (d + 1)) mask |= std::uint64_t{1} << t;
    return mask;
}

}  // namespace

lower_bound_report verify_good_simplices(const lower_bound_instance& inst, bool with_barcode) {
    if (!inst.uniform)
        throw std::invalid_argument("verify_good_simplices: ell must divide d+1");
    const int d = inst.d, ell = inst.ell, k = inst.k;
    const int n = inst.cloud.size();
    lower_bound_report rep;
    rep.d = d;
    rep.ell = ell;
    rep.k = k;
    rep.n = n;
    rep.expected_count = uniform_good_count(d, ell);
    rep.bound = ell / (24.0 * std::pow(static_cast<double>(d + 1), 1.5));
    rep.alt_bound = (ell - 1) / (16.0 * (d + 1) * std::sqrt(static_cast<double>(d)));
    rep.significance_delta = 0.9 * ell / (96.0 * (d + 1) * (d + 1));
    rep.diameter = diameter(inst.cloud);
    rep.diameter_bound = 2.0 * std::sqrt(static_cast<double>(d));

    const bool measure = n <= 100;
    std::vector<ordered_partition> partitions = enumerate_good_partitions(d, ell, k);
    rep.count = partitions.size();
    rep.counts_match = rep.count == rep.expected_count;

    // optional global reduction for the associated intervals
    reduction_result red;
    filtration filt;
    std::unordered_map<std::uint64_t, std::int64_t> index_of;  // packed dim-(k-1) tuples
    rep.barcode_computed = with_barcode && measure;
    if (rep.barcode_computed) {
        skeleton K = cech_filtration_skeleton(inst.cloud, k);
        filt = build_filtration(K, k);
        red = reduce_filtration(filt, k - 1);
        for (std::size_t i = 0; i < filt.size(); ++i) {
            if (filt.dim[i] != k - 1) continue;
            auto s = filt.simplex(i);
            std::uint64_t key = 0;
            for (std::int32_t v : s) key = (key << 16) | static_cast<std::uint32_t>(v + 1);
            index_of.emplace(key, static_cast<std::int64_t>(i));
        }
    }

    bool alphas = true, split_exact = true, split_stated = true, bounds = true, cyclic = true;
    bool signif = true, pairing = true;
    for (const ordered_partition& part : partitions) {
        good_simplex_record rec;
        rec.partition = part;
        std::vector<lattice_point> verts = partition_to_simplex(part);
        for (const lattice_point& v : verts) {
            // index in the instance cloud: origin = 0, neighbor mask = mask value
            std::uint64_t mask = mask_of_difference(v, inst.points[0], d);
            rec.simplex.push_back(static_cast<int>(mask));
        }
        std::sort(rec.simplex.begin(), rec.simplex.end());

        std::int64_t a_num, a_den;
        barycenter_norm2_exact(part, a_num, a_den);
        rec.alpha_closed_form = std::sqrt(static_cast<double>(a_num) / static_cast<double>(a_den));
        std::vector<std::int32_t> s32(rec.simplex.begin(), rec.simplex.end());
        rec.alpha_miniball = miniball_radius(gather(inst.cloud, s32));
        rep.max_alpha_diff =
            std::max(rep.max_alpha_diff, std::abs(rec.alpha_closed_form - rec.alpha_miniball));
        alphas = alphas && std::abs(rec.alpha_closed_form - rec.alpha_miniball) <= 1e-9;

        // splits of every block, exact rational identity on the alpha^2 gap
        rec.splitting_identity_exact = true;
        rec.splitting_identity_stated = true;
        rec.L_star_delaunay = kInf;
        for (std::size_t bi = 0; bi < part.blocks.size(); ++bi) {
            const std::uint64_t block = part.blocks[bi];
            for (std::uint64_t a = (block - 1) & block; a; a = (a - 1) & block) {
                const std::int64_t t = std::popcount(a);
                std::vector<std::uint64_t> blocks;
                for (std::size_t j = 0; j < part.blocks.size(); ++j) {
                    if (j == bi) {
                        blocks.push_back(a);
                        blocks.push_back(block & ~a);
                    } else {
                        blocks.push_back(part.blocks[j]);
                    }
                }
                std::int64_t t_num, t_den;
                barycenter_norm2_exact(make_partition(std::move(blocks), d), t_num, t_den);
                const std::int64_t delta_num = t_num - a_num;  // over 4(d+1)^2
                if (delta_num != ell * t * (ell - t)) rec.splitting_identity_exact = false;
                if (delta_num != (d + 1 + ell) * t * (ell - t)) rec.splitting_identity_stated = false;
                const double gap = std::sqrt(static_cast<double>(t_num) / static_cast<double>(t_den)) -
                                   rec.alpha_closed_form;
                rec.L_star_delaunay = std::min(rec.L_star_delaunay, gap);
            }
        }
        split_exact = split_exact && rec.splitting_identity_exact;
        split_stated = split_stated && rec.splitting_identity_stated;

        if (measure) {
            face_coface fc = face_coface_distances(inst.cloud, rec.simplex);
            rec.L = fc.L;
            rec.L_star_unrestricted = fc.L_star;
            rep.min_L = std::min(rep.min_L, rec.L);
            rep.min_L_star_unrestricted = std::min(rep.min_L_star_unrestricted, rec.L_star_unrestricted);
            rep.min_L_star_delaunay = std::min(rep.min_L_star_delaunay, rec.L_star_delaunay);
            bounds = bounds && rec.L >= rep.bound - 1e-9 && rec.L_star_delaunay >= rep.bound - 1e-9;
        }

        // re-rooting at any vertex cyclically shifts the partition
        rec.cyclic_shift_good = true;
        {
            std::uint64_t prefix = 0;
            for (std::size_t j = 0; j + 1 < part.blocks.size(); ++j) {
                prefix |= part.blocks[j];
                const lattice_point new_base = delaunay_neighbor(inst.points[0], prefix);
                std::vector<std::uint64_t> masks;
                for (const lattice_point& v : verts)
                    if (!(v == new_base)) masks.push_back(mask_of_difference(v, new_base, d));
                std::vector<std::uint64_t> got = partition_from_masks(std::move(masks), d);
                std::vector<std::uint64_t> expect;
                for (std::size_t t = j + 1; t < part.blocks.size(); ++t) expect.push_back(part.blocks[t]);
                for (std::size_t t = 0; t <= j; ++t) expect.push_back(part.blocks[t]);
                if (got != expect) rec.cyclic_shift_good = false;
            }
        }
        cyclic = cyclic && rec.cyclic_shift_good;

        if (rep.barcode_computed) {
            std::uint64_t key = 0;
            for (int v : rec.simplex) key = (key << 16) | static_cast<std::uint32_t>(v + 1);
            auto it = index_of.find(key);
            if (it != index_of.end()) {
                const std::int64_t g = it->second;
                rec.has_interval = true;
                rec.positive = red.positive[g];
                if (rec.positive) {
                    rec.birth = filt.value[g];
                    rec.death = red.pair[g] < 0 ? kInf : filt.value[red.pair[g]];
                } else {
                    rec.birth = filt.value[red.pair[g]];
                    rec.death = filt.value[g];
                }
                const double len = rec.death - rec.birth;
                rec.significant = rec.death == kInf
                                      ? rep.significance_delta < 0.5
                                      : rep.significance_delta < len / (2 * rec.death);
                const double needed = rec.positive ? rec.L_star_unrestricted : rec.L;
                rec.pairing_bound_ok = len >= needed - 1e-9;
                signif = signif && rec.significant;
                pairing = pairing && rec.pairing_bound_ok;
            } else {
                rec.has_interval = false;
                signif = pairing = false;
            }
        }
        rep.simplices.push_back(std::move(rec));
    }
    rep.alphas_match = alphas;
    rep.splitting_exact_all = split_exact;
    rep.splitting_stated_all = split_stated;
    rep.bounds_pass = measure && bounds;
    rep.cyclic_shift_all = cyclic;
    rep.significance_all = rep.barcode_computed && signif;
    rep.pairing_bounds_all = rep.barcode_computed && pairing;
    return rep;
}

}  // namespace permrips
