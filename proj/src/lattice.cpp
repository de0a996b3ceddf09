#include "permrips/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permrips {

bool lex_less(const lattice_point& a, const lattice_point& b) {
    return std::lexicographical_compare(a.num.begin(), a.num.end(), b.num.begin(), b.num.end());
}

lattice_point make_lattice_point(std::vector<std::int64_t> numerator, int d) {
    if (d < 1 || numerator.size() != static_cast<std::size_t>(d + 1))
        throw std::invalid_argument("lattice_point: numerator must have length d+1");
    std::int64_t sum = std::accumulate(numerator.begin(), numerator.end(), std::int64_t{0});
    if (sum != 0) throw std::invalid_argument("lattice_point: numerator must sum to zero");
    const std::int64_t m = d + 1;
    auto mod = [m](std::int64_t v) { return ((v % m) + m) % m; };
    std::int64_t r = mod(numerator[0]);
    for (std::int64_t v : numerator)
        if (mod(v) != r)
            throw std::invalid_argument("lattice_point: coordinates not in a single congruence class");
    lattice_point p;
    p.num = std::move(numerator);
    p.d = d;
    p.remainder = static_cast<int>(r);
    return p;
}

lattice_point lattice_origin(int d) {
    return make_lattice_point(std::vector<std::int64_t>(d + 1, 0), d);
}

lattice_point lattice_add(const lattice_point& a, const lattice_point& b) {
    std::vector<std::int64_t> n(a.num.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = a.num[i] + b.num[i];
    return make_lattice_point(std::move(n), a.d);
}

lattice_point lattice_sub(const lattice_point& a, const lattice_point& b) {
    std::vector<std::int64_t> n(a.num.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = a.num[i] - b.num[i];
    return make_lattice_point(std::move(n), a.d);
}

vec lattice_coords(const lattice_point& p, double beta) {
    vec x(p.num.size());
    const double f = beta / (p.d + 1);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = f * static_cast<double>(p.num[i]);
    return x;
}

vec embed_point(const vec& x) {
    const int d = static_cast<int>(x.size());
    vec y(d + 1, 0.0);
    for (int i = 1; i <= d; ++i) {
        const double f = x[i - 1] / std::sqrt(static_cast<double>(i) * (i + 1));
        for (int j = 0; j < i; ++j) y[j] += f;
        y[i] -= f * i;
    }
    return y;
}

lattice_point glue_vector(int t, int d) {
    if (t < 1 || t > d) throw std::invalid_argument("glue_vector: t must be in [1, d]");
    std::vector<std::int64_t> n(d + 1);
    for (int i = 0; i <= d; ++i) n[i] = (i < d + 1 - t) ? t : t - (d + 1);
    return make_lattice_point(std::move(n), d);
}

namespace {

// Closest point of A_d (integer vectors with zero sum) to z: round each
// coordinate, then fix the sum deficit by adjusting the coordinates with the
// largest rounding error in the needed direction.
std::vector<std::int64_t> decode_a_d(const vec& z) {
    const int m = static_cast<int>(z.size());
    std::vector<std::int64_t> r(m);
    std::int64_t delta = 0;
    for (int i = 0; i < m; ++i) {
        r[i] = static_cast<std::int64_t>(std::floor(z[i] + 0.5));
        delta += r[i];
    }
    if (delta != 0) {
        // err > 0 means the coordinate was rounded up.
        std::vector<int> order(m);
        for (int i = 0; i < m; ++i) order[i] = i;
        std::vector<double> err(m);
        for (int i = 0; i < m; ++i) err[i] = static_cast<double>(r[i]) - z[i];
        if (delta > 0) {
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return err[a] != err[b] ? err[a] > err[b] : a < b; });
            for (std::int64_t j = 0; j < delta; ++j) r[order[j % m]] -= 1;
        } else {
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return err[a] != err[b] ? err[a] < err[b] : a < b; });
            for (std::int64_t j = 0; j < -delta; ++j) r[order[j % m]] += 1;
        }
    }
    return r;
}

double num_dist2(const vec& Y, const std::vector<std::int64_t>& num) {
    double s = 0;
    for (std::size_t i = 0; i < Y.size(); ++i) {
        double t = Y[i] - static_cast<double>(num[i]);
        s += t * t;
    }
    return s;
}

void check_on_hyperplane(const vec& x) {
    double s = 0, mx = 1.0;
    for (double v : x) {
        s += v;
        mx = std::max(mx, std::abs(v));
    }
    if (std::abs(s) > 1e-9 * mx * static_cast<double>(x.size()))
        throw std::invalid_argument("closest_lattice_point: input not on the zero-sum hyperplane");
}

constexpr double kTieRel = 1e-12;

bool tie_close(double a, double b) { return std::abs(a - b) <= kTieRel * (1.0 + std::min(a, b)); }

}  // namespace

lattice_point closest_lattice_point(const scaled_lattice& L, const vec& x) {
    if (L.beta <= 0) throw std::invalid_argument("scaled_lattice: beta must be positive");
    const int d = L.d;
    if (x.size() != static_cast<std::size_t>(d + 1))
        throw std::invalid_argument("closest_lattice_point: expected a vector in R^{d+1}");
    check_on_hyperplane(x);

    // Work in numerator units: Y = x (d+1)/beta, candidates are integer vectors.
    vec Y(d + 1);
    for (int i = 0; i <= d; ++i) Y[i] = x[i] * (d + 1) / L.beta;

    std::vector<std::int64_t> best;
    double best_d2 = 0;
    vec z(d + 1);
    for (int t = 0; t <= d; ++t) {
        // coset point = g_t + (d+1) * A_d
        std::vector<std::int64_t> g(d + 1);
        for (int i = 0; i <= d; ++i) g[i] = (i < d + 1 - t) ? t : t - (d + 1);
        if (t == 0) std::fill(g.begin(), g.end(), 0);
        for (int i = 0; i <= d; ++i) z[i] = (Y[i] - static_cast<double>(g[i])) / (d + 1);
        std::vector<std::int64_t> w = decode_a_d(z);
        std::vector<std::int64_t> cand(d + 1);
        for (int i = 0; i <= d; ++i) cand[i] = g[i] + static_cast<std::int64_t>(d + 1) * w[i];
        double d2 = num_dist2(Y, cand);
        if (best.empty() || d2 < best_d2 - kTieRel * (1.0 + d2) ||
            (tie_close(d2, best_d2) &&
             std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))) {
            best = std::move(cand);
            best_d2 = d2;
        }
    }

    // An equidistant minimizer is always Delaunay-adjacent to the winner, so
    // exact ties on cell boundaries reduce to a neighbor scan.
    lattice_point p = make_lattice_point(best, d);
    for (const lattice_point& q : delaunay_neighbors(p)) {
        double d2 = num_dist2(Y, q.num);
        if (tie_close(d2, best_d2) && lex_less(q, p)) p = q;
    }
    return p;
}

lattice_point delaunay_neighbor(const lattice_point& p, std::uint64_t mask) {
    const int d = p.d;
    const std::uint64_t full = (std::uint64_t{1} << (d + 1)) - 1;
    if (mask == 0 || mask == full || (mask & ~full) != 0)
        throw std::invalid_argument("delaunay_neighbor: mask must be a nonempty proper subset");
    const std::int64_t k = std::popcount(mask);
    std::vector<std::int64_t> n(p.num);
    for (int i = 0; i <= d; ++i) n[i] += ((mask >> i) & 1) ? k - (d + 1) : k;
    return make_lattice_point(std::move(n), d);
}

std::vector<lattice_point> delaunay_neighbors(const lattice_point& p) {
    const int d = p.d;
    if (d >= 62) throw std::invalid_argument("delaunay_neighbors: d too large for mask enumeration");
    const std::uint64_t full = (std::uint64_t{1} << (d + 1)) - 1;
    std::vector<lattice_point> out;
    out.reserve(full - 1);
    for (std::uint64_t mask = 1; mask < full; ++mask) out.push_back(delaunay_neighbor(p, mask));
    return out;
}

bool lattice_adjacent(const lattice_point& a, const lattice_point& b) {
    const int d = a.d;
    if (a == b) return false;
    // b - a must equal m(d+1) + k*1 with m in {0,-1}^{d+1}, i.e. every entry
    // is k or k-(d+1) with exactly k entries of the negative kind.
    const std::int64_t v0 = b.num[0] - a.num[0];
    const std::int64_t k = ((v0 % (d + 1)) + (d + 1)) % (d + 1);
    if (k == 0) return false;
    std::int64_t negatives = 0;
    for (int i = 0; i <= d; ++i) {
        std::int64_t v = b.num[i] - a.num[i];
        if (v == k - (d + 1))
            ++negatives;
        else if (v != k)
            return false;
    }
    return negatives == k;
}

lattice_point closest_lattice_point_bruteforce(const scaled_lattice& L, const vec& x,
                                               std::int64_t box_radius) {
    const int d = L.d;
    if (box_radius < 0) box_radius = 3 * (d + 1);
    check_on_hyperplane(x);
    vec Y(d + 1);
    for (int i = 0; i <= d; ++i) Y[i] = x[i] * (d + 1) / L.beta;

    // Seed the bound with the fast decoder so pruning bites immediately.
    lattice_point seed = closest_lattice_point(L, x);
    std::vector<std::int64_t> best = seed.num;
    double best_d2 = num_dist2(Y, best);

    // Candidate values per coordinate: integers congruent to t within the box.
    std::vector<std::int64_t> cur(d + 1, 0);
    for (int t = 0; t <= d; ++t) {
        std::vector<std::vector<std::int64_t>> choices(d + 1);
        std::vector<std::vector<double>> costs(d + 1);
        for (int i = 0; i <= d; ++i) {
            std::int64_t lo = static_cast<std::int64_t>(std::ceil(Y[i] - static_cast<double>(box_radius)));
            std::int64_t hi = static_cast<std::int64_t>(std::floor(Y[i] + static_cast<double>(box_radius)));
            for (std::int64_t v = lo; v <= hi; ++v) {
                if (((v % (d + 1)) + (d + 1)) % (d + 1) == t) {
                    choices[i].push_back(v);
                    double e = Y[i] - static_cast<double>(v);
                    costs[i].push_back(e * e);
                }
            }
            if (choices[i].empty()) break;
        }
        bool feasible = true;
        for (int i = 0; i <= d; ++i)
            if (choices[i].empty()) feasible = false;
        if (!feasible) continue;
        // Suffix minima of per-coordinate cost for pruning.
        std::vector<double> suffix_min(d + 2, 0.0);
        std::vector<std::int64_t> suffix_lo(d + 2, 0), suffix_hi(d + 2, 0);
        for (int i = d; i >= 0; --i) {
            double mn = costs[i][0];
            for (double c : costs[i]) mn = std::min(mn, c);
            suffix_min[i] = suffix_min[i + 1] + mn;
            std::int64_t clo = *std::min_element(choices[i].begin(), choices[i].end());
            std::int64_t chi = *std::max_element(choices[i].begin(), choices[i].end());
            suffix_lo[i] = suffix_lo[i + 1] + clo;
            suffix_hi[i] = suffix_hi[i + 1] + chi;
        }
        auto rec = [&](auto&& self, int i, std::int64_t partial_sum, double partial_d2) -> void {
            if (partial_d2 + suffix_min[i] > best_d2 + kTieRel * (1.0 + best_d2)) return;
            if (i > d) {
                if (partial_sum != 0) return;
                // reconstruct handled by caller via cur[]
                std::vector<std::int64_t> cand(cur);
                double d2 = partial_d2;
                if (d2 < best_d2 - kTieRel * (1.0 + d2) ||
                    (tie_close(d2, best_d2) &&
                     std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))) {
                    best = std::move(cand);
                    best_d2 = d2;
                }
                return;
            }
            // zero-sum feasibility pruning
            if (partial_sum + suffix_lo[i] > 0 || partial_sum + suffix_hi[i] < 0) return;
            for (std::size_t j = 0; j < choices[i].size(); ++j) {
                cur[i] = choices[i][j];
                self(self, i + 1, partial_sum + choices[i][j], partial_d2 + costs[i][j]);
            }
        };
        rec(rec, 0, 0, 0.0);
    }
    return make_lattice_point(best, d);
}

}  // namespace permrips
