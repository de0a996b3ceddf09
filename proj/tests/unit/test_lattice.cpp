#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "permrips/embeddings.hpp"
#include "permrips/lattice.hpp"
#include "permrips/permutahedron.hpp"

using namespace permrips;

namespace {

vec random_h_point(rng_stream& rng, int d, double spread) {
    vec x(d);
    for (double& v : x) v = spread * (2 * rng.next_unit() - 1);
    return embed_point(x);
}

}  // namespace

TEST_CASE("lattice: glue vectors match the coset representative formula") {
    CHECK(glue_vector(1, 2).num == std::vector<std::int64_t>{1, 1, -2});
    CHECK(glue_vector(2, 2).num == std::vector<std::int64_t>{2, -1, -1});
    CHECK(glue_vector(2, 3).num == std::vector<std::int64_t>{2, 2, -2, -2});
    for (int d = 1; d <= 8; ++d) {
        for (int t = 1; t <= d; ++t) {
            lattice_point g = glue_vector(t, d);
            CHECK(g.remainder == t);
            std::int64_t sum = 0;
            for (auto v : g.num) sum += v;
            CHECK(sum == 0);
        }
    }
    CHECK_THROWS_AS(glue_vector(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(glue_vector(4, 3), std::invalid_argument);
}

TEST_CASE("lattice: embedding into the zero-sum hyperplane is an isometry") {
    CHECK(embed_point({0.0}) == vec{0.0, 0.0});
    vec e = embed_point({1.5});
    CHECK(e[0] == doctest::Approx(1.5 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(e[1] == doctest::Approx(-1.5 / std::sqrt(2.0)).epsilon(1e-14));

    rng_stream rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 8);
        vec x(d), y(d);
        for (double& v : x) v = 10 * (2 * rng.next_unit() - 1);
        for (double& v : y) v = 10 * (2 * rng.next_unit() - 1);
        vec ex = embed_point(x), ey = embed_point(y);
        CHECK(std::abs(norm(ex) - norm(x)) <= 1e-12 * (1 + norm(x)));
        CHECK(std::abs(dist(ex, ey) - dist(x, y)) <= 1e-12 * (1 + dist(x, y)));
        double sum = 0;
        for (double v : ex) sum += v;
        CHECK(std::abs(sum) <= 1e-12 * (1 + norm(x)));
    }
}

TEST_CASE("lattice: neighbor counts and per-shell norms") {
    for (int d = 2; d <= 5; ++d) {
        auto nb = delaunay_neighbors(lattice_origin(d));
        CHECK(nb.size() == (std::size_t{1} << (d + 1)) - 2);
        std::set<std::vector<std::int64_t>> distinct;
        for (const auto& q : nb) {
            distinct.insert(q.num);
            // norm^2 = k(d+1-k)/(d+1) with k the congruence class
            const double k = q.remainder;
            const double expected = k * (d + 1 - k) / (d + 1);
            CHECK(norm2(lattice_coords(q, 1.0)) == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(distinct.size() == nb.size());
    }
}

TEST_CASE("lattice: neighbors are the closest nonzero shells (brute force, d=3)") {
    // minimal nonzero lattice norms realized by the neighbor set
    auto nb = delaunay_neighbors(lattice_origin(3));
    double min_neighbor = 1e9;
    for (const auto& q : nb) min_neighbor = std::min(min_neighbor, norm2(lattice_coords(q, 1.0)));
    // enumerate small integer combinations of glue vectors plus A_3 shifts
    double min_all = 1e9;
    for (int t = 0; t <= 3; ++t) {
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b)
                for (int c = -2; c <= 2; ++c) {
                    std::vector<std::int64_t> num(4);
                    std::int64_t base[4] = {0, 0, 0, 0};
                    if (t > 0) {
                        auto g = glue_vector(t, 3);
                        for (int i = 0; i < 4; ++i) base[i] = g.num[i];
                    }
                    num[0] = base[0] + 4 * a;
                    num[1] = base[1] + 4 * b;
                    num[2] = base[2] + 4 * c;
                    num[3] = base[3] - 4 * (a + b + c);
                    bool zero = num[0] == 0 && num[1] == 0 && num[2] == 0 && num[3] == 0;
                    if (zero) continue;
                    double n2 = 0;
                    for (auto v : num) n2 += static_cast<double>(v) * v / 16.0;
                    min_all = std::min(min_all, n2);
                }
    }
    CHECK(min_all == doctest::Approx(min_neighbor).epsilon(1e-12));
}

TEST_CASE("lattice: neighborhood is symmetric") {
    rng_stream rng(11);
    for (int d = 2; d <= 4; ++d) {
        scaled_lattice L{d, 1.0};
        lattice_point p = closest_lattice_point(L, random_h_point(rng, d, 5));
        for (const auto& q : delaunay_neighbors(p)) {
            CHECK(lattice_adjacent(p, q));
            CHECK(lattice_adjacent(q, p));
            auto back = delaunay_neighbors(q);
            CHECK(std::count(back.begin(), back.end(), p) == 1);
        }
    }
}

TEST_CASE("lattice: snapping is exact on lattice points and at the origin") {
    for (int d = 2; d <= 5; ++d) {
        scaled_lattice L{d, 0.75};
        CHECK(closest_lattice_point(L, vec(d + 1, 0.0)) == lattice_origin(d));
        rng_stream rng(d);
        for (int trial = 0; trial < 50; ++trial) {
            // random lattice point: sum of a few neighbor offsets
            lattice_point p = lattice_origin(d);
            for (int s = 0; s < 3; ++s) {
                auto nb = delaunay_neighbors(p);
                p = nb[rng.next_u64() % nb.size()];
            }
            CHECK(closest_lattice_point(L, lattice_coords(p, L.beta)) == p);
        }
    }
}

TEST_CASE("lattice: decoder agrees with the exhaustive oracle") {
    rng_stream rng(42);
    for (int d = 2; d <= 5; ++d) {
        for (double beta : {0.5, 1.0, 3.0}) {
            scaled_lattice L{d, beta};
            for (int trial = 0; trial < 120; ++trial) {
                vec x = random_h_point(rng, d, 4 * beta);
                lattice_point fast = closest_lattice_point(L, x);
                lattice_point slow = closest_lattice_point_bruteforce(L, x);
                CHECK(fast == slow);
            }
        }
    }
}

TEST_CASE("lattice: decoding is equivariant under lattice translation") {
    rng_stream rng(5);
    for (int d = 2; d <= 4; ++d) {
        scaled_lattice L{d, 1.25};
        for (int trial = 0; trial < 60; ++trial) {
            vec x = random_h_point(rng, d, 2);
            lattice_point v = lattice_origin(d);
            for (int s = 0; s < 2; ++s) {
                auto nb = delaunay_neighbors(v);
                v = nb[rng.next_u64() % nb.size()];
            }
            vec shifted = add(x, lattice_coords(v, L.beta));
            lattice_point a = closest_lattice_point(L, shifted);
            lattice_point b = lattice_add(closest_lattice_point(L, x), v);
            CHECK(a == b);
        }
    }
}

TEST_CASE("lattice: off-hyperplane input is rejected") {
    scaled_lattice L{2, 1.0};
    CHECK_THROWS_AS(closest_lattice_point(L, vec{1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("lattice: invalid numerators are rejected") {
    CHECK_THROWS_AS(make_lattice_point({1, 0, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice_point({3, -1, -2}, 2), std::invalid_argument);
    CHECK_NOTHROW(make_lattice_point({1, 1, -2}, 2));
}

TEST_CASE("lattice: exact cell-boundary points decode like the oracle") {
    // wall midpoints and triple points are equidistant from several cells;
    // both sides must agree under the shared lex tie rule
    for (int d = 2; d <= 4; ++d) {
        scaled_lattice L{d, 1.0};
        auto neighbors = delaunay_neighbors(lattice_origin(d));
        for (std::size_t i = 0; i < neighbors.size(); i += 3) {
            vec wall = scale(lattice_coords(neighbors[i], 1.0), 0.5);
            CHECK(closest_lattice_point(L, wall) ==
                  closest_lattice_point_bruteforce(L, wall));
        }
        // barycenter of a full-dimensional Delaunay simplex: d+1 cells tie
        vec v = vertex_coordinates([&] {
            std::vector<int> p(d + 1);
            for (int i2 = 0; i2 <= d; ++i2) p[i2] = i2;
            return p;
        }(), d);
        CHECK(closest_lattice_point(L, v) == closest_lattice_point_bruteforce(L, v));
    }
}
