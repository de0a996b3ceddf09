#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "permrips/embeddings.hpp"
#include "permrips/miniball.hpp"
#include "permrips/permutahedron.hpp"

using namespace permrips;

TEST_CASE("perm: base vertex and circumradius") {
    vec v2 = vertex_coordinates({0, 1, 2}, 2);
    CHECK(v2[0] == doctest::Approx(2.0 / 6).epsilon(1e-15));
    CHECK(v2[1] == doctest::Approx(0.0));
    CHECK(v2[2] == doctest::Approx(-2.0 / 6).epsilon(1e-15));
    vec v3 = vertex_coordinates({0, 1, 2, 3}, 3);
    CHECK(v3[0] == doctest::Approx(3.0 / 8));
    CHECK(v3[3] == doctest::Approx(-3.0 / 8));

    CHECK(circumradius(2) == doctest::Approx(std::sqrt(8.0 / 36)).epsilon(1e-15));
    for (int d = 1; d <= 6; ++d) {
        std::vector<int> perm(d + 1);
        for (int i = 0; i <= d; ++i) perm[i] = i;
        for (int t = 0; t < 6; ++t) {
            CHECK(norm(vertex_coordinates(perm, d)) == doctest::Approx(circumradius(d)).epsilon(1e-12));
            std::next_permutation(perm.begin(), perm.end());
        }
    }
    CHECK_THROWS_AS(vertex_coordinates({0, 0, 2}, 2), std::invalid_argument);
}

TEST_CASE("perm: face counts over dimensions") {
    // d = 3: truncated octahedron f-vector
    CHECK(faces_of_dim(3, 2).size() == 14);
    CHECK(faces_of_dim(3, 1).size() == 36);
    CHECK(faces_of_dim(3, 0).size() == 24);
    for (int d = 2; d <= 4; ++d) {
        CHECK(faces_of_dim(d, d - 1).size() == (std::size_t{1} << (d + 1)) - 2);
        CHECK(faces_of_dim(d, 0).size() == ordered_partition_count(d, d + 1));
        for (int dim = 0; dim <= d - 1; ++dim) {
            const int blocks = d + 1 - dim;
            auto faces = faces_of_dim(d, dim);
            CHECK(faces.size() == ordered_partition_count(d, blocks));
            // interpolation bound with k = d - dim
            const double k = d - dim;
            CHECK(static_cast<double>(faces.size()) <= std::pow(k + 1, 2.0 * (d + 1)) + 1e-9);
            // enumeration is duplicate-free
            std::set<std::vector<std::uint64_t>> seen;
            for (const auto& f : faces) seen.insert(f.partition.blocks);
            CHECK(seen.size() == faces.size());
        }
    }
    CHECK_THROWS_AS(faces_of_dim(3, 3), std::invalid_argument);
}

TEST_CASE("perm: Euler relation of the boundary complex") {
    for (int d = 2; d <= 4; ++d) {
        long euler = 0;
        for (int dim = 0; dim <= d - 1; ++dim)
            euler += (dim % 2 ? -1 : 1) * static_cast<long>(faces_of_dim(d, dim).size());
        CHECK(euler == 1 - (d % 2 ? -1 : 1));
    }
}

TEST_CASE("perm: facet adjacency is first-block nesting") {
    auto facet = [](std::vector<std::uint64_t> blocks, int d) {
        return make_face(make_partition(std::move(blocks), d));
    };
    // d=3, elements 1..4 are bits 0..3
    auto f1 = facet({0b0001, 0b1110}, 3);        // ({1},{2,3,4})
    auto f2 = facet({0b0101, 0b1010}, 3);        // ({1,3},{2,4})
    auto f3 = facet({0b1010, 0b0101}, 3);        // ({2,4},{1,3})
    CHECK(facets_adjacent(f1, f2));
    CHECK_FALSE(facets_adjacent(f2, f3));
    CHECK(facets_adjacent(f2, f2));
    CHECK_THROWS_AS(facets_adjacent(f1, make_face(make_partition({0b0001, 0b0010, 0b1100}, 3))),
                    std::invalid_argument);
}

TEST_CASE("perm: incidence via ordered refinement, with the worked co-facets") {
    // ({1,3},{4},{2}) has exactly the two co-facets ({1,3},{2,4}) and ({1,3,4},{2})
    auto sub = make_face(make_partition({0b0101, 0b1000, 0b0010}, 3));
    auto good1 = make_face(make_partition({0b0101, 0b1010}, 3));
    auto good2 = make_face(make_partition({0b1101, 0b0010}, 3));
    auto bad = make_face(make_partition({0b1010, 0b0101}, 3));
    CHECK(face_incidence(sub, good1));
    CHECK(face_incidence(sub, good2));
    CHECK_FALSE(face_incidence(sub, bad));
    int cofacets = 0;
    for (const auto& f : faces_of_dim(3, 2))
        if (face_incidence(sub, f)) ++cofacets;
    CHECK(cofacets == 2);
    // the whole polytope is a coface of everything
    CHECK(face_incidence(sub, make_face(make_partition({0b1111}, 3))));
    CHECK_THROWS_AS(face_incidence(good1, sub), std::invalid_argument);
}

TEST_CASE("perm: incidence agrees with the vertex-set oracle") {
    rng_stream rng(3);
    for (int d = 2; d <= 4; ++d) {
        for (int dim_sub = 0; dim_sub <= d - 2; ++dim_sub) {
            auto subs = faces_of_dim(d, dim_sub);
            auto sups = faces_of_dim(d, dim_sub + 1);
            for (int trial = 0; trial < 40; ++trial) {
                const auto& a = subs[rng.next_u64() % subs.size()];
                const auto& b = sups[rng.next_u64() % sups.size()];
                // geometric oracle: vertex set containment
                auto va = face_vertices(a);
                auto vb = face_vertices(b);
                int contained = 0;
                for (const auto& x : va)
                    for (const auto& y : vb)
                        if (dist(x, y) < 1e-12) ++contained;
                bool oracle = contained == static_cast<int>(va.size());
                CHECK(face_incidence(a, b) == oracle);
            }
        }
    }
}

TEST_CASE("perm: barycenters are exact block averages") {
    auto f = make_face(make_partition({0b001, 0b110}, 2));  // ({1},{2,3})
    vec b = barycenter(f);
    CHECK(b[0] == doctest::Approx(-2.0 / 6).epsilon(1e-15));
    CHECK(b[1] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(b[2] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(norm(b) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));

    // a vertex face is its own barycenter; the first singleton block holds
    // the smallest coordinate, so ({1},{2},{3}) is the reversed base vertex
    auto v = make_face(make_partition({0b001, 0b010, 0b100}, 2));
    CHECK(dist(barycenter(v), vertex_coordinates({2, 1, 0}, 2)) < 1e-15);

    // top block of size l has common coordinate ((d+1)-l)/(2(d+1))
    for (int d = 2; d <= 6; ++d) {
        for (int l = 1; l <= d; ++l) {
            std::uint64_t top = ((std::uint64_t{1} << l) - 1) << (d + 1 - l);
            std::uint64_t rest = ((std::uint64_t{1} << (d + 1)) - 1) & ~top;
            auto face = make_face(make_partition({rest, top}, d));
            vec bc = barycenter(face);
            for (int i = d + 1 - l; i <= d; ++i)
                CHECK(bc[i] == doctest::Approx((d + 1.0 - l) / (2.0 * (d + 1))).epsilon(1e-15));
        }
    }
}

TEST_CASE("perm: barycenter is the closest face point and the dual circumradius") {
    rng_stream rng(9);
    for (int d = 2; d <= 4; ++d) {
        for (int dim = 0; dim <= d - 1; ++dim) {
            auto faces = faces_of_dim(d, dim);
            for (int trial = 0; trial < 12; ++trial) {
                const auto& f = faces[rng.next_u64() % faces.size()];
                vec bc = barycenter(f);
                // closest point of the vertex hull to the origin
                auto verts = face_vertices(f);
                double hull_dist = convex_hulls_distance(verts, {vec(d + 1, 0.0)});
                CHECK(hull_dist == doctest::Approx(norm(bc)).epsilon(1e-9));
                // circumradius of the dual Delaunay simplex via miniball
                std::vector<vec> dual;
                for (const auto& p : partition_to_simplex(f.partition))
                    dual.push_back(lattice_coords(p, 1.0));
                CHECK(miniball_radius(dual) == doctest::Approx(norm(bc)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("perm: good partition enumeration and the uniform count") {
    CHECK(enumerate_good_partitions(3, 2, 2).size() == 6);
    CHECK(uniform_good_count(3, 2) == 6);
    CHECK(enumerate_good_partitions(5, 2, 3).size() == 90);
    CHECK(uniform_good_count(5, 2) == 90);
    CHECK(uniform_good_count(7, 2) == 2520);
    // ell = 1 gives all ordered k-partitions
    CHECK(enumerate_good_partitions(3, 1, 2).size() == ordered_partition_count(3, 2));
    CHECK_THROWS_AS(enumerate_good_partitions(3, 3, 2), std::invalid_argument);
}

TEST_CASE("perm: pairwise intersecting facets share a common face") {
    rng_stream rng(17);
    for (int d = 2; d <= 4; ++d) {
        auto facets = faces_of_dim(d, d - 1);
        for (int trial = 0; trial < 200; ++trial) {
            const int sz = 2 + static_cast<int>(rng.next_u64() % std::min(d, 3));
            std::vector<perm_face> pick;
            std::set<std::size_t> used;
            while (pick.size() < static_cast<std::size_t>(sz)) {
                std::size_t i = rng.next_u64() % facets.size();
                if (used.insert(i).second) pick.push_back(facets[i]);
            }
            bool pairwise = true;
            for (std::size_t i = 0; i < pick.size() && pairwise; ++i)
                for (std::size_t j = i + 1; j < pick.size() && pairwise; ++j)
                    pairwise = facets_adjacent(pick[i], pick[j]);
            if (!pairwise) continue;
            // nested chain: sort first blocks by popcount, take successive differences
            std::vector<std::uint64_t> firsts;
            for (const auto& f : pick) firsts.push_back(f.partition.blocks[0]);
            std::sort(firsts.begin(), firsts.end(), [](std::uint64_t a, std::uint64_t b) {
                return std::popcount(a) < std::popcount(b);
            });
            std::vector<std::uint64_t> blocks;
            std::uint64_t prev = 0;
            bool chain = true;
            for (std::uint64_t m : firsts) {
                if ((prev & m) != prev || m == prev) chain = false;
                blocks.push_back(m & ~prev);
                prev = m;
            }
            REQUIRE(chain);
            blocks.push_back(((std::uint64_t{1} << (d + 1)) - 1) & ~prev);
            auto common = make_face(make_partition(blocks, d));
            for (const auto& f : pick) CHECK(face_incidence(common, f));
        }
    }
}

TEST_CASE("perm: vertex-hull diameter is at most sqrt(d)") {
    for (int d = 2; d <= 5; ++d) {
        auto verts = face_vertices(make_face(make_partition(
            {(std::uint64_t{1} << (d + 1)) - 1}, d)));
        CHECK(verts.size() == [&] {
            std::size_t f = 1;
            for (int i = 2; i <= d + 1; ++i) f *= i;
            return f;
        }());
        double diam = 0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                diam = std::max(diam, dist(verts[i], verts[j]));
        CHECK(diam <= std::sqrt(static_cast<double>(d)) + 1e-12);
    }
}

TEST_CASE("perm: non-adjacent cells are separated by sqrt(2)/(d+1)") {
    for (int d = 2; d <= 3; ++d) {
        auto hull = face_vertices(make_face(make_partition({(std::uint64_t{1} << (d + 1)) - 1}, d)));
        lattice_point origin = lattice_origin(d);
        auto neighbors = delaunay_neighbors(origin);
        // second-ring candidates: sums of two neighbor offsets
        std::set<std::vector<std::int64_t>> ring;
        for (const auto& u : neighbors)
            for (const auto& v : neighbors) {
                lattice_point s = lattice_add(u, v);
                bool trivial = s == origin || std::count(neighbors.begin(), neighbors.end(), s) > 0;
                if (!trivial) ring.insert(s.num);
            }
        REQUIRE(!ring.empty());
        const double bound = std::sqrt(2.0) / (d + 1);
        double min_dist = 1e9;
        for (const auto& num : ring) {
            lattice_point q = make_lattice_point(num, d);
            vec offset = lattice_coords(q, 1.0);
            std::vector<vec> other;
            for (const auto& v : hull) other.push_back(add(v, offset));
            min_dist = std::min(min_dist, convex_hulls_distance(hull, other));
        }
        CHECK(min_dist >= bound - 1e-9);
        // the bound is tight: some pair achieves it (within numerical slack)
        CHECK(min_dist <= bound + 1e-6);
    }
}

TEST_CASE("perm: opposite-facet hyperplane certificate") {
    for (int d = 2; d <= 4; ++d) {
        std::vector<int> perm(d + 1);
        for (int i = 0; i <= d; ++i) perm[i] = i;
        do {
            CHECK(opposite_facet_certificate(perm, d));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}
