#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "permrips/embeddings.hpp"
#include "permrips/exact.hpp"
#include "permrips/persistence.hpp"

using namespace permrips;

namespace {

point_cloud random_cloud(rng_stream& rng, int n, int d, double spread = 1.0) {
    std::vector<vec> pts;
    for (int i = 0; i < n; ++i) {
        vec p(d);
        for (double& v : p) v = spread * rng.next_unit();
        pts.push_back(std::move(p));
    }
    return make_point_cloud(std::move(pts));
}

}  // namespace

TEST_CASE("embed: target dimension formulas") {
    CHECK(jl_target_dim(100, 4.0, 0.5) == 74);
    CHECK(matousek_target_dim(256) == static_cast<int>(
        std::ceil(4.0 * std::log(256.0) / std::log(std::log(256.0)))));
    CHECK_THROWS_AS(jl_target_dim(1, 4.0, 0.5), std::invalid_argument);
}

TEST_CASE("embed: full-dimension projection is an isometry") {
    rng_stream rng(3);
    point_cloud pc = random_cloud(rng, 15, 4, 2.0);
    point_cloud proj = random_projection(pc, {4, 99});
    auto [x1, x2] = measure_distortion(pc, proj);
    CHECK(x1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(x2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(random_projection(pc, {5, 1}), std::invalid_argument);
}

TEST_CASE("embed: projections are deterministic per seed and linear") {
    rng_stream rng(5);
    point_cloud pc = random_cloud(rng, 10, 6, 3.0);
    point_cloud a = random_projection(pc, {3, 42});
    point_cloud b = random_projection(pc, {3, 42});
    CHECK(a.points == b.points);  // bit-for-bit
    point_cloud c = random_projection(pc, {3, 43});
    CHECK(a.points != c.points);

    // linearity: f(p) - f(q) = f(p - q)
    point_cloud diffs = make_point_cloud({sub(pc.points[0], pc.points[1])});
    point_cloud fd = random_projection(diffs, {3, 42});
    vec lhs = sub(a.points[0], a.points[1]);
    CHECK(dist(lhs, fd.points[0]) <= 1e-12);
}

TEST_CASE("embed: unscaled projections contract") {
    rng_stream rng(7);
    point_cloud pc = random_cloud(rng, 12, 8, 2.0);
    const int m = 3;
    point_cloud proj = random_projection(pc, {m, 11});
    auto [x1, x2] = measure_distortion(pc, proj);
    const double unscale = std::sqrt(static_cast<double>(m) / 8.0);
    CHECK(x2 * unscale <= 1.0 + 1e-9);
    CHECK(x1 <= x2);
}

TEST_CASE("embed: JL regime keeps most pairs within the band") {
    // lambda tuned to 4 for this check (the constant is a free parameter);
    // aggregate over 20 seeds on n = 100 points in R^128
    rng_stream rng(13);
    point_cloud pc = random_cloud(rng, 100, 128, 1.0);
    const double eps = 0.5;
    const int m = jl_target_dim(100, 4.0, eps);
    REQUIRE(m <= 128);
    long outside = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        point_cloud proj = random_projection(pc, {m, seed});
        for (int i = 0; i < pc.size(); ++i)
            for (int j = i + 1; j < pc.size(); ++j) {
                const double r = proj.distance(i, j) / pc.distance(i, j);
                ++total;
                if (r < 1 - eps || r > 1 + eps) ++outside;
            }
    }
    CHECK(static_cast<double>(outside) / total <= 0.10);
}

TEST_CASE("embed: projection in the n^(2/k) regime stays finite") {
    rng_stream rng(17);
    point_cloud pc = random_cloud(rng, 256, 16, 1.0);
    const int m = matousek_target_dim(256);
    point_cloud proj = random_projection(pc, {std::min(m, 16), 23});
    auto [x1, x2] = measure_distortion(pc, proj);
    CHECK(x1 > 0);
    CHECK(x2 / x1 >= 1.0);
    // reported against the trend line (no asserted constant)
    const double trend = std::pow(256.0, 2.0 / m) * std::sqrt(std::log(256.0) / m);
    MESSAGE("measured distortion ", x2 / x1, " trend ", trend);
}

TEST_CASE("embed: metric embedding basics") {
    point_cloud two = make_metric_cloud({{0, 3}, {3, 0}});
    point_cloud e2 = bourgain_embed(two, {0, 1.0});
    point_cloud c2 = center_distortion(two, e2);
    auto [x1, x2] = measure_distortion(two, c2);
    CHECK(x2 / x1 == doctest::Approx(1.0));

    // uniform metric embeds with small distortion relative to log n
    const int n = 16;
    std::vector<std::vector<double>> u(n, std::vector<double>(n, 1.0));
    for (int i = 0; i < n; ++i) u[i][i] = 0.0;
    point_cloud uni = make_metric_cloud(std::move(u));
    point_cloud eu = bourgain_embed(uni, {5, 1.0});
    auto [u1, u2] = measure_distortion(uni, eu);
    CHECK(u2 / u1 <= 3.0 * std::log2(static_cast<double>(n)));
    CHECK(u2 <= 1.0 + 1e-9);  // contractive before centering

    std::vector<std::vector<double>> degenerate{{0, 0}, {0, 0}};
    point_cloud dg;
    dg.dists = degenerate;
    CHECK_THROWS_AS(bourgain_embed(dg, {1}), std::invalid_argument);
}

TEST_CASE("embed: path metric round trip through the pipeline") {
    const int n = 32;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = std::abs(i - j);
    point_cloud path = make_metric_cloud(std::move(d));
    point_cloud emb = center_distortion(path, bourgain_embed(path, {77, 1.0}));
    auto [x1, x2] = measure_distortion(path, emb);
    const double ratio = x2 / x1;
    CHECK(ratio <= 2.0 * std::log2(static_cast<double>(n)));

    // downstream dim-0 Rips barcodes stay within log(ratio) after flooring
    barcode borig = restrict_dim(rips_barcode(path, 0), 0);
    barcode bembed = restrict_dim(rips_barcode(emb, 0), 0);
    double floor_at = kInf;
    for (const bar& b : borig.bars)
        if (b.death != kInf) floor_at = std::min(floor_at, b.death);
    for (const bar& b : bembed.bars)
        if (b.death != kInf) floor_at = std::min(floor_at, b.death);
    floor_at *= 0.5;
    const double dist = bottleneck_distance(clamp_below(borig, floor_at),
                                            clamp_below(bembed, floor_at), true);
    CHECK(dist <= std::log(ratio) + 1e-9);
}

TEST_CASE("embed: distortion measurement") {
    point_cloud a = make_point_cloud({{0, 0}, {1, 0}, {0, 2}});
    auto [i1, i2] = measure_distortion(a, a);
    CHECK(i1 == doctest::Approx(1.0));
    CHECK(i2 == doctest::Approx(1.0));
    point_cloud b = make_point_cloud({{0, 0}, {2, 0}, {0, 4}});
    auto [s1, s2] = measure_distortion(a, b);
    CHECK(s1 == doctest::Approx(2.0));
    CHECK(s2 == doctest::Approx(2.0));
    point_cloud dup = make_point_cloud({{0, 0}, {0, 0}});
    CHECK_THROWS_AS(measure_distortion(dup, dup), std::invalid_argument);
}

TEST_CASE("embed: subset embedding is deterministic per seed") {
    const int n = 10;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = std::abs(i - j);
    point_cloud metric = make_metric_cloud(std::move(d));
    point_cloud a = bourgain_embed(metric, {5, 1.0});
    point_cloud b = bourgain_embed(metric, {5, 1.0});
    CHECK(a.points == b.points);
    point_cloud c = bourgain_embed(metric, {6, 1.0});
    CHECK(a.points != c.points);
}
