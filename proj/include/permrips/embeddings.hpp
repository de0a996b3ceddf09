// Dimension-reduction front ends: random orthogonal projection and the
// random-subset metric embedding for metric-only input.
#pragma once

#include <cstdint>
#include <utility>

#include "permrips/complex.hpp"

namespace permrips {

struct projection_spec {
    int target_dim = 0;
    std::uint64_t seed = 0;
};

// ceil(lambda log n / eps^2)
int jl_target_dim(int n, double lambda, double eps);
// ceil(4 log n / log log n)
int matousek_target_dim(int n);

// Projection onto a uniformly random m-subspace (orthonormalized Gaussian
// frame), scaled by sqrt(d/m). Deterministic given the seed. Requires
// coordinates and m <= d.
point_cloud random_projection(const point_cloud& pc, const projection_spec& spec);

struct bourgain_spec {
    std::uint64_t seed = 0;
    double c_b = 1.0;  // repetitions multiplier; target_dim ~ c_b ceil(log2 n)^2
};

// Coordinates are min-distances to random subsets, ceil(log2 n) size scales
// times ~c_b ceil(log2 n) repetitions, normalized to be contractive.
point_cloud bourgain_embed(const point_cloud& metric, const bourgain_spec& spec);

// (xi1, xi2) = min and max of after/before pairwise distance ratios.
// Throws on coincident source points.
std::pair<double, double> measure_distortion(const point_cloud& before, const point_cloud& after);

// Rescales `embedded` by 1/sqrt(xi1 xi2) so the distortion interval brackets 1.
point_cloud center_distortion(const point_cloud& before, const point_cloud& embedded);

// Deterministic splitmix64 stream with a Box-Muller gaussian.
struct rng_stream {
    std::uint64_t state;
    explicit rng_stream(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64();
    double next_unit();  // [0, 1)
    double next_gaussian();

  private:
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace permrips
