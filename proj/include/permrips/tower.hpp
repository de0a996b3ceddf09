// The multi-scale approximation tower: scale grid, the phi/psi/theta vertex
// maps with simplicial-map assertions, and the contiguity verification.
#pragma once

#include <cstdint>
#include <vector>

#include "permrips/approx.hpp"
#include "permrips/complex.hpp"

namespace permrips {

struct scale_grid {
    double beta0 = 1.0;
    int count = 1;
    int d = 0;
};

// beta0 from the closest-pair distance, count from the spread; consecutive
// scales grow by (2(d+1))^2.
scale_grid default_scale_grid(const point_cloud& pc);

struct tower {
    scale_grid grid;
    int k = 0;
    std::vector<double> scales;
    std::vector<approx_complex> complexes;
    std::vector<std::vector<std::int32_t>> theta;  // scale i -> i+1 vertex maps
    std::vector<std::vector<std::int32_t>> psi;    // per scale: vertex -> input point
};

// Input point -> its cell's vertex (the snap map).
const std::vector<std::int32_t>& map_phi(const approx_complex& ac);

// Vertex -> nearest input point among the points snapping to it (ties:
// smallest index), so that snapping the image returns the vertex.
std::vector<std::int32_t> map_psi(const approx_complex& ac, const point_cloud& pc);

// Stored composite phi_{i+1} after psi_i.
const std::vector<std::int32_t>& map_theta(const tower& t, int i);

// Throws std::runtime_error if some simplex image is not a simplex of dst.
void assert_simplicial(const skeleton& src, const std::vector<std::int32_t>& vertex_map,
                       const skeleton& dst);

tower build_tower(const point_cloud& pc, const scale_grid& grid, int k,
                  std::size_t size_cap = 0);

struct contiguity_report {
    double beta = 0;
    long pairs_checked = 0;
    long violations = 0;
    double max_pair_distance = 0;
    double bound = 0;  // 16 (d+1)^3 beta
};

// For every Rips pair at scale 2(d+1)beta, checks that the inclusion image
// and the roundtrip image stay within 16(d+1)^3 beta of each other (the
// pairwise form of the contiguity of g and psi after phi).
contiguity_report check_contiguity(const point_cloud& pc, double beta);

// Rips scale anchors of a complex at lattice scale beta: the phi source
// scale beta/(sqrt2 (d+1)) and the psi target scale 2 sqrt(d) beta.
double phi_source_scale(double beta, int d);
double psi_target_scale(double beta, int d);

}  // namespace permrips
