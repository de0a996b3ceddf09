// The approximation complex at one scale: snap points to lattice cells,
// connect adjacent full cells, expand the flag k-skeleton. Includes the
// combinatorial nerve oracle used to certify the flag property.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "permrips/complex.hpp"
#include "permrips/lattice.hpp"

namespace permrips {

struct size_cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct approx_complex {
    skeleton K;                             // unvalued skeleton, dims 0..effective_k
    std::vector<lattice_point> vertices;    // payload per vertex row (lex-sorted)
    std::vector<std::int32_t> point_vertex; // input point -> vertex row
    double beta = 1.0;
    int d = 0;
    int requested_k = 0;
    int effective_k = 0;                    // capped at d
    std::uint64_t size_bound = 0;           // n (k+1)^{2(d+1)}, saturated
    std::size_t size = 0;                   // total simplex count
    bool within_bound = true;
};

// Closest lattice cell per input point (requires coordinates).
std::vector<lattice_point> snap(const point_cloud& pc, const scaled_lattice& L);

// Vertices = snapped cells, edges = adjacent pairs of full cells, higher
// simplices = flag completion up to dimension min(k, d). A nonzero size_cap
// aborts with size_cap_exceeded before expanding past the cap.
approx_complex build_approx_complex(const point_cloud& pc, double beta, int k,
                                    std::size_t size_cap = 0);

// Ground-truth nerve: a j-simplex of full cells is included iff the cells
// share a common face, decided by the ordered-partition correspondence
// (prefix sets of the relative neighbor masks must form a strict chain).
// Verification-scale only (d <= 6).
approx_complex nerve_oracle(const point_cloud& pc, double beta, int k);

// n (k+1)^{2(d+1)}, saturating at uint64 max.
std::uint64_t skeleton_size_bound(int n, int k, int d);

}  // namespace permrips
