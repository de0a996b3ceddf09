// Exact arithmetic for the A_d / A*_d lattices: integer-numerator point
// representation, closest-point decoding per coset, and Delaunay neighbor
// enumeration.
#pragma once

#include <cstdint>
#include <vector>

#include "permrips/geom.hpp"

namespace permrips {

// A point of the A*_d lattice, stored as the exact integer numerator of the
// point scaled by (d+1). The point lies on the hyperplane H = {sum = 0} of
// R^{d+1}; every numerator coordinate is congruent to `remainder` mod (d+1).
struct lattice_point {
    std::vector<std::int64_t> num;  // length d+1, sums to zero
    int d = 0;
    int remainder = 0;

    bool operator==(const lattice_point& o) const { return d == o.d && num == o.num; }
};

bool lex_less(const lattice_point& a, const lattice_point& b);

// Validates the invariants (sum zero, uniform congruence class) and fills in
// the remainder. Throws std::invalid_argument on violation.
lattice_point make_lattice_point(std::vector<std::int64_t> numerator, int d);

lattice_point lattice_origin(int d);
lattice_point lattice_add(const lattice_point& a, const lattice_point& b);
lattice_point lattice_sub(const lattice_point& a, const lattice_point& b);

// Real coordinates in H: beta * num / (d+1).
vec lattice_coords(const lattice_point& p, double beta);

// The A*_d lattice with every vector scaled by beta > 0.
struct scaled_lattice {
    int d = 0;
    double beta = 1.0;
};

// Isometric embedding R^d -> H subset R^{d+1}, using the fixed orthonormal
// basis u_i = (e_1 + ... + e_i - i e_{i+1}) / sqrt(i(i+1)).
vec embed_point(const vec& x);

// Coset representative g_t of A*_d / A_d: numerator has d+1-t entries equal
// to t followed by t entries equal to t-(d+1). Requires 1 <= t <= d.
lattice_point glue_vector(int t, int d);

// Closest lattice point of L to x (x in H, |sum(x)| <= 1e-9 scaled).
// Decodes each of the d+1 cosets A_d + g_t by rounding and repairing the
// zero-sum constraint; distance ties resolve to the lexicographically
// smallest numerator.
lattice_point closest_lattice_point(const scaled_lattice& L, const vec& x);

// The 2^{d+1}-2 Delaunay neighbors of p, ordered by the bitmask of positions
// where the defining vector m takes the value -1.
std::vector<lattice_point> delaunay_neighbors(const lattice_point& p);

// Neighbor for a single nonempty proper subset mask (bit i = position i+1).
lattice_point delaunay_neighbor(const lattice_point& p, std::uint64_t mask);

// True iff b - a is a Delaunay neighbor offset.
bool lattice_adjacent(const lattice_point& a, const lattice_point& b);

// Exhaustive-search oracle: scans all lattice points whose numerator
// coordinates lie within box_radius of x's numerator-scale coordinates
// (branch-and-bound pruned), with the same tie rule as the decoder.
// Intended for tests; box_radius defaults to the 3(d+1) window.
lattice_point closest_lattice_point_bruteforce(const scaled_lattice& L, const vec& x,
                                               std::int64_t box_radius = -1);

}  // namespace permrips
