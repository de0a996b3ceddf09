// Combinatorics and geometry of the permutahedron: faces as ordered
// partitions, incidence, counting, exact barycenters, good partitions, and
// the polytope-separation checks.
#pragma once

#include <cstdint>
#include <vector>

#include "permrips/geom.hpp"
#include "permrips/lattice.hpp"

namespace permrips {

// Ordered partition of [d+1] = {1,...,d+1}, blocks stored as bitmasks
// (bit i <-> element i+1). Blocks are nonempty, disjoint, and cover [d+1].
struct ordered_partition {
    std::vector<std::uint64_t> blocks;
    int d = 0;

    int block_count() const { return static_cast<int>(blocks.size()); }
    bool operator==(const ordered_partition& o) const { return d == o.d && blocks == o.blocks; }
};

bool lex_less(const ordered_partition& a, const ordered_partition& b);

// Validates block structure. Throws std::invalid_argument on violation.
ordered_partition make_partition(std::vector<std::uint64_t> blocks, int d);

// A face of the permutahedron; a partition into k blocks is a (d+1-k)-face.
struct perm_face {
    ordered_partition partition;
    int dim = 0;
};

perm_face make_face(ordered_partition p);

// Vertex for a permutation of {0,...,d}: result[i] = base[perm[i]] where
// base = (d, d-2, ..., -d) / (2(d+1)).
vec vertex_coordinates(const std::vector<int>& perm, int d);

// Common distance of all vertices from the center: sqrt(d(d+2)/(12(d+1))).
double circumradius(int d);

// All faces of the given dimension (0 <= dim <= d-1), each exactly once,
// sorted by the lexicographic order of their block-mask sequences.
std::vector<perm_face> faces_of_dim(int d, int dim);

// Number of ordered partitions of [d+1] into b blocks (b! * Stirling2(d+1,b)).
std::uint64_t ordered_partition_count(int d, int b);

// Facet adjacency: first blocks nested one way or the other.
bool facets_adjacent(const perm_face& f1, const perm_face& f2);

// True iff sub's partition refines sup's respecting block order (each sup
// block is a union of consecutive sub blocks). Requires sub.dim < sup.dim,
// except that the whole polytope (one block) is a coface of everything.
bool face_incidence(const perm_face& sub, const perm_face& sup);

// Barycenter of the face's vertex set. All coordinates inside one block are
// equal; exact value at an index of block i is (2p_i + s_i - (d+1))/(2(d+1))
// with p_i the number of elements in earlier blocks.
vec barycenter(const perm_face& face);

// Exact numerators of the barycenter over the common denominator 2(d+1).
std::vector<std::int64_t> barycenter_numerators(const ordered_partition& p);

// Squared barycenter norm as an exact fraction num/den.
void barycenter_norm2_exact(const ordered_partition& p, std::int64_t& num, std::int64_t& den);

// All ordered k-partitions of [d+1] with every block of size >= ell.
std::vector<ordered_partition> enumerate_good_partitions(int d, int ell, int k);

// Uniform good-partition count (d+1)!/(ell!)^{(d+1)/ell}; requires ell | d+1.
std::uint64_t uniform_good_count(int d, int ell);

// Vertices of a face = all permutation vertices whose order respects the
// partition (used as a geometric oracle for incidence).
std::vector<vec> face_vertices(const perm_face& f);

// Delaunay simplex at the origin dual to a k-block partition: the origin plus
// the neighbors for the k-1 proper prefix unions of the blocks.
std::vector<lattice_point> partition_to_simplex(const ordered_partition& p);

// Distance between the convex hulls of two point sets (min-norm point of the
// Minkowski difference, Wolfe's algorithm). `gap` receives the final duality
// gap; the returned value is accurate to ~1e-12 on desk-scale inputs.
double convex_hulls_distance(const std::vector<vec>& A, const std::vector<vec>& B,
                             double* gap = nullptr);

// Certificate of the supporting hyperplane -x_{pi(1)} + x_{pi(d+1)} + 1 = 0
// for the facet opposite the origin in the d-simplex dual to the permuted
// base vertex: checks the neighbor set lies on/above it and the permutahedron
// keeps distance >= 1/(sqrt(2)(d+1)). Returns false on any violation.
bool opposite_facet_certificate(const std::vector<int>& perm, int d);

}  // namespace permrips
