// Persistence over the two-element field: simplex-wise filtrations, matrix
// reduction (optimized + naive twin), barcodes, exact bottleneck distance,
// homology bases with induced maps, and rank-function tower barcodes.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "permrips/complex.hpp"

namespace permrips {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct bar {
    int dim = 0;
    double birth = 0;
    double death = kInf;

    bool operator==(const bar& o) const = default;
};

struct barcode {
    std::vector<bar> bars;

    void sort();  // by (dim, birth, death)
    bool operator==(const barcode& o) const { return bars == o.bars; }
};

barcode restrict_dim(const barcode& bc, int dim);
// Floors births at `lo` and drops bars whose death is <= lo.
barcode clamp_below(const barcode& bc, double lo);

// Simplex-wise filtration: simplices sorted by (value, dim, lex tuple).
struct filtration {
    std::vector<double> value;
    std::vector<std::int8_t> dim;
    std::vector<std::int32_t> verts;    // flat tuples
    std::vector<std::size_t> offset;    // size m+1
    int max_dim = -1;

    std::size_t size() const { return value.size(); }
    std::span<const std::int32_t> simplex(std::size_t i) const {
        return {verts.data() + offset[i], offset[i + 1] - offset[i]};
    }
};

// Takes the dims <= max_simplex_dim part of a valued skeleton. Throws on
// missing values or non-monotone values.
filtration build_filtration(const skeleton& K, int max_simplex_dim);

struct reduction_result {
    barcode bc;                      // zero-length bars dropped
    std::vector<std::int64_t> pair;  // partner filtration index, or -1
    std::vector<char> positive;      // 1 iff the simplex creates a class
};

// Column reduction with the clearing optimization (dimensions processed top
// down). Bars of dimension > max_hom_dim are not reported.
reduction_result reduce_filtration(const filtration& f, int max_hom_dim);
// Unoptimized single-pass twin; serves as an independent oracle.
reduction_result reduce_filtration_basic(const filtration& f, int max_hom_dim);

// Exact bottleneck distance via binary search over candidate values with a
// bipartite matching feasibility test. Infinite bars match only infinite
// bars (mismatched counts give +inf). With log_scale the endpoints are
// log-transformed first; births must be positive then.
double bottleneck_distance(const barcode& a, const barcode& b, bool log_scale = false);

// --- F2 linear algebra ------------------------------------------------

struct f2_matrix {
    int rows = 0, cols = 0;
    std::vector<std::uint64_t> words;  // row-major bitsets

    static f2_matrix zero(int r, int c);
    static f2_matrix identity(int n);
    int words_per_row() const { return (cols + 63) / 64; }
    bool get(int r, int c) const;
    void set(int r, int c, bool v);
};

f2_matrix f2_mul(const f2_matrix& a, const f2_matrix& b);
int f2_rank(f2_matrix m);

// --- homology bases and induced maps ----------------------------------

// Cycle/boundary bases of H_p of one complex, echelonized by lowest row so
// arbitrary cycles can be expressed in the essential basis.
struct chain_basis {
    int p = 0;
    std::size_t n_cells = 0;                              // p-simplex count
    std::vector<std::vector<std::int32_t>> boundaries;    // reduced d_{p+1} columns
    std::vector<std::vector<std::int32_t>> cycles;        // essential cycles
    std::vector<std::int32_t> low_kind;                   // per p-row: 0 none, 1 boundary, 2 cycle
    std::vector<std::int32_t> low_index;                  // column index for that low

    int betti() const { return static_cast<int>(cycles.size()); }
    // Coefficients of the cycle `z` (sorted p-row indices) over the essential
    // basis, modulo boundaries. Throws if z is not a cycle of the complex.
    std::vector<char> solve(std::vector<std::int32_t> z) const;
};

chain_basis homology_basis(const skeleton& K, int p);

// Matrix of the map induced on H_p by a simplicial vertex map. Degenerate
// image simplices vanish. Throws if the map is not simplicial.
f2_matrix induced_map(const chain_basis& src_basis, const skeleton& src,
                      const std::vector<std::int32_t>& vertex_map,
                      const chain_basis& dst_basis, const skeleton& dst);

// Rank-function barcode of a sequence of complexes joined by maps: bars in
// grid scales, with multiplicity m_{i,j} from inclusion-exclusion over the
// composite ranks. Throws on negative multiplicity.
barcode rank_function_barcode(const std::vector<int>& betti, const std::vector<f2_matrix>& maps,
                              const std::vector<double>& scales, int hom_dim);

// All composite ranks r[i][j] (0-based, i <= j) of a chain of maps.
std::vector<std::vector<int>> composite_ranks(const std::vector<int>& betti,
                                              const std::vector<f2_matrix>& maps);

// --- tower persistence ---------------------------------------------------

struct tower;

// Barcode of the tower in one homology dimension via the rank function of
// the induced maps. Bars are indexed by the grid scales; an interval alive
// through the last scale is reported with infinite death. Requires the tower
// skeletons to reach dimension hom_dim+1.
barcode tower_barcode(const tower& t, int hom_dim);

struct interleaving_report {
    int hom_dim = 0;
    double distance = 0;
    double threshold = 0;  // log(6(d+1))
    bool pass = false;
    double window_lo = 0;
};

// Log-scale bottleneck distance between the tower barcode and the exact Rips
// barcode of the same cloud, restricted to the tower's scale window.
interleaving_report verify_interleaving(const point_cloud& pc, const tower& t, int hom_dim);

}  // namespace permrips
