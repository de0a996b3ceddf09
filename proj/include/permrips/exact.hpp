// Exact Rips and Cech baselines, simplex-wise Cech filtrations with
// face/coface gaps, the lower-bound point set (origin plus all Delaunay
// neighbors), and the good-simplex verifier.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permrips/complex.hpp"
#include "permrips/lattice.hpp"
#include "permrips/permutahedron.hpp"
#include "permrips/persistence.hpp"

namespace permrips {

// Rips complex at scale r: edges iff distance <= 2r, flag completion to
// dimension k. Works from coordinates or a metric matrix.
skeleton build_rips(const point_cloud& pc, double r, int k);

// All simplices up to dimension k with value = half the simplex diameter.
skeleton rips_filtration_skeleton(const point_cloud& pc, int k);

// All simplices up to dimension k with value = miniball radius.
skeleton cech_filtration_skeleton(const point_cloud& pc, int k);

barcode rips_barcode(const point_cloud& pc, int max_hom_dim);
barcode cech_barcode(const point_cloud& pc, int max_hom_dim);

struct face_coface {
    double L = kInf;       // min over facets of alpha(sigma) - alpha(facet)
    double L_star = kInf;  // min over sigma+{p}, p in P, of alpha gap
};

// Gaps of the Cech value of sigma (vertex index list) against its facets and
// all one-point extensions over the full cloud.
face_coface face_coface_distances(const point_cloud& pc, std::vector<int> sigma);

// Number of intervals with delta < (death-birth)/(2 death); infinite bars
// count iff delta < 1/2. Throws on delta <= 0.
int count_significant_intervals(const barcode& bc, double delta);

// --- lower-bound instance ----------------------------------------------

struct lower_bound_instance {
    int d = 0;
    int ell = 0;
    int k = 0;  // (d+1)/ell when divisible, else 0
    bool uniform = false;
    point_cloud cloud;                 // origin first, then neighbors in mask order
    std::vector<lattice_point> points;
};

// P = origin + its 2^{d+1}-2 Delaunay neighbors, n = 2^{d+1}-1, in H.
// The point at index m (m >= 1) is the neighbor for mask m.
lower_bound_instance build_lower_bound_instance(int d, int ell);

struct good_simplex_record {
    ordered_partition partition;
    std::vector<int> simplex;          // indices into the instance cloud
    double alpha_closed_form = 0;      // barycenter norm
    double alpha_miniball = 0;
    double L = 0;                      // over facets (full filtration)
    double L_star_unrestricted = 0;    // over all one-point extensions
    double L_star_delaunay = 0;        // over partition splits only
    bool splitting_identity_exact = false;   // corrected l t(l-t)/(4(d+1)^2)
    bool splitting_identity_stated = false;  // (d+1+l) t(l-t)/(4(d+1)^2)
    bool cyclic_shift_good = false;
    // from the reduced barcode, when computed
    bool has_interval = false;
    bool positive = false;
    double birth = 0, death = 0;
    bool significant = false;          // at delta = 0.9 ell/(96(d+1)^2)
    bool pairing_bound_ok = false;     // interval length >= L (negative) / L* (positive)
};

struct lower_bound_report {
    int d = 0, ell = 0, k = 0, n = 0;
    std::uint64_t expected_count = 0;
    std::size_t count = 0;
    double bound = 0;              // ell/(24 (d+1)^{3/2})
    double alt_bound = 0;          // (ell-1)/(16 (d+1) sqrt d)
    double significance_delta = 0; // 0.9 ell/(96 (d+1)^2)
    double min_L = kInf;
    double min_L_star_delaunay = kInf;
    double min_L_star_unrestricted = kInf;
    double max_alpha_diff = 0;     // closed form vs miniball
    double diameter = 0;
    double diameter_bound = 0;     // 2 sqrt d
    bool counts_match = false;
    bool alphas_match = false;
    bool splitting_exact_all = false;
    bool splitting_stated_all = false;
    bool bounds_pass = false;      // L and Delaunay L* against `bound`
    bool cyclic_shift_all = false;
    bool significance_all = false; // only meaningful with barcode
    bool pairing_bounds_all = false;
    bool barcode_computed = false;
    std::vector<good_simplex_record> simplices;
};

// Enumerates the uniform good simplices, checks the closed forms, the
// splitting identities (exact rationals), the measured face/coface gaps, and
// optionally locates each associated interval in the reduced simplex-wise
// Cech filtration of the full instance.
lower_bound_report verify_good_simplices(const lower_bound_instance& inst, bool with_barcode);

}  // namespace permrips
