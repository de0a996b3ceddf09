#include <cmath>
#include <stdexcept>

#include "permrips/exact.hpp"
#include "permrips/persistence.hpp"
#include "permrips/tower.hpp"

namespace permrips {

barcode tower_barcode(const tower& t, int hom_dim) {
    if (t.k < hom_dim + 1)
        throw std::invalid_argument("tower_barcode: tower skeletons too shallow for this dimension");
    const int n = static_cast<int>(t.complexes.size());
    std::vector<chain_basis> bases;
    bases.reserve(n);
    for (const approx_complex& ac : t.complexes) bases.push_back(homology_basis(ac.K, hom_dim));
    std::vector<int> betti;
    for (const chain_basis& b : bases) betti.push_back(b.betti());
    std::vector<f2_matrix> maps;
    for (int i = 0; i + 1 < n; ++i)
        maps.push_back(induced_map(bases[i], t.complexes[i].K, t.theta[i], bases[i + 1],
                                   t.complexes[i + 1].K));
    return rank_function_barcode(betti, maps, t.scales, hom_dim);
}

interleaving_report verify_interleaving(const point_cloud& pc, const tower& t, int hom_dim) {
    interleaving_report rep;
    rep.hom_dim = hom_dim;
    rep.window_lo = t.scales.front();
    rep.threshold = std::log(6.0 * (pc.dim() + 1));
    barcode rips = clamp_below(restrict_dim(rips_barcode(pc, hom_dim), hom_dim), rep.window_lo);
    barcode tow = restrict_dim(tower_barcode(t, hom_dim), hom_dim);
    rep.distance = bottleneck_distance(rips, tow, /*log_scale=*/true);
    rep.pass = rep.distance <= rep.threshold + 1e-9;
    return rep;
}

}  // namespace permrips
