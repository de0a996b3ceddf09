// Smallest enclosing ball (Welzl, move-to-front) in arbitrary dimension.
#pragma once

#include <vector>

#include "permrips/geom.hpp"

namespace permrips {

struct ball {
    vec center;
    double radius = 0.0;
};

// Smallest ball enclosing all points (1e-9 slack), determined by at most
// dim+1 support points. Throws std::invalid_argument on empty input.
ball miniball(const std::vector<vec>& points);

// Radius only (the Cech filtration value of the simplex on these points).
double miniball_radius(const std::vector<vec>& points);

}  // namespace permrips
