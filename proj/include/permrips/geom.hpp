// Small dense-vector helpers shared across modules.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace permrips {

using vec = std::vector<double>;

inline double dot(const vec& a, const vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const vec& a) { return dot(a, a); }
inline double norm(const vec& a) { return std::sqrt(norm2(a)); }

inline double dist2(const vec& a, const vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

inline double dist(const vec& a, const vec& b) { return std::sqrt(dist2(a, b)); }

inline vec sub(const vec& a, const vec& b) {
    vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline vec add(const vec& a, const vec& b) {
    vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline vec scale(const vec& a, double c) {
    vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

}  // namespace permrips
