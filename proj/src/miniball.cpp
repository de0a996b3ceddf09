#include "permrips/miniball.hpp"

#include <cmath>
#include <stdexcept>

namespace permrips {

namespace {

bool contains(const ball& b, const vec& p) {
    if (b.radius < 0) return false;
    return dist2(b.center, p) <= b.radius * b.radius + 1e-10 * (1.0 + b.radius * b.radius);
}

// Ball with all support points on its boundary (they are affinely
// independent by construction of the Welzl recursion).
ball circumball(const std::vector<vec>& S) {
    ball b;
    if (S.empty()) {
        b.radius = -1.0;
        return b;
    }
    const std::size_t dim = S[0].size();
    const int m = static_cast<int>(S.size()) - 1;
    if (m == 0) {
        b.center = S[0];
        b.radius = 0.0;
        return b;
    }
    // center = S0 + sum lambda_i (S_i - S0); boundary conditions give
    // 2 (S_i-S0).(c-S0) = |S_i-S0|^2.
    std::vector<vec> e(m);
    for (int i = 0; i < m; ++i) e[i] = sub(S[i + 1], S[0]);
    std::vector<std::vector<double>> A(m, std::vector<double>(m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) A[i][j] = 2.0 * dot(e[i], e[j]);
        A[i][m] = norm2(e[i]);
    }
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        if (std::abs(A[piv][c]) < 1e-12) {
            // affinely dependent support: fall back to dropping the offender
            std::vector<vec> S2(S.begin(), S.end() - 1);
            return circumball(S2);
        }
        std::swap(A[c], A[piv]);
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            for (int cc = c; cc <= m; ++cc) A[r][cc] -= f * A[c][cc];
        }
    }
    vec center = S[0];
    for (int i = 0; i < m; ++i) {
        double lam = A[i][m] / A[i][i];
        for (std::size_t j = 0; j < dim; ++j) center[j] += lam * e[i][j];
    }
    b.radius = dist(center, S[0]);
    b.center = std::move(center);
    return b;
}

ball welzl(std::vector<const vec*>& pts, int end, std::vector<vec>& support, std::size_t dim) {
    if (end == 0 || support.size() == dim + 1) return circumball(support);
    ball b = welzl(pts, end - 1, support, dim);
    const vec* p = pts[end - 1];
    if (contains(b, *p)) return b;
    support.push_back(*p);
    b = welzl(pts, end - 1, support, dim);
    support.pop_back();
    for (int i = end - 1; i > 0; --i) pts[i] = pts[i - 1];
    pts[0] = p;
    return b;
}

}  // namespace

ball miniball(const std::vector<vec>& points) {
    if (points.empty()) throw std::invalid_argument("miniball: empty input");
    std::vector<const vec*> pts(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) pts[i] = &points[i];
    std::vector<vec> support;
    return welzl(pts, static_cast<int>(pts.size()), support, points[0].size());
}

double miniball_radius(const std::vector<vec>& points) { return miniball(points).radius; }

}  // namespace permrips
