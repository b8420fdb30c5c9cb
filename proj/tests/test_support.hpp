#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls into the implementation paths it is used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sbfr/geometry.hpp"
#include "sbfr/oracles.hpp"

namespace sbfr::testing {

// Vertices of the 2-D hull by brute force over ordered pairs: (i, j) is a
// hull edge iff every other point lies strictly to its left. Assumes
// general position (no three collinear points).
inline std::vector<Point> brute_force_hull_vertices(const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            bool edge = true;
            for (std::size_t k = 0; k < pts.size() && edge; ++k) {
                if (k == i || k == j) continue;
                const double c = (pts[j][0] - pts[i][0]) * (pts[k][1] - pts[i][1]) -
                                 (pts[j][1] - pts[i][1]) * (pts[k][0] - pts[i][0]);
                if (c <= 0) edge = false;
            }
            if (!edge) continue;
            for (const Point* p : {&pts[i], &pts[j]}) {
                if (std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
            }
        }
    }
    return out;
}

// Containment in a convex polygon given counter-clockwise, by edge signs.
inline bool in_convex_polygon(const std::vector<Point>& ccw, const Point& q, double tol = 1e-12) {
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        const Point& a = ccw[i];
        const Point& b = ccw[(i + 1) % ccw.size()];
        const double c = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
        if (c < -tol) return false;
    }
    return true;
}

// Region corners/outline constructed forward (rotate the shape, then test),
// in 2-D only.
inline std::vector<Point> forward_rectangle_polygon(const RegionSpec& s) {
    const double g = s.gamma_degrees * M_PI / 180.0;
    const double c = std::cos(g);
    const double sn = std::sin(g);
    const double hx = s.half_extents[0];
    const double hy = s.half_extents[1];
    const double corners[4][2] = {{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
    std::vector<Point> out;
    for (const auto& k : corners) {
        out.push_back(Point{s.center[0] + c * k[0] - sn * k[1], s.center[1] + sn * k[0] + c * k[1]});
    }
    return out;
}

// Distance along unit direction u from source (inside) to the region
// boundary, solved in the region's local frame.
inline double analytic_exit_offset(const RegionSpec& s, const std::vector<double>& source, const std::vector<double>& u) {
    const std::size_t d = s.half_extents.size();
    std::vector<double> p(d);
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) {
        p[i] = source[i] - s.center[i];
        w[i] = u[i];
    }
    if (d >= 2) {
        const double g = -s.gamma_degrees * M_PI / 180.0;
        const double c = std::cos(g);
        const double sn = std::sin(g);
        const std::size_t a = s.plane.first;
        const std::size_t b = s.plane.second;
        const double pa = p[a], pb = p[b], wa = w[a], wb = w[b];
        p[a] = c * pa - sn * pb;
        p[b] = sn * pa + c * pb;
        w[a] = c * wa - sn * wb;
        w[b] = sn * wa + c * wb;
    }
    if (s.shape == RegionShape::Hyperrectangle) {
        double t = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d; ++i) {
            if (w[i] > 0) t = std::min(t, (s.half_extents[i] - p[i]) / w[i]);
            if (w[i] < 0) t = std::min(t, (-s.half_extents[i] - p[i]) / w[i]);
        }
        return t;
    }
    double A = 0, B = 0, C = -1;
    for (std::size_t i = 0; i < d; ++i) {
        const double h2 = s.half_extents[i] * s.half_extents[i];
        A += w[i] * w[i] / h2;
        B += 2 * p[i] * w[i] / h2;
        C += p[i] * p[i] / h2;
    }
    return (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
}

} // namespace sbfr::testing
