#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "qcm/geometry.hpp"
#include "qcm/vec.hpp"

namespace qcm {

// Convex polygon as a counter-clockwise vertex loop in R^2.
using Polygon = std::vector<std::array<double, 2>>;

inline Polygon box_polygon(double x0, double y0, double x1, double y1) {
    return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

// Sutherland-Hodgman clip of a convex polygon by {z : a.z <= b}.
inline Polygon clip_halfplane(const Polygon& poly, double ax, double ay, double b) {
    Polygon out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        double dp = ax * p[0] + ay * p[1] - b;
        double dq = ax * q[0] + ay * q[1] - b;
        if (dp <= 0) out.push_back(p);
        if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) {
            double t = dp / (dp - dq);
            out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

// H-polyhedron (d = 2) intersected with a clip box, as a vertex loop.
// Empty result means empty intersection.
inline Polygon clip_to_box(const HPolyhedron& H, double x0, double y0, double x1, double y1) {
    Polygon poly = box_polygon(x0, y0, x1, y1);
    for (const HalfSpace& hs : H.halfspaces) {
        poly = clip_halfplane(poly, hs.normal[0], hs.normal[1], hs.offset);
        if (poly.empty()) break;
    }
    return poly;
}

inline double polygon_area(const Polygon& poly) {
    double a = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

}  // namespace qcm
