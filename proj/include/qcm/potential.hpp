#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qcm/envelope.hpp"
#include "qcm/geometry.hpp"
#include "qcm/multimap.hpp"
#include "qcm/order.hpp"
#include "qcm/polygon.hpp"
#include "qcm/vec.hpp"

namespace qcm {

struct NotTotalError : std::runtime_error {
    int i, j;
    NotTotalError(int i_, int j_)
        : std::runtime_error("pre-order is not total: incomparable sample pair"), i(i_), j(j_) {}
};

// Integer-ranked potential over the equivalence classes of the large
// pre-order. Ranks increase strictly along inclusion of the class regions,
// which is all a quasi-convex potential needs; evaluation anywhere in R^d is
// the minimum rank whose region contains the point.
struct PotentialTable {
    std::vector<std::vector<int>> classes;  // sample indices, sorted by rank
    std::vector<HPolyhedron> region_of_class;
    double outside_value = 0.0;  // classes.size()

    int rank_of_sample(int i) const {
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (int m : classes[c])
                if (m == i) return static_cast<int>(c);
        throw std::out_of_range("rank_of_sample: index not in any class");
    }
};

inline PotentialTable rank_potential(const SampledMultiMap& M, const PreorderPair& P,
                                     const std::vector<HPolyhedron>& regions) {
    TotalityVerdict t = check_totality(P);
    if (!t.total) throw NotTotalError(t.i, t.j);
    const int n = P.large.size();
    if (regions.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("rank_potential: one region per sample point required");

    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < n; ++i) {
        if (cls[i] != -1) continue;
        cls[i] = static_cast<int>(classes.size());
        classes.push_back({i});
        for (int j = i + 1; j < n; ++j)
            if (cls[j] == -1 && P.large.get(i, j) && P.large.get(j, i)) {
                cls[j] = cls[i];
                classes.back().push_back(j);
            }
    }
    // total order on classes: strictly-below-first
    std::sort(classes.begin(), classes.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  return P.large.get(a[0], b[0]) && !P.large.get(b[0], a[0]);
              });

    PotentialTable T;
    T.classes = std::move(classes);
    T.outside_value = static_cast<double>(T.classes.size());
    for (const auto& members : T.classes) {
        const HPolyhedron& rep = regions[members[0]];
        for (std::size_t k = 1; k < members.size(); ++k) {
            const HPolyhedron& other = regions[members[k]];
            if (!includes(rep, other) || !includes(other, rep))
                throw std::runtime_error(
                    "rank_potential: regions differ within an equivalence class "
                    "(tolerance pathology)");
        }
        T.region_of_class.push_back(rep);
    }
    (void)M;
    return T;
}

inline double evaluate(const PotentialTable& T, const Vec& z) {
    for (std::size_t c = 0; c < T.region_of_class.size(); ++c)
        if (contains(T.region_of_class[c], z)) return static_cast<double>(c);
    return T.outside_value;
}

// ---- Gaussian level value -------------------------------------------------

// Region of a level-set family member at desk scale: a point, a segment, or a
// planar region given as half-spaces clipped to a centered box.
struct RegionDescriptor {
    int dim = 0;
    Vec point;          // dim 0
    Vec seg_a, seg_b;   // dim 1
    HPolyhedron planar; // dim 2
    double box_halfwidth = 8.0;  // Gaussian tail beyond is < 1e-14
};

inline RegionDescriptor region_point(Vec p) {
    RegionDescriptor r;
    r.dim = 0;
    r.point = std::move(p);
    return r;
}
inline RegionDescriptor region_segment(Vec a, Vec b) {
    RegionDescriptor r;
    r.dim = 1;
    r.seg_a = std::move(a);
    r.seg_b = std::move(b);
    return r;
}
inline RegionDescriptor region_planar(HPolyhedron H, double box_halfwidth = 8.0) {
    RegionDescriptor r;
    r.dim = 2;
    r.planar = std::move(H);
    r.box_halfwidth = box_halfwidth;
    return r;
}

namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
inline const std::array<double, 16>& gl16_nodes() {
    static const std::array<double, 16> x = {
        -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
        -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
        0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
        0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
    return x;
}
inline const std::array<double, 16>& gl16_weights() {
    static const std::array<double, 16> w = {
        0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
        0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    return w;
}

inline double gaussian_density_at(double x, double y) { return std::exp(-0.5 * (x * x + y * y)); }

// degree-5 seven-point rule on a triangle
inline double triangle_gauss(const std::array<double, 2>& a, const std::array<double, 2>& b,
                             const std::array<double, 2>& c) {
    static const double w0 = 9.0 / 40.0;
    static const double w1 = (155.0 - std::sqrt(15.0)) / 1200.0;
    static const double w2 = (155.0 + std::sqrt(15.0)) / 1200.0;
    static const double g1 = (6.0 - std::sqrt(15.0)) / 21.0;
    static const double g2 = (6.0 + std::sqrt(15.0)) / 21.0;
    struct Node {
        double l1, l2, w;
    };
    static const std::array<Node, 7> nodes = {{{1.0 / 3, 1.0 / 3, w0},
                                               {g1, g1, w1},
                                               {1 - 2 * g1, g1, w1},
                                               {g1, 1 - 2 * g1, w1},
                                               {g2, g2, w2},
                                               {1 - 2 * g2, g2, w2},
                                               {g2, 1 - 2 * g2, w2}}};
    // the seven weights sum to 1, so the rule needs the triangle area, which is
    // half the cross-product magnitude
    double area = 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
    double s = 0.0;
    for (const Node& nd : nodes) {
        double l3 = 1.0 - nd.l1 - nd.l2;
        double x = nd.l1 * a[0] + nd.l2 * b[0] + l3 * c[0];
        double y = nd.l1 * a[1] + nd.l2 * b[1] + l3 * c[1];
        s += nd.w * gaussian_density_at(x, y);
    }
    return s * area;
}

inline double triangle_integral(std::array<double, 2> a, std::array<double, 2> b,
                                std::array<double, 2> c, int depth = 0) {
    auto edge2 = [](const std::array<double, 2>& p, const std::array<double, 2>& q) {
        double dx = p[0] - q[0], dy = p[1] - q[1];
        return dx * dx + dy * dy;
    };
    double longest = std::max({edge2(a, b), edge2(b, c), edge2(c, a)});
    if (longest > 0.35 * 0.35 && depth < 12) {
        std::array<double, 2> ab = {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
        std::array<double, 2> bc = {0.5 * (b[0] + c[0]), 0.5 * (b[1] + c[1])};
        std::array<double, 2> ca = {0.5 * (c[0] + a[0]), 0.5 * (c[1] + a[1])};
        return triangle_integral(a, ab, ca, depth + 1) + triangle_integral(ab, b, bc, depth + 1) +
               triangle_integral(ca, bc, c, depth + 1) + triangle_integral(ab, bc, ca, depth + 1);
    }
    return triangle_gauss(a, b, c);
}

}  // namespace detail

// g(C) = dim C + (2*pi)^(-dim/2) * integral over C of exp(-|w|^2/2) against
// the dim-dimensional Hausdorff measure; absolute quadrature error <= 1e-3.
inline double gaussian_level_value(const RegionDescriptor& C) {
    switch (C.dim) {
        case 0:
            return std::exp(-0.5 * dot(C.point, C.point));
        case 1: {
            // composite Gauss-Legendre along the segment
            Vec dir = sub(C.seg_b, C.seg_a);
            double len = norm(dir);
            if (len == 0.0) throw std::invalid_argument("gaussian_level_value: degenerate segment");
            const int panels = std::max(8, static_cast<int>(std::ceil(len * 4)));
            double total = 0.0;
            for (int p = 0; p < panels; ++p) {
                double t0 = static_cast<double>(p) / panels;
                double t1 = static_cast<double>(p + 1) / panels;
                double half = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
                for (int q = 0; q < 16; ++q) {
                    double t = mid + half * detail::gl16_nodes()[q];
                    Vec w = add(C.seg_a, scale(dir, t));
                    total += detail::gl16_weights()[q] * half * len * std::exp(-0.5 * dot(w, w));
                }
            }
            return 1.0 + total / std::sqrt(2.0 * std::acos(-1.0));
        }
        case 2: {
            if (C.planar.dimension != 2)
                throw std::invalid_argument("gaussian_level_value: planar case requires d = 2");
            double hw = C.box_halfwidth;
            Polygon poly = clip_to_box(C.planar, -hw, -hw, hw, hw);
            if (poly.size() < 3) return 2.0;
            double integral = 0.0;
            for (std::size_t k = 1; k + 1 < poly.size(); ++k)
                integral += detail::triangle_integral(poly[0], poly[k], poly[k + 1]);
            return 2.0 + integral / (2.0 * std::acos(-1.0));
        }
        default:
            throw std::invalid_argument("gaussian_level_value: unsupported dimension");
    }
}

// ---- Normal-cone inclusion ------------------------------------------------

struct InclusionReport {
    struct Failure {
        int point = 0;
        int generator = 0;
        double slack = 0.0;  // LP excess over p.x; +inf when unbounded
    };
    std::vector<Failure> failures;
    double max_slack = 0.0;

    bool all_pass() const { return failures.empty(); }
};

// Checks F(x_i) subseteq N_{C^F(x_i)}(x_i) for every sample point.
inline InclusionReport verify_inclusion(const SampledMultiMap& M,
                                        const std::vector<HPolyhedron>& regions) {
    InclusionReport report;
    for (std::size_t i = 0; i < M.size(); ++i) {
        const auto& gens = M.cones[i].generators;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            LPResult r = lp_max(regions[i], gens[k]);
            double slack;
            if (r.status == LPStatus::Unbounded)
                slack = std::numeric_limits<double>::infinity();
            else
                slack = r.value - dot(gens[k], M.points[i]);
            report.max_slack = std::max(report.max_slack, slack);
            if (slack > 1e-7)
                report.failures.push_back(
                    {static_cast<int>(i), static_cast<int>(k), slack});
        }
    }
    return report;
}

}  // namespace qcm
