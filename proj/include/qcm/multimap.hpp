#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qcm/lp.hpp"
#include "qcm/vec.hpp"

namespace qcm {

// Generator representation of a closed convex cone: the cone is the positive
// span of the (unit) generators. The empty set denotes the trivial cone {0}.
struct ConeGenerators {
    std::vector<Vec> generators;

    bool trivial() const { return generators.empty(); }
};

// Finite sample of a multi-valued map F : R^d -o R^d. Immutable after
// construction; every point carries a cone of output directions.
struct SampledMultiMap {
    int dimension = 0;
    std::vector<Vec> points;
    std::vector<ConeGenerators> cones;
    double tol = 1e-9;
    bool cone_interpreted = false;

    std::size_t size() const { return points.size(); }
};

namespace detail {

inline void sort_dedup_generators(std::vector<Vec>& gens) {
    std::sort(gens.begin(), gens.end(), lex_less);
    gens.erase(std::unique(gens.begin(), gens.end(),
                           [](const Vec& a, const Vec& b) { return dist(a, b) < 1e-12; }),
               gens.end());
}

}  // namespace detail

// Canonicalizes a raw sample: merges points within Euclidean distance tol
// (cone union), drops zero generators, normalizes the rest to unit length and
// sorts everything lexicographically. The output round-trips bit-exactly.
inline SampledMultiMap build_sample(const std::vector<Vec>& points,
                                    const std::vector<std::vector<Vec>>& raw_cones,
                                    double tol = 1e-9) {
    if (points.size() != raw_cones.size())
        throw std::invalid_argument("build_sample: points/cones length mismatch");
    if (points.empty()) throw std::invalid_argument("build_sample: empty sample");
    if (!(tol > 0)) throw std::invalid_argument("build_sample: tol must be positive");
    const std::size_t d = points[0].size();
    if (d < 1) throw std::invalid_argument("build_sample: dimension must be >= 1");
    for (const Vec& p : points) {
        if (p.size() != d) throw std::invalid_argument("build_sample: dimension mismatch");
        if (!all_finite(p)) throw std::invalid_argument("build_sample: non-finite coordinate");
    }
    for (const auto& cone : raw_cones)
        for (const Vec& g : cone) {
            if (g.size() != d)
                throw std::invalid_argument("build_sample: generator dimension mismatch");
            if (!all_finite(g))
                throw std::invalid_argument("build_sample: non-finite generator");
        }

    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(points[a], points[b]); });

    SampledMultiMap M;
    M.dimension = static_cast<int>(d);
    M.tol = tol;
    for (std::size_t idx : order) {
        const Vec& p = points[idx];
        std::size_t slot = M.points.size();
        for (std::size_t k = 0; k < M.points.size(); ++k)
            if (dist(M.points[k], p) <= tol) {
                slot = k;
                break;
            }
        if (slot == M.points.size()) {
            M.points.push_back(p);
            M.cones.emplace_back();
        }
        for (const Vec& g : raw_cones[idx]) {
            double n = norm(g);
            if (n < 1e-15) continue;  // zero generator denotes no direction
            // already-unit generators are kept bit-exactly so that the output
            // round-trips through build_sample unchanged
            M.cones[slot].generators.push_back(std::abs(n - 1.0) <= 1e-12 ? g
                                                                          : scale(g, 1.0 / n));
        }
    }
    for (auto& cone : M.cones) detail::sort_dedup_generators(cone.generators);
    return M;
}

// The generator sets already denote their positive span, so the representation
// is unchanged; the flag records that downstream strictness tests quantify
// over the spanned cone (equivalently, over generators).
inline SampledMultiMap cone_envelope(const SampledMultiMap& M) {
    SampledMultiMap out = M;
    out.cone_interpreted = true;
    return out;
}

// Membership of v in the positive span of the generators (LP feasibility of
// v = sum lambda_i g_i, lambda >= 0).
inline bool in_cone(const ConeGenerators& cone, const Vec& v, double tol = 1e-9) {
    if (norm(v) <= tol) return true;
    if (cone.trivial()) return false;
    const std::size_t d = v.size();
    const std::size_t k = cone.generators.size();
    // feasibility via max 0 over { G lambda = v, lambda >= 0 }, equalities split
    std::vector<Vec> A(2 * d, Vec(k));
    Vec b(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            A[i][j] = cone.generators[j][i];
            A[d + i][j] = -cone.generators[j][i];
        }
        b[i] = v[i] + tol;
        b[d + i] = -v[i] + tol;
    }
    return simplex_max(A, b, Vec(k, 0.0)).status == LPStatus::Optimal;
}

// Points outside the mask get the trivial cone; the point set is unchanged.
inline SampledMultiMap restrict_map(const SampledMultiMap& M,
                                    const std::function<bool(const Vec&)>& mask) {
    SampledMultiMap out = M;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!mask(out.points[i])) out.cones[i].generators.clear();
    return out;
}

}  // namespace qcm
