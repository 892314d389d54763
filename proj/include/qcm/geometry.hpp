#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcm/lp.hpp"
#include "qcm/multimap.hpp"
#include "qcm/order.hpp"
#include "qcm/vec.hpp"

namespace qcm {

// {z : normal.z <= offset} with |normal| = 1.
struct HalfSpace {
    Vec normal;
    double offset = 0.0;
};

// Finite intersection of closed half-spaces; the empty list denotes R^d.
struct HPolyhedron {
    int dimension = 0;
    std::vector<HalfSpace> halfspaces;
};

namespace detail {

inline bool halfspace_key_less(const HalfSpace& a, const HalfSpace& b) {
    for (std::size_t k = 0; k < a.normal.size(); ++k) {
        if (a.normal[k] < b.normal[k] - 1e-12) return true;
        if (a.normal[k] > b.normal[k] + 1e-12) return false;
    }
    return a.offset < b.offset - 1e-12;
}

inline bool halfspace_key_equal(const HalfSpace& a, const HalfSpace& b) {
    for (std::size_t k = 0; k < a.normal.size(); ++k)
        if (std::abs(a.normal[k] - b.normal[k]) > 1e-12) return false;
    return std::abs(a.offset - b.offset) <= 1e-12;
}

}  // namespace detail

inline void dedup(HPolyhedron& H) {
    std::sort(H.halfspaces.begin(), H.halfspaces.end(), detail::halfspace_key_less);
    H.halfspaces.erase(
        std::unique(H.halfspaces.begin(), H.halfspaces.end(), detail::halfspace_key_equal),
        H.halfspaces.end());
}

// Sampled level set C^F(x_i): intersection over all (w, p_w) with w not
// strictly below x_i of {z : p_w.(z - w) <= 0}. Outer approximation of the
// continuum level set (fewer constraints than the continuum intersection).
inline HPolyhedron level_polyhedron(const SampledMultiMap& M, const BoolMatrix& strict, int i) {
    HPolyhedron H;
    H.dimension = M.dimension;
    const int n = static_cast<int>(M.size());
    for (int w = 0; w < n; ++w) {
        if (strict.get(w, i)) continue;
        for (const Vec& p : M.cones[w].generators)
            H.halfspaces.push_back({p, dot(p, M.points[w])});
    }
    dedup(H);
    return H;
}

inline LPResult lp_max(const HPolyhedron& H, const Vec& objective) {
    std::vector<Vec> A;
    Vec b;
    A.reserve(H.halfspaces.size());
    b.reserve(H.halfspaces.size());
    for (const HalfSpace& hs : H.halfspaces) {
        A.push_back(hs.normal);
        b.push_back(hs.offset);
    }
    if (A.empty() && norm(objective) > 0) {
        LPResult r;
        r.status = LPStatus::Unbounded;
        return r;  // R^d with a nonzero objective
    }
    return simplex_max_free(A, b, objective);
}

inline bool contains(const HPolyhedron& H, const Vec& z, double tol = 1e-9) {
    if (static_cast<int>(z.size()) != H.dimension)
        throw std::invalid_argument("contains: dimension mismatch");
    for (const HalfSpace& hs : H.halfspaces)
        if (dot(hs.normal, z) > hs.offset + tol) return false;
    return true;
}

struct PointOutsideError : std::runtime_error {
    PointOutsideError() : std::runtime_error("normal_cone_contains: base point is outside H") {}
};

// p in N_H(x) iff sup over H of p.(z - x) <= 0 (LP tolerance 1e-7).
inline bool normal_cone_contains(const HPolyhedron& H, const Vec& x, const Vec& p) {
    if (!contains(H, x)) throw PointOutsideError();
    if (norm(p) == 0.0) return true;
    LPResult r = lp_max(H, p);
    if (r.status == LPStatus::Unbounded) return false;
    return r.value <= dot(p, x) + 1e-7;
}

// B subseteq A: every face of A bounds B from the right side, or B is empty.
inline bool includes(const HPolyhedron& A, const HPolyhedron& B) {
    if (A.dimension != B.dimension) throw std::invalid_argument("includes: dimension mismatch");
    Vec zero(B.dimension, 0.0);
    if (lp_max(B, zero).status == LPStatus::Infeasible) return true;
    for (const HalfSpace& hs : A.halfspaces) {
        LPResult r = lp_max(B, hs.normal);
        if (r.status == LPStatus::Unbounded) return false;
        if (r.status == LPStatus::Optimal && r.value > hs.offset + 1e-7) return false;
    }
    return true;
}

}  // namespace qcm
