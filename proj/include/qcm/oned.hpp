#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qcm/multimap.hpp"
#include "qcm/order.hpp"
#include "qcm/vec.hpp"

namespace qcm {

// Exact d = 1 classification of the common core C_* and an explicit potential.
struct OneDReport {
    enum class Case { CompactInterval, HalfLineOrEmpty, IdenticallyZero };
    enum class PotentialKind { AbsPower, Linear, Constant };

    Case kind = Case::IdenticallyZero;
    double alpha = -std::numeric_limits<double>::infinity();
    double beta = std::numeric_limits<double>::infinity();

    PotentialKind potential = PotentialKind::Constant;
    double center = 0.0;  // AbsPower
    double q = 1.0;       // AbsPower exponent
    int sign = 0;         // Linear: +1 for f(x) = x, -1 for f(x) = -x

    double potential_at(double x) const {
        switch (potential) {
            case PotentialKind::AbsPower:
                return std::pow(std::abs(x - center), q);
            case PotentialKind::Linear:
                return sign * x;
            case PotentialKind::Constant:
                return 0.0;
        }
        return 0.0;
    }

    std::string descriptor() const {
        std::ostringstream os;
        switch (potential) {
            case PotentialKind::AbsPower:
                os << "f(x) = |x - " << center << "|^" << q;
                break;
            case PotentialKind::Linear:
                os << (sign > 0 ? "f(x) = x" : "f(x) = -x");
                break;
            case PotentialKind::Constant:
                os << "f(x) = 0";
                break;
        }
        return os.str();
    }
};

// alpha = sup of points carrying a negative generator, beta = inf of points
// with a positive one; the case split follows from which of them is finite.
inline OneDReport solve_1d(const SampledMultiMap& M) {
    if (M.dimension != 1) throw std::invalid_argument("solve_1d: requires d = 1");
    AscendingDigraph G = ascending_edges(M);
    CqmVerdict v = check_cqm(G);
    if (!v.cqm) throw CqmViolationError(std::move(v));

    const double inf = std::numeric_limits<double>::infinity();
    double alpha = -inf, beta = inf;
    bool any_pos = false, any_neg = false;
    for (std::size_t i = 0; i < M.size(); ++i) {
        for (const Vec& g : M.cones[i].generators) {
            if (g[0] > 0) {
                any_pos = true;
                beta = std::min(beta, M.points[i][0]);
            } else if (g[0] < 0) {
                any_neg = true;
                alpha = std::max(alpha, M.points[i][0]);
            }
        }
    }

    OneDReport r;
    r.alpha = alpha;
    r.beta = beta;
    if (!any_pos && !any_neg) {
        r.kind = OneDReport::Case::IdenticallyZero;
        r.potential = OneDReport::PotentialKind::Constant;
        return r;
    }
    if (any_pos && any_neg && alpha <= beta) {
        r.kind = OneDReport::Case::CompactInterval;
        r.potential = OneDReport::PotentialKind::AbsPower;
        r.center = 0.5 * (alpha + beta);
        r.q = 1.0;
    } else if (any_pos && any_neg) {
        // alpha > beta: some point right of beta carries a negative generator
        // and one left of alpha a positive one -- an ascending 2-cycle, which
        // check_cqm above should have caught unless the overlap is sub-tol.
        // Treat as CompactInterval collapsed to the midpoint.
        r.kind = OneDReport::Case::CompactInterval;
        r.potential = OneDReport::PotentialKind::AbsPower;
        r.center = 0.5 * (alpha + beta);
        r.q = 1.0;
    } else {
        r.kind = OneDReport::Case::HalfLineOrEmpty;
        r.potential = OneDReport::PotentialKind::Linear;
        r.sign = any_pos ? +1 : -1;
    }

    // F subseteq N_f sign check at every sample point
    for (std::size_t i = 0; i < M.size(); ++i) {
        double x = M.points[i][0];
        for (const Vec& g : M.cones[i].generators) {
            bool ok = true;
            switch (r.potential) {
                case OneDReport::PotentialKind::AbsPower:
                    if (x > r.center + M.tol) ok = g[0] > 0;
                    else if (x < r.center - M.tol) ok = g[0] < 0;
                    break;
                case OneDReport::PotentialKind::Linear:
                    ok = (r.sign > 0) ? g[0] > 0 : g[0] < 0;
                    break;
                case OneDReport::PotentialKind::Constant:
                    ok = false;  // nontrivial generator under trivial potential
                    break;
            }
            if (!ok)
                throw std::logic_error("solve_1d: emitted potential fails F subseteq N_f");
        }
    }
    return r;
}

// In d = 1 any ascending path collapses to its endpoints, so reachability is
// exactly the direct-edge relation.
inline bool two_point_reduction_check(const SampledMultiMap& M) {
    if (M.dimension != 1) throw std::invalid_argument("two_point_reduction_check: requires d = 1");
    AscendingDigraph G = ascending_edges(M);
    BoolMatrix strict = strict_preorder(G);
    const int n = G.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && strict.get(i, j) != G.has_edge(i, j)) return false;
    return true;
}

}  // namespace qcm
