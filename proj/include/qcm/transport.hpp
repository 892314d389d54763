#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qcm/multimap.hpp"
#include "qcm/vec.hpp"

namespace qcm {

struct SupportPair {
    Vec x, y;
};

struct CinftyVerdict {
    bool passes = true;
    std::vector<int> cycle;  // pair indices, not closed
};

namespace detail {

inline bool cinfty_cycle_ok(const std::vector<SupportPair>& pairs, const std::vector<int>& cyc,
                            double tol) {
    double diag = std::numeric_limits<double>::infinity();
    double shifted = std::numeric_limits<double>::infinity();
    const std::size_t m = cyc.size();
    for (std::size_t i = 0; i < m; ++i) {
        const SupportPair& a = pairs[cyc[i]];
        const SupportPair& b = pairs[cyc[(i + 1) % m]];
        diag = std::min(diag, dot(a.x, a.y));
        shifted = std::min(shifted, dot(a.x, b.y));
    }
    return diag >= shifted - tol;
}

}  // namespace detail

// Brute-force c-infinity cyclical monotonicity over all simple cycles of
// length <= maxlen: min_i x_i.y_i >= min_i x_i.y_{i+1} must hold for each.
inline CinftyVerdict cinfty_check(const std::vector<SupportPair>& pairs, int maxlen,
                                  double tol = 1e-9) {
    const int n = static_cast<int>(pairs.size());
    if (n == 0) throw std::invalid_argument("cinfty_check: no support pairs");
    if (n > 10) throw std::invalid_argument("cinfty_check: more than 10 pairs (brute force cap)");
    if (maxlen < 2) throw std::invalid_argument("cinfty_check: maxlen must be >= 2");
    maxlen = std::min(maxlen, n);

    CinftyVerdict verdict;
    std::vector<int> cyc;
    std::vector<char> used(n, 0);
    // simple cycles canonicalized by smallest starting index
    auto extend = [&](auto&& self, int start) -> bool {
        if (cyc.size() >= 2 && !detail::cinfty_cycle_ok(pairs, cyc, tol)) {
            verdict.passes = false;
            verdict.cycle = cyc;
            return true;
        }
        if (static_cast<int>(cyc.size()) == maxlen) return false;
        for (int next = start + 1; next < n; ++next) {
            if (used[next]) continue;
            used[next] = 1;
            cyc.push_back(next);
            bool found = self(self, start);
            cyc.pop_back();
            used[next] = 0;
            if (found) return true;
        }
        return false;
    };
    for (int s = 0; s < n; ++s) {
        cyc.assign(1, s);
        std::fill(used.begin(), used.end(), 0);
        used[s] = 1;
        if (extend(extend, s)) return verdict;
    }
    return verdict;
}

// Reduction of the c-infinity condition to cyclic quasi-monotonicity: the
// multi-map on the target points {y_i} with generators {x_i}. Duplicate y's
// merge with cone union via build_sample.
inline SampledMultiMap coupling_to_multimap(const std::vector<SupportPair>& pairs,
                                            double tol = 1e-9) {
    if (pairs.empty()) throw std::invalid_argument("coupling_to_multimap: no support pairs");
    std::vector<Vec> points;
    std::vector<std::vector<Vec>> cones;
    for (const SupportPair& pr : pairs) {
        points.push_back(pr.y);
        cones.push_back({pr.x});
    }
    return build_sample(points, cones, tol);
}

}  // namespace qcm
