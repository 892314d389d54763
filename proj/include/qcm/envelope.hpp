#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

namespace qcm {

// Piecewise function on R: affine pieces on the open intervals between
// breakpoints, explicit values at the breakpoints. Finitely many pieces,
// finite values everywhere.
struct PiecewiseFn1D {
    struct Affine {
        double slope = 0.0;
        double intercept = 0.0;
        double at(double x) const { return slope * x + intercept; }
    };

    std::vector<double> breakpoints;        // strictly increasing
    std::vector<Affine> interval_pieces;    // breakpoints.size() + 1 entries
    std::vector<double> breakpoint_values;  // one per breakpoint

    double operator()(double x) const {
        auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
        std::size_t k = static_cast<std::size_t>(it - breakpoints.begin());
        if (it != breakpoints.end() && *it == x) return breakpoint_values[k];
        return interval_pieces[k].at(x);
    }

    void validate() const {
        if (interval_pieces.size() != breakpoints.size() + 1 ||
            breakpoint_values.size() != breakpoints.size())
            throw std::invalid_argument("PiecewiseFn1D: inconsistent piece counts");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i - 1] < breakpoints[i]))
                throw std::invalid_argument("PiecewiseFn1D: breakpoints not increasing");
    }
};

struct NotSublevelClosedError : std::runtime_error {
    double level;
    double at;
    NotSublevelClosedError(double level_, double at_)
        : std::runtime_error("sublevel set {g <= level} is not closed"),
          level(level_),
          at(at_) {}
};

namespace detail {

// One-sided limit of g at breakpoint k, and whether g stays <= that limit on
// the approaching side (so the limit level itself is approached from below).
struct SideLimit {
    double limit;
    bool from_below;
};

inline SideLimit left_limit(const PiecewiseFn1D& g, std::size_t k) {
    const auto& piece = g.interval_pieces[k];
    return {piece.at(g.breakpoints[k]), piece.slope >= 0.0};
}

inline SideLimit right_limit(const PiecewiseFn1D& g, std::size_t k) {
    const auto& piece = g.interval_pieces[k + 1];
    return {piece.at(g.breakpoints[k]), piece.slope <= 0.0};
}

// Value ranges attained by g: breakpoint values and constant-piece levels as
// points, non-constant pieces as open intervals.
struct AttainedSet {
    std::vector<double> points;
    std::vector<std::pair<double, double>> open_intervals;  // (lo, hi), lo < hi

    bool hits_open(double lo, double hi) const {  // intersect (lo, hi)?
        if (!(lo < hi)) return false;
        for (double p : points)
            if (lo < p && p < hi) return true;
        for (auto [a, b] : open_intervals)
            if (std::max(a, lo) < std::min(b, hi)) return true;
        return false;
    }
    bool hits_point(double v) const {
        for (double p : points)
            if (p == v) return true;
        for (auto [a, b] : open_intervals)
            if (a < v && v < b) return true;
        return false;
    }
};

inline AttainedSet attained_values(const PiecewiseFn1D& g) {
    AttainedSet s;
    const double inf = std::numeric_limits<double>::infinity();
    s.points = g.breakpoint_values;
    for (std::size_t k = 0; k < g.interval_pieces.size(); ++k) {
        const auto& piece = g.interval_pieces[k];
        double lo = (k == 0) ? -inf : g.breakpoints[k - 1];
        double hi = (k == g.interval_pieces.size() - 1) ? inf : g.breakpoints[k];
        if (lo >= hi) continue;  // only possible for an empty edge case
        if (piece.slope == 0.0) {
            s.points.push_back(piece.intercept);
        } else {
            double va = (lo == -inf) ? (piece.slope > 0 ? -inf : inf) : piece.at(lo);
            double vb = (hi == inf) ? (piece.slope > 0 ? inf : -inf) : piece.at(hi);
            s.open_intervals.emplace_back(std::min(va, vb), std::max(va, vb));
        }
    }
    return s;
}

}  // namespace detail

// Checks that every sublevel set {g <= g(x)} over attained levels is closed.
// Throws NotSublevelClosedError with a witness level otherwise.
inline void check_sublevels_closed(const PiecewiseFn1D& g) {
    g.validate();
    detail::AttainedSet attained = detail::attained_values(g);
    for (std::size_t k = 0; k < g.breakpoints.size(); ++k) {
        double vb = g.breakpoint_values[k];
        for (const detail::SideLimit& side :
             {detail::left_limit(g, k), detail::right_limit(g, k)}) {
            if (!(vb > side.limit)) continue;
            // b is a limit point of {g <= l} for attained l in (limit, vb),
            // and for l = limit when approached from below; closedness then
            // requires g(b) <= l, which fails since l < vb.
            if (attained.hits_open(side.limit, vb))
                throw NotSublevelClosedError(side.limit, g.breakpoints[k]);
            if (side.from_below && attained.hits_point(side.limit) && side.limit < vb)
                throw NotSublevelClosedError(side.limit, g.breakpoints[k]);
        }
    }
}

// Sublevel-stable lower semi-continuous envelope: g-hat(x) is the infimum of
// the pointwise lsc envelope over the level class {x' : g(x') = g(x)}. The
// output keeps every indexed sublevel family {g <= g(x)} intact while being
// lsc.
inline PiecewiseFn1D sublsc_envelope_1d(const PiecewiseFn1D& g) {
    check_sublevels_closed(g);
    const std::size_t nb = g.breakpoints.size();

    // pointwise lsc envelope at breakpoints
    std::vector<double> gbar(nb);
    for (std::size_t k = 0; k < nb; ++k)
        gbar[k] = std::min({g.breakpoint_values[k], detail::left_limit(g, k).limit,
                            detail::right_limit(g, k).limit});

    // per level: min of gbar over breakpoints carrying that level, and the
    // level itself when attained at an interval interior point
    std::map<double, double> level_min;
    for (std::size_t k = 0; k < nb; ++k) {
        double lvl = g.breakpoint_values[k];
        auto [it, fresh] = level_min.emplace(lvl, gbar[k]);
        if (!fresh) it->second = std::min(it->second, gbar[k]);
    }
    detail::AttainedSet attained;  // interval pieces only
    {
        PiecewiseFn1D intervals_only = g;
        for (double& v : intervals_only.breakpoint_values)
            v = std::numeric_limits<double>::quiet_NaN();
        attained = detail::attained_values(intervals_only);
        attained.points.erase(attained.points.begin(), attained.points.begin() + nb);
    }
    auto value_of_level = [&](double lvl) {
        double v = lvl;
        auto it = level_min.find(lvl);
        if (it != level_min.end()) {
            if (attained.hits_point(lvl)) v = std::min(lvl, it->second);
            else v = it->second;
        }
        return v;
    };

    PiecewiseFn1D out = g;
    for (std::size_t k = 0; k < nb; ++k)
        out.breakpoint_values[k] = value_of_level(g.breakpoint_values[k]);
    // constant pieces whose level is depressed by some breakpoint's envelope
    for (auto& piece : out.interval_pieces)
        if (piece.slope == 0.0) piece.intercept = value_of_level(piece.intercept);

    // non-constant pieces attaining a depressed breakpoint level at an
    // interior point get a new breakpoint there (unreachable under closed
    // sublevels, kept for robustness near ties)
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> inserts;  // (x, value)
    for (auto [lvl, mn] : level_min) {
        double hat = value_of_level(lvl);
        if (!(hat < lvl)) continue;
        for (std::size_t k = 0; k < g.interval_pieces.size(); ++k) {
            const auto& piece = g.interval_pieces[k];
            if (piece.slope == 0.0) continue;
            double lo = (k == 0) ? -inf : g.breakpoints[k - 1];
            double hi = (k == nb) ? inf : g.breakpoints[k];
            double x = (lvl - piece.intercept) / piece.slope;
            if (lo < x && x < hi) inserts.emplace_back(x, hat);
        }
    }
    for (auto [x, v] : inserts) {
        auto it = std::lower_bound(out.breakpoints.begin(), out.breakpoints.end(), x);
        std::size_t k = static_cast<std::size_t>(it - out.breakpoints.begin());
        if (it != out.breakpoints.end() && *it == x) continue;
        out.breakpoints.insert(it, x);
        out.breakpoint_values.insert(out.breakpoint_values.begin() + k, v);
        out.interval_pieces.insert(out.interval_pieces.begin() + k, out.interval_pieces[k]);
    }
    return out;
}

// liminf at every breakpoint is >= the value there
inline bool is_lsc(const PiecewiseFn1D& f) {
    for (std::size_t k = 0; k < f.breakpoints.size(); ++k) {
        double lim = std::min(detail::left_limit(f, k).limit, detail::right_limit(f, k).limit);
        if (f.breakpoint_values[k] > lim) return false;
    }
    return true;
}

}  // namespace qcm
