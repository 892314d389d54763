#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcm/multimap.hpp"
#include "qcm/vec.hpp"

namespace qcm {
namespace fixtures {

// The unit circle of the single_circle field has measure zero, so a uniform
// grid would never hit it; points within this band of the circle carry the
// field value instead (half the 41x41 grid spacing over [-3,3]^2).
inline constexpr double kCircleBand = 0.075;

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> list = {
        "hedgehog",      "plateau_jump",  "stadium",    "three_quarters",
        "single_circle", "half_hedgehog", "half_const"};
    return list;
}

namespace detail {

inline std::vector<Vec> full_cone(std::size_t d) {
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < d; ++k) {
        gens.push_back(unit_axis(d, k, +1));
        gens.push_back(unit_axis(d, k, -1));
    }
    return gens;
}

// distance from the ray {(t, 0, ..., 0) : t >= 0}
inline double dist_ray(const Vec& z) {
    if (z[0] >= 0) {
        double s = 0;
        for (std::size_t k = 1; k < z.size(); ++k) s += z[k] * z[k];
        return std::sqrt(s);
    }
    return norm(z);
}

// distance from the segment {0} x [-1, 1] (d = 2)
inline double dist_stadium(const Vec& z) {
    double y = std::abs(z[1]) <= 1 ? 0.0 : std::abs(z[1]) - 1.0;
    return std::hypot(z[0], y);
}

}  // namespace detail

// The analytic field value at x, encoded as cone generators (R^d -> {+-e_k}).
inline ConeGenerators field_eval(const std::string& name, const Vec& x) {
    const std::size_t d = x.size();
    const double r = norm(x);
    ConeGenerators F;
    if (name == "hedgehog") {
        F.generators = (r == 0) ? detail::full_cone(d) : std::vector<Vec>{x};
    } else if (name == "plateau_jump") {
        if (r == 0)
            F.generators = detail::full_cone(d);
        else if (r < 1 || r >= 2)
            F.generators = {x};
    } else if (name == "stadium") {
        if (d != 2) throw std::invalid_argument("stadium: d = 2 only");
        if (r == 0) {
            F.generators = detail::full_cone(2);
        } else if (x[0] == 0 && std::abs(x[1]) < 1) {
            F.generators = {{1, 0}, {-1, 0}};
        } else if (x[0] == 0 && x[1] == 1) {
            F.generators = {{1, 0}, {-1, 0}, {0, 1}};
        } else if (x[0] == 0 && x[1] == -1) {
            F.generators = {{1, 0}, {-1, 0}, {0, -1}};
        } else if (std::abs(x[1]) <= 1) {
            F.generators = {{x[0] > 0 ? 1.0 : -1.0, 0.0}};
        } else {
            F.generators = {{x[0], x[1] - (x[1] > 0 ? 1.0 : -1.0)}};
        }
    } else if (name == "three_quarters") {
        if (d != 2) throw std::invalid_argument("three_quarters: d = 2 only");
        if (r == 0)
            F.generators = detail::full_cone(2);
        else if (std::min(x[0], x[1]) <= 0)
            F.generators = {x};
    } else if (name == "single_circle") {
        if (std::abs(r - 1.0) <= kCircleBand && r > 0) F.generators = {x};
    } else if (name == "half_hedgehog") {
        if (r == 0)
            F.generators = detail::full_cone(d);
        else if (x[0] <= 0)
            F.generators = {x};
    } else if (name == "half_const") {
        if (r == 0)
            F.generators = detail::full_cone(d);
        else if (x[0] <= 0)
            F.generators = {x};
        else
            F.generators = {unit_axis(d, 0, +1)};
    } else {
        throw std::invalid_argument("unknown fixture '" + name + "'");
    }
    for (Vec& g : F.generators) g = normalized(g);
    return F;
}

enum class Membership { Inside, Outside, Boundary };

struct OracleUnavailable : std::runtime_error {
    explicit OracleUnavailable(const std::string& name)
        : std::runtime_error("no exact membership oracle for fixture '" + name + "'") {}
};

// Signed distance of z to the boundary of the analytic C^F(x), negative
// inside. Available for the fixtures with closed-form level sets.
inline double oracle_signed_distance(const std::string& name, const Vec& x, const Vec& z) {
    const double r = norm(x);
    if (name == "hedgehog") return norm(z) - r;
    if (name == "plateau_jump") {
        double radius = (r < 1 || r >= 2) ? r : 2.0;
        return norm(z) - radius;
    }
    if (name == "single_circle") {
        if (r > 1.0)
            throw OracleUnavailable("single_circle (|x| > 1, drop-shaped set)");
        return norm(z) - 1.0;  // C^F(x) = closed unit ball for |x| <= 1
    }
    if (name == "half_hedgehog") return detail::dist_ray(z) - detail::dist_ray(x);
    if (name == "half_const") {
        if (x[0] > 0) return z[0] - x[0];  // half-space {z_1 <= x_1}
        // ball of radius |x| cut by {z_1 <= 0}
        if (norm(z) <= r && z[0] <= 0)
            return -std::min(r - norm(z), -z[0]);  // negative depth inside
        // half-space through the ball center, so projecting on the plane
        // first and then radially is the exact projection onto the cut ball
        Vec p = z;
        if (p[0] > 0) p[0] = 0;
        double np = norm(p);
        Vec q = (np > r && np > 0) ? scale(p, r / np) : p;
        return dist(z, q);
    }
    throw OracleUnavailable(name);
}

inline Membership oracle_membership(const std::string& name, const Vec& x, const Vec& z,
                                    double margin) {
    if (!(margin > 0)) throw std::invalid_argument("oracle_membership: margin must be positive");
    double s = oracle_signed_distance(name, x, z);
    if (s <= -margin) return Membership::Inside;
    if (s >= margin) return Membership::Outside;
    return Membership::Boundary;
}

// n x n uniform grid over [lo, hi]^2
inline std::vector<Vec> make_grid(int n, double lo = -3.0, double hi = 3.0) {
    if (n < 2) throw std::invalid_argument("make_grid: n >= 2");
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pts.push_back({lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1)});
    return pts;
}

inline SampledMultiMap sample_field(const std::string& name, const std::vector<Vec>& grid,
                                    double tol = 1e-9) {
    std::vector<std::vector<Vec>> cones;
    cones.reserve(grid.size());
    for (const Vec& x : grid) cones.push_back(field_eval(name, x).generators);
    return build_sample(grid, cones, tol);
}

// Sampling N_f of a fixture potential is exactly sampling the fixture field.
inline SampledMultiMap normal_cone_map_of(const std::string& name, const std::vector<Vec>& grid,
                                          double tol = 1e-9) {
    return sample_field(name, grid, tol);
}

// ---- Perturbation construction -------------------------------------------

struct PerturbParams {
    double A = 1.0;  // C^{1,1} graph bound of the level surface
    double L = 1.0;  // local Lipschitz constant of the field
    double M = 1.0;  // closeness budget: |x~_i - x_i| <= M delta is the target
    double T = 1.0;  // time horizon: n delta <= 2T
};

// x~_0 = x_0 and x~_i = x_i + eps_i F(x_{i-1}), with eps_1 = 2 A delta / L and
// eps_{i+1} = (1 + 3 L delta / (1 - M L delta)) eps_i.
inline std::vector<Vec> perturb_path(const std::function<Vec(const Vec&)>& field,
                                     const std::vector<Vec>& base_points, double delta,
                                     const PerturbParams& prm) {
    if (base_points.size() < 2) throw std::invalid_argument("perturb_path: need >= 2 points");
    if (!(delta > 0)) throw std::invalid_argument("perturb_path: delta must be positive");
    if (prm.M * prm.L * delta >= 0.5)
        throw std::invalid_argument("perturb_path: M L delta >= 1/2");
    const std::size_t n = base_points.size() - 1;
    if (static_cast<double>(n) * delta > 2 * prm.T + 1e-12)
        throw std::invalid_argument("perturb_path: n delta exceeds 2T");
    for (std::size_t i = 0; i + 1 < base_points.size(); ++i)
        if (std::abs(dist(base_points[i + 1], base_points[i]) - delta) > 1e-6 * (1 + delta))
            throw std::invalid_argument("perturb_path: steps are not delta-spaced");

    const double growth = 1.0 + 3.0 * prm.L * delta / (1.0 - prm.M * prm.L * delta);
    double eps = 2.0 * prm.A * delta / prm.L;
    std::vector<Vec> out;
    out.reserve(base_points.size());
    out.push_back(base_points[0]);
    for (std::size_t i = 1; i < base_points.size(); ++i) {
        out.push_back(add(base_points[i], scale(field(base_points[i - 1]), eps)));
        eps *= growth;
    }
    return out;
}

}  // namespace fixtures
}  // namespace qcm
