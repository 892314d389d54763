#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qcm/fixtures.hpp"

using namespace qcm;
using fixtures::Membership;

namespace {

bool gens_equal(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (dist(a[k], b[k]) > 1e-12) return false;
    return true;
}

bool same_map(const SampledMultiMap& A, const SampledMultiMap& B) {
    if (A.size() != B.size()) return false;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (dist(A.points[i], B.points[i]) > 1e-12) return false;
        if (!gens_equal(A.cones[i].generators, B.cones[i].generators)) return false;
    }
    return true;
}

Vec rotate(const Vec& v, double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {c * v[0] - s * v[1], s * v[0] + c * v[1]};
}

}  // namespace

TEST_CASE("field_eval spec values") {
    ConeGenerators F = fixtures::field_eval("hedgehog", {3, 4});
    REQUIRE(F.generators.size() == 1);
    CHECK(dist(F.generators[0], {0.6, 0.8}) < 1e-12);
    CHECK(fixtures::field_eval("hedgehog", {0, 0}).generators.size() == 4);

    CHECK(fixtures::field_eval("plateau_jump", {1.5, 0}).trivial());
    CHECK(!fixtures::field_eval("plateau_jump", {0.5, 0}).trivial());
    CHECK(!fixtures::field_eval("plateau_jump", {2, 0}).trivial());

    CHECK(gens_equal(fixtures::field_eval("single_circle", {1, 0}).generators, {{1, 0}}));
    CHECK(fixtures::field_eval("single_circle", {0.5, 0}).trivial());
    CHECK(fixtures::field_eval("single_circle", {3, 3}).trivial());
    // the discretization band around the circle carries the field value
    CHECK(!fixtures::field_eval("single_circle", {1.05, 0}).trivial());

    CHECK(fixtures::field_eval("stadium", {0, 0.5}).generators.size() == 2);
    CHECK(fixtures::field_eval("stadium", {0, 1}).generators.size() == 3);
    CHECK(fixtures::field_eval("stadium", {0, -1}).generators.size() == 3);
    CHECK(gens_equal(fixtures::field_eval("stadium", {2, 0.5}).generators, {{1, 0}}));
    ConeGenerators cap = fixtures::field_eval("stadium", {0, 3});
    REQUIRE(cap.generators.size() == 1);
    CHECK(dist(cap.generators[0], {0, 1}) < 1e-12);

    CHECK(!fixtures::field_eval("three_quarters", {-1, 2}).trivial());
    CHECK(fixtures::field_eval("three_quarters", {1, 2}).trivial());

    CHECK(fixtures::field_eval("half_hedgehog", {1, 1}).trivial());
    CHECK(!fixtures::field_eval("half_hedgehog", {-1, 1}).trivial());

    CHECK(gens_equal(fixtures::field_eval("half_const", {2, -1}).generators, {{1, 0}}));
    CHECK(!fixtures::field_eval("half_const", {-1, 1}).trivial());

    CHECK_THROWS_AS(fixtures::field_eval("nonsense", {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::field_eval("stadium", {0.0}), std::invalid_argument);
    CHECK(fixtures::names().size() == 7);
}

TEST_CASE("radial fixtures commute with rotations") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ang(0.0, 6.28);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int iter = 0; iter < 50; ++iter) {
        Vec x = {coord(rng), coord(rng)};
        double t = ang(rng);
        for (const char* name : {"hedgehog", "plateau_jump", "single_circle"}) {
            ConeGenerators F = fixtures::field_eval(name, x);
            ConeGenerators Fr = fixtures::field_eval(name, rotate(x, t));
            REQUIRE(F.generators.size() <= 1);  // away from the origin: radial or trivial
            REQUIRE(F.generators.size() == Fr.generators.size());
            if (!F.trivial()) CHECK(dist(rotate(F.generators[0], t), Fr.generators[0]) < 1e-12);
        }
    }
}

TEST_CASE("membership oracle spec values") {
    CHECK(fixtures::oracle_membership("hedgehog", {1, 0}, {0, 0.5}, 0.1) == Membership::Inside);
    CHECK(fixtures::oracle_membership("hedgehog", {1, 0}, {2, 0}, 0.1) == Membership::Outside);
    CHECK(fixtures::oracle_membership("hedgehog", {1, 0}, {0.95, 0}, 0.1) == Membership::Boundary);
    CHECK(fixtures::oracle_membership("half_const", {1, 0}, {0.5, 100}, 0.1) == Membership::Inside);
    CHECK(fixtures::oracle_membership("single_circle", {0.5, 0.5}, {0.9, 0}, 0.05) ==
          Membership::Inside);
    // plateau: trivial-cone points get the outer radius-2 ball
    CHECK(fixtures::oracle_membership("plateau_jump", {1.5, 0}, {0, 1.9}, 0.05) ==
          Membership::Inside);
    CHECK(fixtures::oracle_membership("plateau_jump", {0.5, 0}, {0, 0.7}, 0.05) ==
          Membership::Outside);
    CHECK_THROWS_AS(fixtures::oracle_signed_distance("single_circle", {2, 0}, {0, 0}),
                    fixtures::OracleUnavailable);
    CHECK_THROWS_AS(fixtures::oracle_signed_distance("stadium", {1, 0}, {0, 0}),
                    fixtures::OracleUnavailable);
    CHECK_THROWS_AS(fixtures::oracle_signed_distance("three_quarters", {1, 0}, {0, 0}),
                    fixtures::OracleUnavailable);
    CHECK_THROWS_AS(fixtures::oracle_membership("hedgehog", {1, 0}, {0, 0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("half_const cut-ball distance agrees with brute force") {
    // C^F(x) for x_1 <= 0 is the ball of radius |x| intersected with
    // {z_1 <= 0}; compare the closed form against a dense point cloud
    Vec x = {-0.9, 1.2};
    double r = norm(x);
    std::vector<Vec> cloud;
    const int n = 301;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec w = {-r + 2 * r * i / (n - 1.0), -r + 2 * r * j / (n - 1.0)};
            if (norm(w) <= r && w[0] <= 0) cloud.push_back(w);
        }
    REQUIRE(!cloud.empty());
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int iter = 0; iter < 40; ++iter) {
        Vec z = {coord(rng), coord(rng)};
        double s = fixtures::oracle_signed_distance("half_const", x, z);
        double brute = std::numeric_limits<double>::infinity();
        for (const Vec& w : cloud) brute = std::min(brute, dist(z, w));
        if (s > 0.05)
            CHECK(s == doctest::Approx(brute).epsilon(0.05));
        else
            CHECK(brute < 0.05);  // z is inside or near the boundary
    }
}

TEST_CASE("restricting the hedgehog to the left half-plane gives half_hedgehog") {
    std::vector<Vec> grid = fixtures::make_grid(15);
    SampledMultiMap restricted = restrict_map(
        fixtures::sample_field("hedgehog", grid), [](const Vec& p) { return p[0] <= 0; });
    SampledMultiMap direct = fixtures::sample_field("half_hedgehog", grid);
    CHECK(same_map(restricted, direct));
}

TEST_CASE("normal_cone_map_of is sampling the field") {
    std::vector<Vec> grid = fixtures::make_grid(7);
    CHECK(same_map(fixtures::normal_cone_map_of("half_const", grid),
                   fixtures::sample_field("half_const", grid)));
}

TEST_CASE("make_grid covers the box uniformly") {
    std::vector<Vec> g = fixtures::make_grid(5, -1, 1);
    REQUIRE(g.size() == 25);
    CHECK(dist(g.front(), {-1, -1}) < 1e-12);
    CHECK(dist(g.back(), {1, 1}) < 1e-12);
    bool has_center = false;
    for (const Vec& p : g)
        if (dist(p, {0, 0}) < 1e-12) has_center = true;
    CHECK(has_center);
    CHECK_THROWS_AS(fixtures::make_grid(1), std::invalid_argument);
}

TEST_CASE("perturb_path input gates") {
    auto field = [](const Vec& x) { return normalized(x); };
    std::vector<Vec> two = {{1, 0}, {1, 0.01}};
    fixtures::PerturbParams prm;
    CHECK_THROWS_AS(fixtures::perturb_path(field, {{1, 0}}, 0.01, prm), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::perturb_path(field, two, 0.0, prm), std::invalid_argument);
    fixtures::PerturbParams tight;
    tight.M = 25;
    tight.L = 2;  // M L delta = 0.5 hits the contraction bound
    CHECK_THROWS_AS(fixtures::perturb_path(field, two, 0.01, tight), std::invalid_argument);
    fixtures::PerturbParams small_T;
    small_T.T = 0.001;  // n delta = 0.01 > 2T
    CHECK_THROWS_AS(fixtures::perturb_path(field, two, 0.01, small_T), std::invalid_argument);
    std::vector<Vec> ragged = {{1, 0}, {1, 0.02}};  // spacing 2 delta
    CHECK_THROWS_AS(fixtures::perturb_path(field, ragged, 0.01, prm), std::invalid_argument);
}

TEST_CASE("perturb_path first step matches the closed form") {
    auto field = [](const Vec&) { return Vec{0, 1}; };
    fixtures::PerturbParams prm;
    prm.A = 1.5;
    prm.L = 3.0;
    double delta = 0.01;
    std::vector<Vec> base = {{0, 0}, {delta, 0}};
    std::vector<Vec> out = fixtures::perturb_path(field, base, delta, prm);
    REQUIRE(out.size() == 2);
    CHECK(dist(out[0], base[0]) == doctest::Approx(0.0));
    double eps1 = 2 * prm.A * delta / prm.L;
    CHECK(dist(out[1], {delta, eps1}) < 1e-15);
}

TEST_CASE("perturbed circular arc ascends against the radial field") {
    // quarter arc of the unit circle at delta-spacing; the perturbed path must
    // make strict progress of at least A delta^2 in the field direction
    const double delta = 0.01;
    const int steps = 156;
    std::vector<Vec> base;
    for (int k = 0; k <= steps; ++k) {
        double chord_angle = 2.0 * std::asin(delta / 2.0);
        base.push_back({std::cos(k * chord_angle), std::sin(k * chord_angle)});
    }
    auto field = [](const Vec& x) { return normalized(x); };
    fixtures::PerturbParams prm;
    prm.A = 1.0;
    prm.L = 2.0;
    prm.M = 20.0;
    prm.T = 1.0;
    std::vector<Vec> tilde = fixtures::perturb_path(field, base, delta, prm);
    REQUIRE(tilde.size() == base.size());
    double mindot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < tilde.size(); ++i)
        mindot = std::min(mindot, dot(field(tilde[i - 1]), sub(tilde[i], tilde[i - 1])));
    CHECK(mindot >= prm.A * delta * delta);
}
