#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "qcm/multimap.hpp"
#include "qcm/oned.hpp"
#include "qcm/order.hpp"

using namespace qcm;

namespace {

SampledMultiMap sample_1d(std::vector<double> xs, std::vector<std::vector<double>> gens) {
    std::vector<Vec> points;
    std::vector<std::vector<Vec>> cones;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        points.push_back({xs[i]});
        std::vector<Vec> c;
        for (double g : gens[i]) c.push_back({g});
        cones.push_back(c);
    }
    return build_sample(points, cones, 1e-9);
}

}  // namespace

TEST_CASE("identically zero field") {
    OneDReport r = solve_1d(sample_1d({-1, 0, 1}, {{}, {}, {}}));
    CHECK(r.kind == OneDReport::Case::IdenticallyZero);
    CHECK(r.potential == OneDReport::PotentialKind::Constant);
    CHECK(r.descriptor() == "f(x) = 0");
    CHECK(r.potential_at(17.0) == doctest::Approx(0.0));
    CHECK(std::isinf(r.alpha));
    CHECK(std::isinf(r.beta));
}

TEST_CASE("outward sign field gives a compact interval") {
    // F(x) = {sign(x)} away from the core, trivial at 0: the normal-cone field
    // of f(x) = |x| with core [-1, 1]
    OneDReport r = solve_1d(sample_1d({-2, -1, 0, 1, 2}, {{-1}, {-1}, {}, {1}, {1}}));
    CHECK(r.kind == OneDReport::Case::CompactInterval);
    CHECK(r.alpha == doctest::Approx(-1.0));
    CHECK(r.beta == doctest::Approx(1.0));
    CHECK(r.potential == OneDReport::PotentialKind::AbsPower);
    CHECK(r.center == doctest::Approx(0.0));
    CHECK(r.q == doctest::Approx(1.0));
    CHECK(r.descriptor() == "f(x) = |x - 0|^1");
    CHECK(r.potential_at(2.0) == doctest::Approx(2.0));
    CHECK(r.potential_at(-0.5) == doctest::Approx(0.5));
}

TEST_CASE("one-sided fields give linear potentials") {
    OneDReport up = solve_1d(sample_1d({0, 1, 2}, {{1}, {1}, {1}}));
    CHECK(up.kind == OneDReport::Case::HalfLineOrEmpty);
    CHECK(up.potential == OneDReport::PotentialKind::Linear);
    CHECK(up.sign == 1);
    CHECK(up.descriptor() == "f(x) = x");
    CHECK(up.beta == doctest::Approx(0.0));

    OneDReport down = solve_1d(sample_1d({0, 1, 2}, {{-1}, {-1}, {-1}}));
    CHECK(down.sign == -1);
    CHECK(down.descriptor() == "f(x) = -x");
    CHECK(down.potential_at(3.0) == doctest::Approx(-3.0));
    CHECK(down.alpha == doctest::Approx(2.0));
}

TEST_CASE("cqm violation is surfaced, not classified") {
    SampledMultiMap M = sample_1d({-1, 1}, {{1}, {-1}});
    CHECK_THROWS_AS(solve_1d(M), CqmViolationError);
}

TEST_CASE("dimension gate") {
    SampledMultiMap M = build_sample({{0.0, 0.0}}, {{}}, 1e-9);
    CHECK_THROWS_AS(solve_1d(M), std::invalid_argument);
    CHECK_THROWS_AS(two_point_reduction_check(M), std::invalid_argument);
}

TEST_CASE("affine reparametrization with positive slope commutes") {
    std::vector<double> xs = {-2, -1, 0, 1, 2};
    std::vector<std::vector<double>> gs = {{-1}, {-1}, {}, {1}, {1}};
    OneDReport base = solve_1d(sample_1d(xs, gs));
    double a = 2.0, b = 3.0;
    std::vector<double> ys;
    for (double x : xs) ys.push_back(a * x + b);
    OneDReport mapped = solve_1d(sample_1d(ys, gs));
    CHECK(mapped.kind == base.kind);
    CHECK(mapped.alpha == doctest::Approx(a * base.alpha + b));
    CHECK(mapped.beta == doctest::Approx(a * base.beta + b));
    CHECK(mapped.center == doctest::Approx(a * base.center + b));
}

TEST_CASE("solve_1d on random CQM instances: potential ascends along edges") {
    std::mt19937 rng(41);
    int classified = 0;
    for (int iter = 0; iter < 500; ++iter) {
        SampledMultiMap M = corpus::random_instance(rng, 7, 1);
        AscendingDigraph G = ascending_edges(M);
        if (!check_cqm(G).cqm) {
            CHECK_THROWS_AS(solve_1d(M), CqmViolationError);
            continue;
        }
        ++classified;
        OneDReport r = solve_1d(M);  // must not hit the internal sign check
        CHECK(two_point_reduction_check(M));
        for (std::size_t i = 0; i < M.size(); ++i)
            for (const AscendingEdge& e : G.adj[i])
                CHECK(r.potential_at(M.points[e.to][0]) > r.potential_at(M.points[i][0]));
        // case split bookkeeping
        if (r.kind == OneDReport::Case::CompactInterval) CHECK(r.alpha <= r.beta + 1e-12);
        if (r.kind == OneDReport::Case::IdenticallyZero)
            for (const auto& c : M.cones) CHECK(c.trivial());
    }
    CHECK(classified > 100);
}

TEST_CASE("two-point reduction holds on chains") {
    SampledMultiMap M = sample_1d({0, 1, 2, 3}, {{1}, {1}, {1}, {}});
    CHECK(two_point_reduction_check(M));
}
