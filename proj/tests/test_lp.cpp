#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "qcm/lp.hpp"

using namespace qcm;

namespace {

// Vertex-enumeration oracle for max c.z over {A z <= b} in d = 2, assuming the
// feasible set is bounded (caller guarantees it by boxing).
std::optional<double> vertex_oracle_2d(const std::vector<Vec>& A, const Vec& b, const Vec& c) {
    const std::size_t m = A.size();
    bool any = false;
    double best = -1e300;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            double det = A[i][0] * A[j][1] - A[i][1] * A[j][0];
            if (std::abs(det) < 1e-12) continue;
            double x = (b[i] * A[j][1] - A[i][1] * b[j]) / det;
            double y = (A[i][0] * b[j] - b[i] * A[j][0]) / det;
            bool feasible = true;
            for (std::size_t k = 0; k < m; ++k)
                if (A[k][0] * x + A[k][1] * y > b[k] + 1e-7) {
                    feasible = false;
                    break;
                }
            if (!feasible) continue;
            any = true;
            best = std::max(best, c[0] * x + c[1] * y);
        }
    if (!any) return std::nullopt;
    return best;
}

}  // namespace

TEST_CASE("axis-aligned basics") {
    // max x subject to x <= 3, y <= 5, -x <= 0, -y <= 0
    std::vector<Vec> A = {{1, 0}, {0, 1}};
    Vec b = {3, 5};
    LPResult r = simplex_max(A, b, {1, 0});
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == doctest::Approx(3.0));
    CHECK(r.arg[0] == doctest::Approx(3.0));
}

TEST_CASE("unbounded detection") {
    std::vector<Vec> A = {{1, 0}};
    Vec b = {0};
    LPResult r = simplex_max_free(A, b, {0, 1});
    CHECK(r.status == LPStatus::Unbounded);
    r = simplex_max_free(A, b, {1, 0});
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == doctest::Approx(0.0));
}

TEST_CASE("infeasible detection") {
    std::vector<Vec> A = {{1}, {-1}};
    Vec b = {-1, 0};  // x <= -1 and x >= 0
    LPResult r = simplex_max_free(A, b, {1});
    CHECK(r.status == LPStatus::Infeasible);
}

TEST_CASE("free variables reach negative optima") {
    // max -x subject to -x <= 5  ->  x = -5, value 5
    std::vector<Vec> A = {{-1}};
    Vec b = {5};
    LPResult r = simplex_max_free(A, b, {-1});
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == doctest::Approx(5.0));
    CHECK(r.arg[0] == doctest::Approx(-5.0));
}

TEST_CASE("random bounded polygons agree with vertex enumeration") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_int_distribution<int> nhs(3, 12);
    int nonempty = 0;
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<Vec> A = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};  // bounding box
        Vec b = {4, 4, 4, 4};
        int extra = nhs(rng);
        for (int k = 0; k < extra; ++k) {
            double ang = coord(rng);
            A.push_back({std::cos(ang), std::sin(ang)});
            b.push_back(coord(rng));
        }
        Vec c = {coord(rng), coord(rng)};
        LPResult r = simplex_max_free(A, b, c);
        auto oracle = vertex_oracle_2d(A, b, c);
        if (!oracle.has_value()) {
            // oracle found no feasible vertex: the set is empty (bounded case)
            CHECK(r.status == LPStatus::Infeasible);
            continue;
        }
        ++nonempty;
        REQUIRE(r.status == LPStatus::Optimal);
        CHECK(r.value == doctest::Approx(*oracle).epsilon(1e-6));
        // argument feasibility
        for (std::size_t k = 0; k < A.size(); ++k)
            CHECK(dot(A[k], r.arg) <= b[k] + 1e-6);
    }
    CHECK(nonempty > 50);  // the corpus is not degenerate
}
