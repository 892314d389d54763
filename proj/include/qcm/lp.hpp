#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "qcm/vec.hpp"

namespace qcm {

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    double value = 0.0;
    Vec arg;  // maximizer, only meaningful when Optimal
};

// Dense two-phase simplex in dictionary form. Entering and leaving variables
// are picked with index tie-breaking (Bland-style) so the iteration cannot
// cycle. The tableau keeps the n original columns only, which keeps pivots
// cheap when the constraint count is large and the dimension small.
//
// Solves   max c.x   s.t.   A x <= b,  x >= 0.
class DenseSimplex {
  public:
    static constexpr double eps = 1e-9;

    DenseSimplex(const std::vector<Vec>& A, const Vec& b, const Vec& c)
        : m_(static_cast<int>(b.size())),
          n_(static_cast<int>(c.size())),
          N_(n_ + 1),
          B_(m_),
          D_(m_ + 2, Vec(n_ + 2)) {
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j) D_[i][j] = A[i][j];
        for (int i = 0; i < m_; ++i) {
            B_[i] = n_ + i;
            D_[i][n_] = -1;
            D_[i][n_ + 1] = b[i];
        }
        for (int j = 0; j < n_; ++j) {
            N_[j] = j;
            D_[m_][j] = -c[j];
        }
        N_[n_] = -1;
        D_[m_ + 1][n_] = 1;
    }

    LPResult solve() {
        LPResult res;
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
        if (m_ > 0 && D_[r][n_ + 1] < -eps) {
            pivot(r, n_);
            if (!iterate(2) || D_[m_ + 1][n_ + 1] < -eps) {
                res.status = LPStatus::Infeasible;
                return res;
            }
            for (int i = 0; i < m_; ++i)
                if (B_[i] == -1) {
                    int s = 0;
                    for (int j = 1; j <= n_; ++j)
                        if (pref(i, j, s)) s = j;
                    pivot(i, s);
                }
        }
        bool bounded = iterate(1);
        res.arg.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (B_[i] < n_) res.arg[B_[i]] = D_[i][n_ + 1];
        if (!bounded) {
            res.status = LPStatus::Unbounded;
            return res;
        }
        res.status = LPStatus::Optimal;
        res.value = D_[m_][n_ + 1];
        return res;
    }

  private:
    // lexicographic preference (value, nonbasic index) of column j over s in row i
    bool pref(int i, int j, int s) const {
        return std::make_pair(D_[i][j], N_[j]) < std::make_pair(D_[i][s], N_[s]);
    }

    void pivot(int r, int s) {
        double* a = D_[r].data();
        double inv = 1 / a[s];
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r && std::abs(D_[i][s]) > eps) {
                double* b = D_[i].data();
                double inv2 = b[s] * inv;
                for (int j = 0; j < n_ + 2; ++j) b[j] -= a[j] * inv2;
                b[s] = a[s] * inv2;
            }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) D_[r][j] *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) D_[i][s] *= -inv;
        D_[r][s] = inv;
        std::swap(B_[r], N_[s]);
    }

    // phase 1 drives the true objective (row m_), phase 2 the auxiliary row.
    bool iterate(int phase) {
        int x = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (N_[j] == -phase) continue;
                if (s == -1 || pref(x, j, s)) s = j;
            }
            if (D_[x][s] >= -eps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (D_[i][s] <= eps) continue;
                if (r == -1 ||
                    std::make_pair(D_[i][n_ + 1] / D_[i][s], B_[i]) <
                        std::make_pair(D_[r][n_ + 1] / D_[r][s], B_[r]))
                    r = i;
            }
            if (r == -1) return false;  // unbounded along the entering column
            pivot(r, s);
        }
    }

    int m_, n_;
    std::vector<int> N_, B_;
    std::vector<Vec> D_;
};

// max c.x s.t. A x <= b, x >= 0
inline LPResult simplex_max(const std::vector<Vec>& A, const Vec& b, const Vec& c) {
    return DenseSimplex(A, b, c).solve();
}

// max c.z s.t. A z <= b with z free, via the split z = u - v, u,v >= 0.
inline LPResult simplex_max_free(const std::vector<Vec>& A, const Vec& b, const Vec& c) {
    const std::size_t d = c.size();
    std::vector<Vec> A2(A.size(), Vec(2 * d));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) {
            A2[i][j] = A[i][j];
            A2[i][d + j] = -A[i][j];
        }
    Vec c2(2 * d);
    for (std::size_t j = 0; j < d; ++j) {
        c2[j] = c[j];
        c2[d + j] = -c[j];
    }
    LPResult r = simplex_max(A2, b, c2);
    if (r.status == LPStatus::Optimal) {
        Vec z(d);
        for (std::size_t j = 0; j < d; ++j) z[j] = r.arg[j] - r.arg[d + j];
        r.arg = std::move(z);
    } else {
        r.arg.clear();
    }
    return r;
}

}  // namespace qcm
