#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcm/multimap.hpp"
#include "qcm/vec.hpp"

namespace qcm {

// Compact boolean n x n matrix (bit rows) for the pre-order relations.
class BoolMatrix {
  public:
    BoolMatrix() = default;
    explicit BoolMatrix(int n)
        : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

    int size() const { return n_; }
    bool get(int i, int j) const {
        return (bits_[row(i) + j / 64] >> (j % 64)) & 1u;
    }
    void set(int i, int j, bool v = true) {
        std::uint64_t mask = std::uint64_t(1) << (j % 64);
        if (v)
            bits_[row(i) + j / 64] |= mask;
        else
            bits_[row(i) + j / 64] &= ~mask;
    }
    // row[i] |= row[j]
    void or_row(int i, int j) {
        for (int w = 0; w < words_; ++w) bits_[row(i) + w] |= bits_[row(j) + w];
    }
    // row[i] &= row[j]
    void and_row(int i, int j) {
        for (int w = 0; w < words_; ++w) bits_[row(i) + w] &= bits_[row(j) + w];
    }
    void and_row_from(int i, const BoolMatrix& other, int j) {
        for (int w = 0; w < words_; ++w)
            bits_[row(i) + w] &= other.bits_[other.row(j) + w];
    }
    void fill_row(int i, bool v) {
        std::uint64_t word = v ? ~std::uint64_t(0) : 0;
        for (int w = 0; w < words_; ++w) bits_[row(i) + w] = word;
        if (v && n_ % 64) bits_[row(i) + words_ - 1] = (std::uint64_t(1) << (n_ % 64)) - 1;
    }

  private:
    std::size_t row(int i) const { return static_cast<std::size_t>(i) * words_; }
    int n_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct AscendingEdge {
    int to = 0;
    int witness = 0;  // generator index at the source achieving the strict step
};

// Edge (i,j) present iff some generator p of F(x_i) has (x_j - x_i).p beyond
// the strictness tolerance; the achieving generator index is recorded.
struct AscendingDigraph {
    int n = 0;
    std::vector<std::vector<AscendingEdge>> adj;

    bool has_edge(int i, int j) const {
        for (const auto& e : adj[i])
            if (e.to == j) return true;
        return false;
    }
};

// Relative strictness threshold: a step counts only beyond tol*(1+|x_j-x_i|),
// so exact zeros in revealed-preference data never create edges.
inline double edge_threshold(const SampledMultiMap& M, const Vec& from, const Vec& to) {
    return M.tol * (1.0 + dist(to, from));
}

inline AscendingDigraph ascending_edges(const SampledMultiMap& M) {
    AscendingDigraph G;
    G.n = static_cast<int>(M.size());
    G.adj.resize(G.n);
    for (int i = 0; i < G.n; ++i) {
        const auto& gens = M.cones[i].generators;
        for (int j = 0; j < G.n; ++j) {
            if (i == j) continue;
            Vec step = sub(M.points[j], M.points[i]);
            double thr = M.tol * (1.0 + norm(step));
            for (std::size_t k = 0; k < gens.size(); ++k)
                if (dot(step, gens[k]) > thr) {
                    G.adj[i].push_back({j, static_cast<int>(k)});
                    break;
                }
        }
    }
    return G;
}

struct CqmVerdict {
    bool cqm = true;
    std::vector<int> cycle;      // closed: front == back, when !cqm
    std::vector<int> witnesses;  // generator index per cycle edge
};

namespace detail {

// Tarjan strongly-connected components, iterative.
inline std::vector<int> scc_components(const AscendingDigraph& G, int& ncomp) {
    const int n = G.n;
    std::vector<int> comp(n, -1), low(n), num(n, -1), stk;
    std::vector<char> onstk(n, 0);
    int counter = 0;
    ncomp = 0;
    struct Frame {
        int v;
        std::size_t ei;
    };
    std::vector<Frame> call;
    for (int s = 0; s < n; ++s) {
        if (num[s] != -1) continue;
        call.push_back({s, 0});
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei == 0) {
                num[v] = low[v] = counter++;
                stk.push_back(v);
                onstk[v] = 1;
            }
            if (ei < G.adj[v].size()) {
                int w = G.adj[v][ei++].to;
                if (num[w] == -1)
                    call.push_back({w, 0});
                else if (onstk[w])
                    low[v] = std::min(low[v], num[w]);
            } else {
                int done = v;
                if (low[done] == num[done]) {
                    for (;;) {
                        int w = stk.back();
                        stk.pop_back();
                        onstk[w] = 0;
                        comp[w] = ncomp;
                        if (w == done) break;
                    }
                    ++ncomp;
                }
                call.pop_back();
                if (!call.empty()) {
                    int parent = call.back().v;
                    low[parent] = std::min(low[parent], low[done]);
                }
            }
        }
    }
    return comp;
}

}  // namespace detail

// CQM iff the ascending digraph is acyclic; otherwise one directed cycle with
// per-edge witnesses certifying the ascending cycle.
inline CqmVerdict check_cqm(const AscendingDigraph& G) {
    int ncomp = 0;
    std::vector<int> comp = detail::scc_components(G, ncomp);
    std::vector<int> comp_size(ncomp, 0);
    for (int c : comp) ++comp_size[c];
    int bad = -1;
    for (int v = 0; v < G.n && bad == -1; ++v)
        if (comp_size[comp[v]] >= 2) bad = comp[v];
    CqmVerdict verdict;
    if (bad == -1) return verdict;
    verdict.cqm = false;
    // shortest cycle through the first vertex of the offending component
    int start = 0;
    while (comp[start] != bad) ++start;
    std::vector<int> prev(G.n, -1), prev_wit(G.n, -1);
    std::vector<int> queue{start};
    std::vector<char> seen(G.n, 0);
    seen[start] = 1;
    int closing_wit = -1;
    int tail = -1;
    for (std::size_t qi = 0; qi < queue.size() && tail == -1; ++qi) {
        int v = queue[qi];
        for (const auto& e : G.adj[v]) {
            if (comp[e.to] != bad) continue;
            if (e.to == start) {
                tail = v;
                closing_wit = e.witness;
                break;
            }
            if (!seen[e.to]) {
                seen[e.to] = 1;
                prev[e.to] = v;
                prev_wit[e.to] = e.witness;
                queue.push_back(e.to);
            }
        }
    }
    std::vector<int> path;
    std::vector<int> wits;
    for (int v = tail; v != -1; v = prev[v]) {
        path.push_back(v);
        if (prev[v] != -1) wits.push_back(prev_wit[v]);
    }
    std::reverse(path.begin(), path.end());
    std::reverse(wits.begin(), wits.end());
    path.push_back(start);  // closed cycle: start, ..., tail, start
    wits.push_back(closing_wit);
    verdict.cycle = path;
    verdict.witnesses = wits;
    return verdict;
}

struct CqmViolationError : std::runtime_error {
    CqmVerdict verdict;
    explicit CqmViolationError(CqmVerdict v)
        : std::runtime_error("ascending cycle found: the sample is not cyclically quasi-monotone"),
          verdict(std::move(v)) {}
};

// Reachability via at least one edge; transitive by construction. Rejects
// cyclic graphs (the relation would not be irreflexive).
inline BoolMatrix strict_preorder(const AscendingDigraph& G) {
    CqmVerdict v = check_cqm(G);
    if (!v.cqm) throw CqmViolationError(std::move(v));
    const int n = G.n;
    // reverse topological order by DFS
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> state(n, 0);
    std::vector<std::pair<int, std::size_t>> call;
    for (int s = 0; s < n; ++s) {
        if (state[s]) continue;
        call.emplace_back(s, 0);
        state[s] = 1;
        while (!call.empty()) {
            auto& [u, ei] = call.back();
            if (ei < G.adj[u].size()) {
                int w = G.adj[u][ei++].to;
                if (!state[w]) {
                    state[w] = 1;
                    call.emplace_back(w, 0);
                }
            } else {
                order.push_back(u);
                call.pop_back();
            }
        }
    }
    BoolMatrix reach(n);
    for (int u : order)  // successors are finished before u
        for (const auto& e : G.adj[u]) {
            reach.set(u, e.to);
            reach.or_row(u, e.to);
        }
    return reach;
}

struct PreorderPair {
    BoolMatrix strict;
    BoolMatrix large;
};

// One-point characterization: x_i <= x_j iff every sample point w seeing x_i
// strictly above it (some generator p_w with (x_i - w).p_w beyond tol, i.e.
// an edge w -> i) satisfies w < x_j.
inline PreorderPair large_preorder(const SampledMultiMap& M, const BoolMatrix& strict) {
    const int n = strict.size();
    AscendingDigraph G = ascending_edges(M);
    PreorderPair P;
    P.strict = strict;
    P.large = BoolMatrix(n);
    std::vector<std::vector<int>> preds(n);
    for (int w = 0; w < n; ++w)
        for (const auto& e : G.adj[w]) preds[e.to].push_back(w);
    for (int i = 0; i < n; ++i) {
        P.large.fill_row(i, true);
        for (int w : preds[i]) P.large.and_row_from(i, strict, w);
    }
    return P;
}

struct TotalityVerdict {
    bool total = true;
    int i = -1, j = -1;  // witness incomparable pair when !total
};

inline TotalityVerdict check_totality(const PreorderPair& P) {
    const int n = P.large.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!P.large.get(i, j) && !P.large.get(j, i)) return {false, i, j};
    return {};
}

}  // namespace qcm
