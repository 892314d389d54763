#pragma once

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcm/geometry.hpp"
#include "qcm/multimap.hpp"
#include "qcm/order.hpp"
#include "qcm/potential.hpp"
#include "qcm/vec.hpp"

namespace qcm {

struct Observation {
    Vec bundle;
    Vec price;
};

struct CsvError : std::runtime_error {
    int line;
    CsvError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(row);
    while (std::getline(ss, cell, ',')) {
        std::size_t a = cell.find_first_not_of(" \t\r");
        std::size_t b = cell.find_last_not_of(" \t\r");
        cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    if (!row.empty() && row.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace detail

struct IngestResult {
    std::vector<Observation> observations;
    std::vector<std::string> warnings;
};

// CSV with header "x1,...,xd,p1,...,pd"; d is inferred from the header.
inline IngestResult ingest_csv(std::istream& in) {
    IngestResult result;
    std::string row;
    if (!std::getline(in, row)) throw CsvError(1, "missing header");
    std::vector<std::string> header = detail::split_csv_row(row);
    const std::size_t cols = header.size();
    if (cols < 2 || cols % 2 != 0) throw CsvError(1, "header must be x1,...,xd,p1,...,pd");
    const std::size_t d = cols / 2;
    for (std::size_t k = 0; k < d; ++k) {
        if (header[k] != "x" + std::to_string(k + 1) ||
            header[d + k] != "p" + std::to_string(k + 1))
            throw CsvError(1, "header must be x1,...,xd,p1,...,pd");
    }
    int lineno = 1;
    while (std::getline(in, row)) {
        ++lineno;
        if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> cells = detail::split_csv_row(row);
        if (cells.size() != cols)
            throw CsvError(lineno, "expected " + std::to_string(cols) + " cells, got " +
                                       std::to_string(cells.size()));
        Observation obs;
        obs.bundle.resize(d);
        obs.price.resize(d);
        for (std::size_t k = 0; k < cols; ++k) {
            double value;
            try {
                std::size_t used = 0;
                value = std::stod(cells[k], &used);
                if (used != cells[k].size()) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                throw CsvError(lineno, "non-numeric cell '" + cells[k] + "'");
            }
            if (k < d)
                obs.bundle[k] = value;
            else
                obs.price[k - d] = value;
        }
        if (norm(obs.price) == 0.0) throw CsvError(lineno, "zero price vector");
        result.observations.push_back(std::move(obs));
    }
    if (result.observations.empty()) result.warnings.push_back("empty data section");
    return result;
}

struct GarpResult {
    bool consistent = true;
    std::vector<int> cycle;  // observation indices, closed (front == back)
    SampledMultiMap map;
    std::vector<int> sample_of_obs;  // merged sample index per observation
};

// GARP as cyclic quasi-monotonicity of F(x_i) = -p_i on the bundles.
inline GarpResult garp_check(const std::vector<Observation>& obs, double tol = 1e-9) {
    if (obs.empty()) throw std::invalid_argument("garp_check: no observations");
    std::vector<Vec> points;
    std::vector<std::vector<Vec>> cones;
    for (const Observation& o : obs) {
        points.push_back(o.bundle);
        cones.push_back({scale(o.price, -1.0)});
    }
    GarpResult result;
    result.map = build_sample(points, cones, tol);
    result.sample_of_obs.resize(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        int slot = -1;
        for (std::size_t k = 0; k < result.map.size(); ++k)
            if (dist(result.map.points[k], obs[i].bundle) <= tol) {
                slot = static_cast<int>(k);
                break;
            }
        result.sample_of_obs[i] = slot;
    }
    CqmVerdict v = check_cqm(ascending_edges(result.map));
    result.consistent = v.cqm;
    if (!v.cqm) {
        // report cycles in observation indices: first observation per sample
        for (int s : v.cycle) {
            for (std::size_t i = 0; i < obs.size(); ++i)
                if (result.sample_of_obs[i] == s) {
                    result.cycle.push_back(static_cast<int>(i));
                    break;
                }
        }
    }
    return result;
}

struct RationalizeResult {
    std::vector<double> utility;  // one per observation, u = -rank
    GarpResult garp;
};

// Full pipeline on the induced multi-map; u_i = -rank(class of i). An edge
// i -> j means x_j was strictly affordable when x_i was chosen, so x_i is
// revealed preferred: strict(i, j) implies u_i > u_j.
inline RationalizeResult rationalize(const std::vector<Observation>& obs, double tol = 1e-9) {
    RationalizeResult result;
    result.garp = garp_check(obs, tol);
    if (!result.garp.consistent)
        throw CqmViolationError(CqmVerdict{false, result.garp.cycle, {}});
    const SampledMultiMap& M = result.garp.map;
    AscendingDigraph G = ascending_edges(M);
    BoolMatrix strict = strict_preorder(G);
    PreorderPair P = large_preorder(M, strict);
    TotalityVerdict t = check_totality(P);
    if (!t.total) throw NotTotalError(t.i, t.j);
    std::vector<HPolyhedron> regions;
    for (std::size_t i = 0; i < M.size(); ++i)
        regions.push_back(level_polyhedron(M, strict, static_cast<int>(i)));
    PotentialTable T = rank_potential(M, P, regions);
    result.utility.resize(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        result.utility[i] = -static_cast<double>(T.rank_of_sample(result.garp.sample_of_obs[i]));
    return result;
}

}  // namespace qcm
