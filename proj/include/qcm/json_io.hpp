#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcm/geometry.hpp"
#include "qcm/multimap.hpp"
#include "qcm/oned.hpp"
#include "qcm/order.hpp"
#include "qcm/potential.hpp"
#include "qcm/revealed.hpp"
#include "qcm/transport.hpp"
#include "qcm/vec.hpp"

namespace qcm {

using json = nlohmann::json;

inline json to_json(const SampledMultiMap& M) {
    json samples = json::array();
    for (std::size_t i = 0; i < M.size(); ++i) {
        json gens = json::array();
        for (const Vec& g : M.cones[i].generators) gens.push_back(g);
        samples.push_back({{"x", M.points[i]}, {"F", gens}});
    }
    return {{"dimension", M.dimension}, {"tol", M.tol}, {"samples", samples}};
}

inline SampledMultiMap multimap_from_json(const json& j) {
    if (!j.contains("dimension") || !j.contains("samples"))
        throw std::invalid_argument("multimap JSON: missing 'dimension' or 'samples'");
    double tol = j.value("tol", 1e-9);
    std::vector<Vec> points;
    std::vector<std::vector<Vec>> cones;
    for (const json& s : j.at("samples")) {
        points.push_back(s.at("x").get<Vec>());
        std::vector<Vec> gens;
        for (const json& g : s.value("F", json::array())) gens.push_back(g.get<Vec>());
        cones.push_back(std::move(gens));
    }
    SampledMultiMap M = build_sample(points, cones, tol);
    if (M.dimension != j.at("dimension").get<int>())
        throw std::invalid_argument("multimap JSON: dimension field mismatch");
    return M;
}

inline SampledMultiMap load_multimap(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return multimap_from_json(json::parse(in));
}

inline json to_json(const CqmVerdict& v) {
    if (v.cqm) return {{"verdict", "cqm"}};
    return {{"verdict", "violation"}, {"cycle", v.cycle}, {"witnesses", v.witnesses}};
}

inline json to_json(const HPolyhedron& H) {
    json hs = json::array();
    for (const HalfSpace& h : H.halfspaces) hs.push_back({{"a", h.normal}, {"b", h.offset}});
    return {{"d", H.dimension}, {"hs", hs}};
}

inline HPolyhedron polyhedron_from_json(const json& j) {
    HPolyhedron H;
    H.dimension = j.at("d").get<int>();
    for (const json& h : j.at("hs"))
        H.halfspaces.push_back({h.at("a").get<Vec>(), h.at("b").get<double>()});
    return H;
}

inline json to_json(const BoolMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        std::string row(m.size(), '0');
        for (int j = 0; j < m.size(); ++j)
            if (m.get(i, j)) row[j] = '1';
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const PreorderPair& P) {
    return {{"strict", to_json(P.strict)}, {"large", to_json(P.large)}};
}

inline json to_json(const PotentialTable& T) {
    json classes = json::array();
    for (std::size_t c = 0; c < T.classes.size(); ++c)
        classes.push_back({{"rank", c},
                           {"members", T.classes[c]},
                           {"region", to_json(T.region_of_class[c])}});
    return {{"classes", classes}, {"outside_value", T.outside_value}};
}

inline json to_json(const OneDReport& r) {
    json j;
    switch (r.kind) {
        case OneDReport::Case::CompactInterval: j["case"] = "compact_interval"; break;
        case OneDReport::Case::HalfLineOrEmpty: j["case"] = "half_line_or_empty"; break;
        case OneDReport::Case::IdenticallyZero: j["case"] = "identically_zero"; break;
    }
    if (std::isfinite(r.alpha)) j["alpha"] = r.alpha;
    if (std::isfinite(r.beta)) j["beta"] = r.beta;
    j["potential"] = r.descriptor();
    return j;
}

inline json to_json(const GarpResult& g) {
    json j;
    j["verdict"] = g.consistent ? "consistent" : "violation";
    if (!g.consistent) j["cycle"] = g.cycle;
    return j;
}

inline std::vector<SupportPair> pairs_from_json(const json& j) {
    std::vector<SupportPair> pairs;
    for (const json& p : j.at("pairs"))
        pairs.push_back({p.at("x").get<Vec>(), p.at("y").get<Vec>()});
    return pairs;
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qcm
