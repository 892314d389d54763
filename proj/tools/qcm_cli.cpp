#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcm/fixtures.hpp"
#include "qcm/geometry.hpp"
#include "qcm/json_io.hpp"
#include "qcm/multimap.hpp"
#include "qcm/oned.hpp"
#include "qcm/order.hpp"
#include "qcm/potential.hpp"
#include "qcm/revealed.hpp"
#include "qcm/svg.hpp"
#include "qcm/transport.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;
constexpr int kExitNotTotal = 4;

struct Options {
    std::string input;
    std::string output;
    std::string fixture;
    double tol = 1e-9;
    int grid = 41;
    int maxlen = 4;
    std::vector<double> view = {-3, -3, 3, 3};
};

void emit(const Options& opt, const qcm::json& j) {
    if (opt.output.empty())
        std::cout << j.dump(2) << "\n";
    else
        qcm::write_json(opt.output, j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

qcm::SampledMultiMap load_input(const Options& opt) {
    if (!opt.fixture.empty())
        return qcm::fixtures::sample_field(opt.fixture, qcm::fixtures::make_grid(opt.grid),
                                           opt.tol);
    if (opt.input.empty()) throw std::runtime_error("--input or --fixture required");
    return qcm::load_multimap(opt.input);
}

int cmd_check(const Options& opt) {
    qcm::SampledMultiMap M = load_input(opt);
    qcm::CqmVerdict v = qcm::check_cqm(qcm::ascending_edges(M));
    emit(opt, qcm::to_json(v));
    return v.cqm ? kExitOk : kExitViolation;
}

int cmd_order(const Options& opt) {
    qcm::SampledMultiMap M = load_input(opt);
    qcm::AscendingDigraph G = qcm::ascending_edges(M);
    qcm::BoolMatrix strict = qcm::strict_preorder(G);
    qcm::PreorderPair P = qcm::large_preorder(M, strict);
    qcm::json j = qcm::to_json(P);
    qcm::TotalityVerdict t = qcm::check_totality(P);
    j["total"] = t.total;
    if (!t.total) j["incomparable"] = {t.i, t.j};
    emit(opt, j);
    return kExitOk;
}

int cmd_levels(const Options& opt) {
    qcm::SampledMultiMap M = load_input(opt);
    qcm::BoolMatrix strict = qcm::strict_preorder(qcm::ascending_edges(M));
    qcm::json levels = qcm::json::array();
    for (std::size_t i = 0; i < M.size(); ++i) {
        qcm::HPolyhedron H = qcm::level_polyhedron(M, strict, static_cast<int>(i));
        levels.push_back({{"x", M.points[i]}, {"region", qcm::to_json(H)}});
    }
    emit(opt, qcm::json{{"levels", levels}});
    return kExitOk;
}

int cmd_potential(const Options& opt) {
    qcm::SampledMultiMap M = load_input(opt);
    qcm::BoolMatrix strict = qcm::strict_preorder(qcm::ascending_edges(M));
    qcm::PreorderPair P = qcm::large_preorder(M, strict);
    std::vector<qcm::HPolyhedron> regions;
    for (std::size_t i = 0; i < M.size(); ++i)
        regions.push_back(qcm::level_polyhedron(M, strict, static_cast<int>(i)));
    qcm::PotentialTable T = qcm::rank_potential(M, P, regions);
    emit(opt, qcm::to_json(T));
    if (M.dimension == 2 && !opt.output.empty()) {
        write_text(opt.output + ".svg",
                   qcm::render_regions(T.region_of_class, opt.view[0], opt.view[1], opt.view[2],
                                       opt.view[3]));
    }
    return kExitOk;
}

int cmd_oned(const Options& opt) {
    qcm::SampledMultiMap M = load_input(opt);
    qcm::OneDReport r = qcm::solve_1d(M);
    emit(opt, qcm::to_json(r));
    std::cout << r.descriptor() << "\n";
    return kExitOk;
}

int cmd_rp(const Options& opt) {
    if (opt.input.empty()) throw std::runtime_error("--input required");
    std::ifstream in(opt.input);
    if (!in) throw std::runtime_error("cannot open " + opt.input);
    qcm::IngestResult data = qcm::ingest_csv(in);
    for (const std::string& w : data.warnings) std::cerr << "warning: " << w << "\n";
    if (data.observations.empty()) {
        emit(opt, qcm::json{{"verdict", "empty"}});
        return kExitOk;
    }
    qcm::GarpResult g = qcm::garp_check(data.observations, opt.tol);
    qcm::json j = qcm::to_json(g);
    if (g.consistent) {
        qcm::RationalizeResult r = qcm::rationalize(data.observations, opt.tol);
        j["utility"] = r.utility;
    }
    emit(opt, j);
    return g.consistent ? kExitOk : kExitViolation;
}

int cmd_linf(const Options& opt) {
    if (opt.input.empty()) throw std::runtime_error("--input required");
    std::ifstream in(opt.input);
    if (!in) throw std::runtime_error("cannot open " + opt.input);
    std::vector<qcm::SupportPair> pairs = qcm::pairs_from_json(qcm::json::parse(in));
    qcm::CinftyVerdict v = qcm::cinfty_check(pairs, opt.maxlen, opt.tol);
    qcm::json j;
    j["verdict"] = v.passes ? "passes" : "violation";
    if (!v.passes) j["cycle"] = v.cycle;
    emit(opt, j);
    return v.passes ? kExitOk : kExitViolation;
}

int cmd_fixtures(const Options& opt) {
    qcm::json j = qcm::json::array();
    for (const std::string& name : qcm::fixtures::names()) j.push_back(name);
    emit(opt, j);
    return kExitOk;
}

int cmd_render(const Options& opt) {
    if (opt.fixture.empty()) throw std::runtime_error("--fixture required");
    qcm::SampledMultiMap M =
        qcm::fixtures::sample_field(opt.fixture, qcm::fixtures::make_grid(opt.grid), opt.tol);
    std::string svg =
        qcm::render_quiver(M, opt.view[0], opt.view[1], opt.view[2], opt.view[3]);
    if (opt.output.empty())
        std::cout << svg;
    else
        write_text(opt.output, svg);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclic quasi-monotonicity toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "input file");
        sub->add_option("--output", opt.output, "output file (stdout if absent)");
        sub->add_option("--tol", opt.tol, "strictness tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--fixture", opt.fixture, "sample a named fixture instead of --input");
        sub->add_option("--grid", opt.grid, "fixture grid resolution");
        sub->add_option("--view", opt.view, "view box x0,y0,x1,y1")->expected(4)->delimiter(',');
        sub->add_option("--maxlen", opt.maxlen, "cycle length cap (linf)");
    };

    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const Options&);
    };
    const Cmd cmds[] = {
        {"check", "decide cyclic quasi-monotonicity", cmd_check},
        {"order", "strict/large pre-order matrices", cmd_order},
        {"levels", "per-point level polyhedra", cmd_levels},
        {"potential", "rank potential table (+ SVG in d=2)", cmd_potential},
        {"oned", "exact 1-D solver", cmd_oned},
        {"rp", "revealed-preference GARP audit", cmd_rp},
        {"linf", "c-infinity cyclical monotonicity check", cmd_linf},
        {"fixtures", "list fixture fields", cmd_fixtures},
        {"render", "SVG quiver of a fixture field", cmd_render},
    };
    for (const Cmd& c : cmds) add_common(app.add_subcommand(c.name, c.help));

    CLI11_PARSE(app, argc, argv);

    try {
        for (const Cmd& c : cmds)
            if (app.get_subcommand(c.name)->parsed()) return c.fn(opt);
    } catch (const qcm::NotTotalError& e) {
        std::cerr << "error: " << e.what() << " (" << e.i << ", " << e.j << ")\n";
        return kExitNotTotal;
    } catch (const qcm::CqmViolationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
