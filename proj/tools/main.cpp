#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stablab/abelian.hpp"
#include "stablab/nn2.hpp"
#include "stablab/period_counts.hpp"
#include "stablab/realizer.hpp"
#include "stablab/report.hpp"
#include "stablab/semilinear.hpp"
#include "stablab/tileset_graph.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAbsent = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct Output {
    bool json = false;
    bool timing = false;
    stablab::RunReport report;
    std::ostringstream text;

    void emit(int /*code*/) const {
        if (json)
            std::cout << report.to_json(timing) << '\n';
        else
            std::cout << text.str();
    }
};

nlohmann::ordered_json lattice_json(const stablab::StabilizerLattice& l) {
    return nlohmann::ordered_json::array({{l.a, 0}, {l.c, l.d}});
}

nlohmann::ordered_json witness_json(const stablab::TorusConfig& cfg, const stablab::Nn2Sft& sft) {
    return nlohmann::ordered_json::parse(cfg.to_json(sft));
}

std::pair<std::int64_t, std::int64_t> parse_vector_arg(const std::string& s) {
    std::istringstream in(s);
    std::int64_t p = 0, q = 0;
    char comma = 0;
    if (!(in >> p >> comma >> q) || comma != ',' || (in >> std::ws, !in.eof()))
        throw CLI::ValidationError("vector", "expected 'p,q'");
    return {p, q};
}

int cmd_analyze(Output& out, const std::string& path, std::uint64_t bound,
                const std::string& dot_path) {
    const std::string text = read_file(path);
    out.report.command = "analyze " + path;
    out.report.input_digest = stablab::fnv1a_hex(text);
    auto g = stablab::TilesetGraph::parse(text).prune_essential();
    if (!dot_path.empty()) write_file(dot_path, g.to_dot());
    if (g.empty()) {
        out.report.results["multiples"] = "EMPTY";
        out.text << "EMPTY\n";
        return kExitOk;
    }
    try {
        auto m = bound ? stablab::multiples(g, bound) : stablab::multiples(g);
        out.report.results["multiples"] = m.to_string();
        out.report.results["aperiodic_point"] = stablab::has_aperiodic_point(g);
        out.report.results["essential_vertices"] = g.vertex_count();
        out.report.results["structural_bound"] = stablab::multiples_structural_bound(g);
        out.text << "M = " << m.to_string() << '\n'
                 << "aperiodic point: "
                 << (stablab::has_aperiodic_point(g) ? "yes" : "no") << '\n';
        return kExitOk;
    } catch (const stablab::BoundTooSmallError& e) {
        out.report.results["error"] = e.what();
        out.text << "unknown at bound: " << e.what() << '\n';
        return kExitUnknown;
    }
}

int cmd_realize(Output& out, const std::string& expr, const std::string& out_path,
                const std::string& dot_path, bool verify, std::uint64_t bound) {
    out.report.command = "realize " + expr;
    out.report.input_digest = stablab::fnv1a_hex(expr);
    auto target = stablab::SemilinearSet::parse(expr);
    out.report.results["target"] = target.to_string();
    stablab::TilesetGraph g;
    try {
        g = stablab::realize(target);
    } catch (const stablab::NotRealizableError& e) {
        out.report.results["realizable"] = false;
        out.report.results["reason"] = e.what();
        out.text << "not realizable: " << e.what() << '\n';
        return kExitAbsent;
    }
    out.report.results["realizable"] = true;
    out.report.results["vertices"] = g.vertex_count();
    out.text << "realized " << target.to_string() << " with " << g.vertex_count()
             << " letters\n";
    if (!out_path.empty()) write_file(out_path, g.to_text());
    if (!dot_path.empty()) write_file(dot_path, g.to_dot());
    if (verify) {
        auto m = bound ? stablab::multiples(g, bound) : stablab::multiples(g);
        const bool ok = stablab::equal_sl(m, target);
        out.report.results["verified"] = ok;
        out.report.results["multiples"] = m.to_string();
        out.text << "M = " << m.to_string() << '\n'
                 << "verified: " << (ok ? "yes" : "no") << '\n';
        if (!ok) return kExitUnknown;
    }
    return kExitOk;
}

int cmd_probe(Output& out, const std::string& path, std::uint64_t bound) {
    const std::string text = read_file(path);
    out.report.command = "probe " + path;
    out.report.input_digest = stablab::fnv1a_hex(text);
    auto sft = stablab::Nn2Sft::parse(text);
    auto rep = stablab::aperiodicity_probe(sft, bound);
    out.report.results["bound"] = bound;
    using Kind = stablab::ProbeReport::Kind;
    switch (rep.kind) {
        case Kind::EmptyWithinBound:
            out.report.results["kind"] = "empty-within-bound";
            out.text << "empty within bound " << bound << '\n';
            return kExitAbsent;
        case Kind::Unknown:
            out.report.results["kind"] = "unknown";
            out.text << "unknown at bound " << bound << '\n';
            return kExitUnknown;
        case Kind::PeriodicPointFound:
        case Kind::VectorStabilizedFound: {
            const bool periodic = rep.kind == Kind::PeriodicPointFound;
            out.report.results["kind"] =
                periodic ? "periodic-point" : "vector-stabilized";
            if (rep.vector) {
                out.report.results["vector"] =
                    nlohmann::ordered_json::array({rep.vector->p, rep.vector->q});
            }
            auto lat = stablab::stabilizer_lattice(*rep.witness);
            out.report.results["witness"] = witness_json(*rep.witness, sft);
            out.report.results["stabilizer"] = lattice_json(lat);
            // With a single witness the kernel estimate is its stabilizer.
            out.report.results["ker"] = lattice_json(lat);
            out.text << (periodic ? "periodic point found" : "stabilized vector found");
            if (rep.vector) out.text << " v=(" << rep.vector->p << ',' << rep.vector->q << ')';
            out.text << '\n' << rep.witness->to_json(sft) << '\n';
            return kExitOk;
        }
    }
    return kExitUnknown;
}

int cmd_periodize(Output& out, const std::string& path, const std::string& vec,
                  const std::string& out_path) {
    const std::string text = read_file(path);
    out.report.command = "periodize " + path + " --vector " + vec;
    out.report.input_digest = stablab::fnv1a_hex(text);
    auto sft = stablab::Nn2Sft::parse(text);
    auto [p, q] = parse_vector_arg(vec);
    auto cfg = stablab::periodize(sft, stablab::PeriodVector{p, q});
    if (!cfg) {
        out.report.results["witness"] = nullptr;
        out.text << "absent: no configuration is stabilized by (" << p << ',' << q << ")\n";
        return kExitAbsent;
    }
    out.report.results["witness"] = witness_json(*cfg, sft);
    out.report.results["stabilizer"] = lattice_json(stablab::stabilizer_lattice(*cfg));
    out.text << cfg->to_json(sft) << '\n';
    if (!out_path.empty()) write_file(out_path, cfg->to_json(sft) + "\n");
    return kExitOk;
}

int cmd_search(Output& out, const std::string& path, const std::string& torus,
               const std::string& out_path) {
    const std::string text = read_file(path);
    out.report.command = "search " + path + " --torus " + torus;
    out.report.input_digest = stablab::fnv1a_hex(text);
    auto sft = stablab::Nn2Sft::parse(text);
    auto [p, q] = parse_vector_arg(torus);
    if (p < 1 || q < 1) throw CLI::ValidationError("torus", "dimensions must be positive");
    auto cfg = stablab::search_torus(sft, p, q);
    if (!cfg) {
        out.report.results["witness"] = nullptr;
        out.text << "absent: no valid " << p << "x" << q << " torus\n";
        return kExitAbsent;
    }
    out.report.results["witness"] = witness_json(*cfg, sft);
    out.text << cfg->to_json(sft) << '\n';
    if (!out_path.empty()) write_file(out_path, cfg->to_json(sft) + "\n");
    return kExitOk;
}

int cmd_construct(Output& out, const std::string& op, const std::string& in_path,
                  const std::string& group, int dim, const std::string& lattice,
                  const std::string& out_path) {
    const std::string text = read_file(in_path);
    out.report.command = "construct " + op + " --in " + in_path;
    out.report.input_digest = stablab::fnv1a_hex(text);
    auto x = stablab::AbelianNnSft::parse(text);
    stablab::AbelianNnSft y;
    try {
        if (op == "free-ext") {
            if (dim <= 0) throw CLI::ValidationError("--dim", "free-ext needs a target rank");
            y = stablab::free_extension(x, dim);
        } else if (op == "pull-back" || op == "push-forward") {
            if (group.empty())
                throw CLI::ValidationError("--group", op + " needs a quotient expression");
            auto ge = stablab::parse_group(group);
            auto qm = stablab::quotient_map(ge.group, ge.quotient_gens);
            y = op == "pull-back" ? stablab::pull_back(x, qm) : stablab::push_forward(x, qm);
        } else if (op == "higher-power") {
            if (lattice.empty())
                throw CLI::ValidationError("--lattice", "higher-power needs lattice generators");
            auto ge = stablab::parse_group(x.group.to_string() + "/<" + lattice + ">");
            auto lat = stablab::make_subgroup(x.group, ge.quotient_gens);
            y = stablab::higher_power(x, lat, stablab::coset_transversal(lat));
        } else {
            throw CLI::ValidationError("operation", "unknown construction '" + op + "'");
        }
    } catch (const std::invalid_argument& e) {
        out.report.results["error"] = e.what();
        out.text << "rejected: " << e.what() << '\n';
        return kExitAbsent;
    }
    out.report.results["group"] = y.group.to_string();
    out.report.results["letters"] = y.alphabet.size();
    out.report.results["patterns"] = y.forbidden.size();
    if (!out_path.empty()) {
        write_file(out_path, y.to_text());
        out.text << "wrote " << out_path << '\n';
    } else {
        out.text << y.to_text();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* threads = std::getenv("STABLAB_THREADS")) {
        int n = std::atoi(threads);
        if (n > 0) omp_set_num_threads(n);
    }
#endif

    CLI::App app{"nearest-neighbor subshift analysis over Z, Z^2 and f.g. abelian groups"};
    app.require_subcommand(1);

    Output out;
    std::uint64_t seed = 0;
    app.add_flag("--json", out.json, "emit the machine-readable run report");
    app.add_flag("--timing", out.timing, "include timing in the JSON report");
    app.add_option("--seed", seed, "seed echoed into reports (corpus tooling)");

    std::string path, dot_path, out_path, expr, vec, group, lattice, op;
    std::uint64_t bound = 0;
    std::uint64_t probe_bound = 3;
    bool verify = false;
    int dim = 0;

    auto* analyze = app.add_subcommand("analyze", "multiples set of a tileset graph");
    analyze->add_option("graph", path, "tileset graph file")->required();
    analyze->add_option("--bound", bound, "certification bound (0 = structural)");
    analyze->add_option("--dot", dot_path, "write the essential graph as DOT");

    auto* realize = app.add_subcommand("realize", "construct a graph with a given multiples set");
    realize->add_option("set", expr, "target set, e.g. \"{2,3} + 4(N+1)\"")->required();
    realize->add_option("--out", out_path, "write the tileset graph here");
    realize->add_option("--dot", dot_path, "write DOT here");
    realize->add_flag("--verify", verify, "re-compute the multiples set and compare");
    realize->add_option("--bound", bound, "verification bound (0 = structural)");

    auto* probe = app.add_subcommand("probe", "bounded aperiodicity scan of a 2-D sft");
    probe->add_option("sft", path, "2-D sft file")->required();
    probe->add_option("--bound", probe_bound, "search bound");

    auto* periodize = app.add_subcommand("periodize", "doubly periodic point from a stabilized vector");
    periodize->add_option("sft", path, "2-D sft file")->required();
    periodize->add_option("--vector", vec, "period vector p,q")->required();
    periodize->add_option("--out", out_path, "write the witness JSON here");

    auto* search = app.add_subcommand("search", "exhaustive torus search");
    search->add_option("sft", path, "2-D sft file")->required();
    search->add_option("--torus", vec, "torus dimensions p,q")->required();
    search->add_option("--out", out_path, "write the witness JSON here");

    auto* construct = app.add_subcommand("construct", "group-level sft constructions");
    construct->add_option("operation", op, "free-ext | higher-power | pull-back | push-forward")
        ->required();
    construct->add_option("--in", path, "input sft file")->required();
    construct->add_option("--group", group, "quotient expression, e.g. \"Z^2/<(0,2)>\"");
    construct->add_option("--dim", dim, "target rank for free-ext");
    construct->add_option("--lattice", lattice, "lattice generators for higher-power");
    construct->add_option("--out", out_path, "write the resulting sft here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const auto started = std::chrono::steady_clock::now();
        int code = kExitUsage;
        if (*analyze)
            code = cmd_analyze(out, path, bound, dot_path);
        else if (*realize)
            code = cmd_realize(out, expr, out_path, dot_path, verify, bound);
        else if (*probe)
            code = cmd_probe(out, path, probe_bound);
        else if (*periodize)
            code = cmd_periodize(out, path, vec, out_path);
        else if (*search)
            code = cmd_search(out, path, vec, out_path);
        else if (*construct)
            code = cmd_construct(out, op, path, group, dim, lattice, out_path);
        out.report.results["seed"] = seed;
        out.report.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                .count();
        out.emit(code);
        return code;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const stablab::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
