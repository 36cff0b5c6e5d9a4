// plaidtool: plaid model and arithmetic graph generation, rendering and verification.

#include "plaid/render.hpp"
#include "plaid/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace plaid;

namespace {

constexpr int kExitFail = 1, kExitInvalid = 2, kExitError = 3;

struct RunConfig {
    long p = 0, q = 0;
    std::string window;
    long block = 0;
    std::string out;
    bool svg = false;
    bool scaled_units = false;
    bool cells = false;
    unsigned jobs = 0;
    long qmax = 30;
    double pitch = 12;
    std::vector<std::string> layers;
    std::string suite;
};

std::string default_out() {
    const char* e = std::getenv("PLAIDTOOL_OUT");
    return e && *e ? e : ".";
}

Param param_of(const RunConfig& c) {
    if (c.p == 0 && c.q == 0) throw Error("OutOfRange", "--p and --q are required");
    return make_param(c.p, c.q);
}

std::vector<long> parse_ints(const std::string& s) {
    std::vector<long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stol(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error("OutOfRange", "bad integer list '" + s + "'");
        }
    }
    return v;
}

Region region_of(const RunConfig& c, const Param& pr) {
    if (!c.window.empty()) {
        auto v = parse_ints(c.window);
        if (v.size() != 4) throw Error("OutOfRange", "--window wants x0,x1,y0,y1");
        Region g{v[0], v[1], v[2], v[3]};
        if (g.empty()) throw Error("OutOfRange", "empty window");
        return g;
    }
    const long W = pr.omega * pr.omega;
    return {c.block * W, (c.block + 1) * W, 0, pr.omega};
}

long oracle_window(const RunConfig& c) {
    if (c.window.empty()) return 12;
    auto v = parse_ints(c.window);
    if (v.size() != 1 || v[0] < 0) throw Error("OutOfRange", "--window wants a single radius here");
    return v[0];
}

std::string stem(const std::string& what, const Param& pr) { return what + "_" + std::to_string(pr.p) + "_" + std::to_string(pr.q); }

fs::path out_file(const RunConfig& c, const std::string& name) {
    fs::path dir = c.out.empty() ? fs::path(default_out()) : fs::path(c.out);
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("IOError", "cannot write " + path.string());
    f(os);
    if (!os) throw Error("IOError", "write failed for " + path.string());
    std::cout << "wrote " << path.string() << "\n";
}

RenderSpec spec_of(const RunConfig& c, const Param& pr, std::set<Layer> fallback) {
    RenderSpec s;
    s.param = pr;
    s.region = region_of(c, pr);
    s.pitch = Rat(c.pitch);
    if (c.layers.empty())
        s.layers = std::move(fallback);
    else
        for (auto& l : c.layers) s.layers.insert(parse_layer(l));
    return s;
}

void write_cells(const RunConfig& c, const std::string& name, const std::vector<IntegerPolytope>& cells) {
    write_file(out_file(c, name), [&](std::ostream& os) {
        os << "# id scale dim nverts coords... label\n";
        for (auto& p : cells) {
            auto v = scaled_volume(p);
            os << "# volume " << p.id << " " << (c.scaled_units ? v.scaled_units : v.volume) << "\n";
        }
        write_table(os, cells);
    });
}

int cmd_plaid(const RunConfig& c) {
    Param pr = param_of(c);
    BlockModel M(pr);
    Region g = region_of(c, pr);
    write_file(out_file(c, stem("plaid", pr) + ".txt"), [&](std::ostream& os) { write_plaid_tiles(os, M, g); });
    if (c.svg) write_file(out_file(c, stem("plaid", pr) + ".svg"), [&](std::ostream& os) { render_svg(os, M, spec_of(c, pr, {Layer::Plaid})); });
    if (c.cells) {
        std::vector<IntegerPolytope> seeds;
        for (auto& s : seed_polytopes()) seeds.push_back(s.geom);
        write_cells(c, "plaid_seeds.txt", seeds);
        write_cells(c, "plaid_cells.txt", plaid_cell_table());
    }
    return 0;
}

int cmd_graph(const RunConfig& c) {
    Param pr = param_of(c);
    BlockModel M(pr);
    Region g = region_of(c, pr);
    write_file(out_file(c, stem("graph", pr) + ".txt"), [&](std::ostream& os) { write_graph_edges(os, M, g); });
    if (c.svg)
        write_file(out_file(c, stem("graph", pr) + ".svg"),
                   [&](std::ostream& os) { render_svg(os, M, spec_of(c, pr, {Layer::Graph, Layer::GridPoints})); });
    if (c.cells) write_cells(c, "graph_cells.txt", graph_cell_table());
    return 0;
}

int cmd_overlay(const RunConfig& c) {
    Param pr = param_of(c);
    BlockModel M(pr);
    write_file(out_file(c, stem("overlay", pr) + ".svg"), [&](std::ostream& os) { render_svg(os, M, spec_of(c, pr, {Layer::Plaid, Layer::Graph})); });
    return 0;
}

int cmd_prove(const RunConfig& c) {
    ProofReport pr;
    SuiteReport r = verify_crossings(c.jobs, &pr);
    write_file(out_file(c, "proof_report.txt"), [&](std::ostream& os) { write_report(os, pr); });
    if (c.cells) write_cells(c, "rtp_cells.txt", rtp_table(pr.entries));
    r.write(std::cout);
    return r.pass() ? 0 : kExitFail;
}

int cmd_oracle_diff(const RunConfig& c) {
    Param pr = param_of(c);
    long w = oracle_window(c);
    auto d = oracle_diff(pr, w);
    std::cout << "# oracle-diff p/q = " << pr.name() << " window " << w << "\n";
    std::cout << "edges " << d.edges << "\n";
    auto dump = [](const char* tag, const GraphEdgeSet& s) {
        for (auto& [a, b] : s) std::cout << tag << " " << edge_str(a) << " " << edge_str(b) << "\n";
    };
    dump("only-dynamic", d.only_dynamic);
    dump("only-pet", d.only_pet);
    bool same = d.only_dynamic.empty() && d.only_pet.empty();
    std::cout << "status " << (same ? "pass" : "FAIL") << "\n";
    return same ? 0 : kExitFail;
}

std::vector<Param> params_or(const RunConfig& c, std::vector<std::pair<long, long>> fallback) {
    if (c.p != 0 || c.q != 0) return {param_of(c)};
    return params_of(fallback);
}

int cmd_verify(const RunConfig& c) {
    const std::vector<std::pair<long, long>> qi = {{2, 9}, {3, 8}, {4, 5}, {5, 6}};
    std::vector<SuiteReport> rs;
    const std::string& s = c.suite;
    if (s == "partitions") {
        rs.push_back(verify_plaid_partition(c.scaled_units, c.jobs));
        rs.push_back(verify_graph_partition());
        rs.push_back(verify_rtp(c.jobs));
    } else if (s == "intertwining") {
        rs.push_back(verify_intertwining(c.qmax, c.jobs));
    } else if (s == "reconstruction") {
        rs.push_back(verify_reconstruction(params_or(c, {{2, 9}, {3, 8}, {4, 5}})));
    } else if (s == "crossings") {
        rs.push_back(verify_crossings(c.jobs));
    } else if (s == "pixellation") {
        rs.push_back(verify_pixellation(params_or(c, qi)));
    } else if (s == "quasi-iso") {
        rs.push_back(verify_quasi_iso(params_or(c, qi)));
    } else if (s == "oracle") {
        rs.push_back(verify_oracle(params_or(c, {{1, 2}, {1, 4}, {2, 9}, {3, 8}}), oracle_window(c), c.jobs));
    } else if (s == "grid-geometry") {
        rs.push_back(verify_grid_geometry());
    } else if (s == "comparator") {
        rs.push_back(verify_comparator(params_or(c, qi)));
    } else {
        throw Error("OutOfRange", "unknown suite " + s);
    }
    bool ok = true;
    for (auto& r : rs) {
        r.write(std::cout);
        ok = ok && r.pass();
    }
    return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plaid model and arithmetic graph toolkit for outer billiards on kites"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sc, bool pq, bool render) {
        if (pq) {
            sc->add_option("--p", cfg.p, "numerator of the kite parameter");
            sc->add_option("--q", cfg.q, "denominator of the kite parameter");
        }
        sc->add_option("--window", cfg.window, "x0,x1,y0,y1 region (render) or radius (oracle)");
        sc->add_option("--out", cfg.out, "output directory (default $PLAIDTOOL_OUT or .)");
        sc->add_flag("--paper-units", cfg.scaled_units, "report volumes in the scaled integer units");
        sc->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)");
        if (render) {
            sc->add_option("--block", cfg.block, "fundamental block index along x");
            sc->add_flag("--svg", cfg.svg, "also write an SVG rendering");
            sc->add_option("--pitch", cfg.pitch, "pixels per unit square")->check(CLI::PositiveNumber);
            sc->add_option("--layers", cfg.layers, "plaid graph grid-points catches labels")->delimiter(',');
            sc->add_flag("--cells", cfg.cells, "also write the classifying polytope table");
        }
    };

    auto* plaid = app.add_subcommand("plaid", "plaid tiles of a region");
    common(plaid, true, true);
    auto* graph = app.add_subcommand("graph", "arithmetic graph edges of a region");
    common(graph, true, true);
    auto* overlay = app.add_subcommand("overlay", "black plaid over grey graph SVG");
    common(overlay, true, true);
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify, true, false);
    verify->add_option("suite", cfg.suite, "partitions | intertwining | crossings | pixellation | quasi-iso | oracle | reconstruction | grid-geometry | comparator")
        ->required();
    verify->add_option("--qmax", cfg.qmax, "intertwining sweep bound (q < qmax)");
    auto* prove = app.add_subcommand("prove", "edge-crossing prover with report");
    common(prove, false, false);
    prove->add_flag("--cells", cfg.cells, "also write the reduced triple partition table");
    auto* odiff = app.add_subcommand("oracle-diff", "billiards orbit graph against the predicted graph");
    common(odiff, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*plaid) return cmd_plaid(cfg);
        if (*graph) return cmd_graph(cfg);
        if (*overlay) return cmd_overlay(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*prove) return cmd_prove(cfg);
        if (*odiff) return cmd_oracle_diff(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code == "NotCoprime" || e.code == "OddProduct" || e.code == "OutOfRange" || e.code == "ParseError") return kExitInvalid;
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
