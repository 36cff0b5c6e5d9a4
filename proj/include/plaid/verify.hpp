#ifndef PLAID_VERIFY_HPP
#define PLAID_VERIFY_HPP

#include "audit.hpp"
#include "billiards.hpp"
#include "grid_geometry.hpp"
#include "intertwiner.hpp"
#include "quasi_iso.hpp"

#include <ostream>
#include <random>
#include <sstream>

namespace plaid {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Named pass/fail checks plus free-form `key value` lines.
struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    std::vector<std::string> lines;

    bool pass() const {
        if (checks.empty()) return false;
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void check(std::string name, bool ok, std::string detail = "") { checks.push_back({std::move(name), ok, std::move(detail)}); }
    template <class T>
    void line(const std::string& key, const T& v) {
        std::ostringstream ss;
        ss << key << " " << v;
        lines.push_back(ss.str());
    }
    std::string failures() const {
        std::string s;
        for (auto& c : checks)
            if (!c.pass) s += (s.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
        return s;
    }
    void write(std::ostream& os) const {
        os << "# suite " << suite << "\n";
        for (auto& l : lines) os << l << "\n";
        for (auto& c : checks) os << "check " << c.name << " " << (c.pass ? "pass" : "FAIL") << (c.detail.empty() ? "" : " " + c.detail) << "\n";
        os << "status " << (pass() ? "pass" : "FAIL") << "\n";
    }
};

inline std::string count_str(long have, long want) { return std::to_string(have) + "/" + std::to_string(want); }

// ---------------------------------------------------------------------------
// Partitions.

inline SuiteReport verify_plaid_partition(bool scaled_units = false, unsigned jobs = 0) {
    SuiteReport r;
    r.suite = "plaid-partition";
    auto a = audit_plaid_partition(3, 5, 3, jobs);
    r.line("cells", a.cells);
    r.line("translate_pairs", a.pairs_checked);
    r.line("volume", a.volume);
    if (scaled_units) r.line("volume_scaled_units", a.scaled_units);
    r.line("max_extent", a.max_extent);
    for (auto& n : a.notes) r.line("note", n);
    r.check("count", a.cells == 26, count_str(a.cells, 26));
    r.check("clean-N3", a.unclean == 0, std::to_string(a.unclean) + " unclean");
    r.check("disjoint", a.overlapping == 0, std::to_string(a.overlapping) + " overlapping");
    r.check("separated-N5", a.unseparated == 0, std::to_string(a.unseparated) + " without a functional");
    r.check("window-covers-extent", a.max_extent < 2 * 3, "extent " + std::to_string(a.max_extent));
    r.check("volume", a.volume == 8, a.volume.get_str());
    return r;
}

inline SuiteReport verify_graph_partition() {
    SuiteReport r;
    r.suite = "graph-partition";
    auto g = audit_graph_partition();
    for (auto* f : {&g.plus, &g.minus}) {
        r.line(f->name + "_cells", f->cells);
        r.line(f->name + "_volume", f->volume);
        r.line(f->name + "_translate_pairs", f->pairs_checked);
        r.check(f->name + "-count", f->cells == 14, count_str(f->cells, 14));
        r.check(f->name + "-volume", f->volume == Rat(7, 3), f->volume.get_str());
        r.check(f->name + "-disjoint", f->overlapping == 0 && f->unseparated == 0,
                std::to_string(f->overlapping) + " overlapping, " + std::to_string(f->unseparated) + " unseparated");
    }
    r.check("minus-are-images", g.minus_are_images);
    r.check("no-plus-(1,-1)", g.no_plus_one_minus_one);
    return r;
}

inline SuiteReport verify_rtp(unsigned jobs = 0) {
    SuiteReport r;
    r.suite = "rtp";
    auto a = audit_rtp(jobs);
    r.line("cells", a.cells);
    r.line("volume", a.volume);
    r.line("pairs_checked", a.pairs_checked);
    for (auto& n : a.notes) r.line("note", n);
    r.check("count", a.cells == 218, count_str(a.cells, 218));
    r.check("integral-x60", a.non_integral == 0, std::to_string(a.non_integral) + " off grid");
    r.check("in-parents", a.not_in_parents == 0, std::to_string(a.not_in_parents) + " escape");
    r.check("disjoint", a.overlapping == 0, std::to_string(a.overlapping) + " overlapping");
    r.check("volume", a.volume == 8, a.volume.get_str());
    return r;
}

// ---------------------------------------------------------------------------
// Intertwining and reconstruction.

inline SuiteReport verify_intertwining(long qmax = 30, unsigned jobs = 0) {
    SuiteReport r;
    r.suite = "intertwining";
    auto ps = even_params_below(qmax);
    std::vector<IntertwiningReport> reps(ps.size());
    parallel_for(ps.size(), jobs, [&](std::size_t i) { reps[i] = intertwining_check(ps[i]); });
    long pts = 0, bad = 0;
    std::string first;
    for (auto& x : reps) {
        pts += x.points;
        if (!x.ok()) {
            ++bad;
            if (first.empty()) first = x.param;
        }
    }
    r.line("parameters", ps.size());
    r.line("points", pts);
    r.line("violating_parameters", bad);
    r.check("sweep-q<" + std::to_string(qmax), bad == 0 && !ps.empty(), bad ? "first at " + first : std::to_string(ps.size()) + " parameters");
    return r;
}

/// frac(T(0,0)) = (1/(2q), (q-p)/(2q(q+p))).
inline bool origin_closed_form(const Param& pr) {
    RVec z = canonical_T(pr).T(0, 0);
    return frac(z[0]) == make_rat(1, 2 * pr.q) && frac(z[1]) == make_rat(pr.q - pr.p, 2 * pr.q * pr.omega);
}

inline SuiteReport verify_reconstruction(const std::vector<Param>& ps) {
    SuiteReport r;
    r.suite = "reconstruction";
    for (auto& pr : ps) {
        auto x = intertwining_check(pr);
        r.line(pr.name() + "_points", x.points);
        r.check(pr.name() + "-graph", x.points > 0 && x.graph_recon_fail == 0, std::to_string(x.graph_recon_fail) + " failures");
        r.check(pr.name() + "-plaid", x.points > 0 && x.plaid_recon_fail == 0, std::to_string(x.plaid_recon_fail) + " failures");
        r.check(pr.name() + "-origin", origin_closed_form(pr));
    }
    return r;
}

// ---------------------------------------------------------------------------
// The crossing prover.

inline SuiteReport verify_crossings(unsigned jobs = 0, ProofReport* keep = nullptr) {
    SuiteReport r;
    r.suite = "crossings";
    ProofReport pr = prove_all(jobs);
    CatchReport cr = recalcitrant_analysis(pr);
    NamedCells nc = named_cells(pr, cr);
    r.line("problems", pr.problems.size());
    r.line("solved", pr.solved());
    r.line("recalcitrant", pr.recalcitrant());
    for (auto& [m, n] : pr.by_method()) r.line("method " + m, n);
    std::ostringstream cc;
    for (int k = 1; k <= 4; ++k) cc << (k > 1 ? "/" : "") << cr.case_counts[k];
    std::ostringstream tc;
    for (int k = 1; k <= 4; ++k) tc << (k > 1 ? "/" : "") << cr.turned_counts[k];
    r.line("case_counts", cc.str());
    r.line("turned_case_counts", tc.str());
    r.line("unclassified", cr.case_counts[0] + cr.turned_counts[0]);
    r.check("problems", pr.problems.size() == 462, count_str(static_cast<long>(pr.problems.size()), 462));
    r.check("solved>=416", pr.solved() >= 416, std::to_string(pr.solved()));
    r.check("recalcitrant", pr.recalcitrant() == 46, count_str(pr.recalcitrant(), 46));
    r.check("case-counts", cc.str() == "9/7/3/4" && tc.str() == "9/7/3/4", cc.str() + " and " + tc.str());
    r.check("catch-patterns", cr.case_counts[0] == 0 && cr.turned_counts[0] == 0 && cr.all_ok());
    bool follow = !nc.follow.empty();
    for (auto& [k, j] : nc.follow) {
        const auto& c = std::find_if(cr.cases.begin(), cr.cases.end(), [&](const RecalcitrantCase& x) { return x.problem.k == k; })->concat;
        if (!c.covered || c.partner() != j) follow = false;
        r.line("follow", std::to_string(k) + " -> " + std::to_string(j));
    }
    r.check("F(image)-in-lattice-translate", follow, std::to_string(nc.follow.size()) + " pairs");
    if (keep) *keep = std::move(pr);
    return r;
}

// ---------------------------------------------------------------------------
// Pixellation and the quasi-isomorphism.

inline SuiteReport verify_pixellation(const std::vector<Param>& ps, bool require_all_pixellated_38 = true) {
    SuiteReport r;
    r.suite = "pixellation";
    for (auto& pr : ps) {
        BlockModel M(pr);
        auto s = scan_region(M);
        const std::string n = pr.name();
        r.line(n + "_squares", s.squares);
        r.line(n + "_full", s.full);
        r.line(n + "_pixellated", s.pixellated);
        r.line(n + "_trivial", s.trivial);
        r.line(n + "_bad", s.bad);
        for (auto& [k, c] : s.catch_kinds) r.line(n + "_catch_kind_" + std::to_string(k), c);
        r.check(n + "-double-crossings", s.double_crossings.empty(), std::to_string(s.double_crossings.size()));
        r.check(n + "-errant-edges", s.errant_edges.empty(), std::to_string(s.errant_edges.size()));
        r.check(n + "-statement-2", s.statement2.empty(), std::to_string(s.statement2.size()));
        r.check(n + "-statement-4", s.statement4.empty(), std::to_string(s.statement4.size()));
        r.check(n + "-caught", s.uncaught.empty() && s.corners.empty() && s.reciprocity.empty(),
                std::to_string(s.uncaught.size()) + " uncaught");
        if (require_all_pixellated_38 && pr.p == 3 && pr.q == 8) {
            std::string where;
            for (long i = 0; i < M.width() && where.empty(); ++i)
                for (long j = 0; j < M.height() && where.empty(); ++j)
                    if (classify_square(M, {i, j}).status == SquareStatus::Bad)
                        where = "first bad square (" + std::to_string(i) + "," + std::to_string(j) + ")";
            r.check(n + "-all-pixellated", s.bad == 0, std::to_string(s.bad) + " bad" + (where.empty() ? "" : ", " + where));
        }
    }
    return r;
}

inline SuiteReport verify_quasi_iso(const std::vector<Param>& ps) {
    SuiteReport r;
    r.suite = "quasi-iso";
    for (auto& pr : ps) {
        BlockModel M(pr);
        const std::string n = pr.name();
        auto ch = linked_chains(M);
        r.line(n + "_chains", ch.chains.size());
        for (auto& [shape, c] : ch.shapes) r.line(n + "_chain_" + shape, c);
        r.check(n + "-chains-bound", ch.all_bound(), std::to_string(ch.unbound) + " unbound");
        auto mt = build_homeomorphism(M);
        r.line(n + "_polygons", mt.components.size());
        r.line(n + "_graph_vertices", mt.graph_vertices);
        r.line(n + "_max_displacement_sq", mt.max_disp_sq);
        for (auto& f : mt.failures) r.line(n + "_failure", f);
        r.check(n + "-homeomorphism", mt.ok(), "displacement^2 " + mt.max_disp_sq.get_str());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Billiards oracle.

struct OracleDiff {
    GraphEdgeSet only_dynamic, only_pet;
    std::size_t edges = 0;
};

inline OracleDiff oracle_diff(const Param& pr, long w) {
    Kite k(pr);
    auto d = dyn_graph(k, w), p = pet_graph(pr, w);
    OracleDiff o;
    o.edges = d.size();
    std::set_difference(d.begin(), d.end(), p.begin(), p.end(), std::inserter(o.only_dynamic, o.only_dynamic.end()));
    std::set_difference(p.begin(), p.end(), d.begin(), d.end(), std::inserter(o.only_pet, o.only_pet.end()));
    return o;
}

inline SuiteReport verify_oracle(const std::vector<Param>& ps, long w = 12, unsigned jobs = 0) {
    SuiteReport r;
    r.suite = "oracle";
    std::vector<OracleDiff> ds(ps.size());
    std::vector<std::string> err(ps.size());
    parallel_for(ps.size(), jobs, [&](std::size_t i) {
        try {
            ds[i] = oracle_diff(ps[i], w);
        } catch (const Error& e) {
            err[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string n = ps[i].name();
        r.line(n + "_edges", ds[i].edges);
        bool ok = err[i].empty() && ds[i].only_dynamic.empty() && ds[i].only_pet.empty() && ds[i].edges > 0;
        r.check(n + "-equal", ok,
                err[i].empty() ? std::to_string(ds[i].only_dynamic.size() + ds[i].only_pet.size()) + " differing edges" : err[i]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Grid geometry.

inline SuiteReport verify_grid_geometry(std::size_t count = 20) {
    SuiteReport r;
    r.suite = "grid-geometry";
    long ok = 0, norm_cf = 0;
    std::string bad;
    for (auto& pr : random_params(count)) {
        auto g = grid_geometry_suite(pr);
        if (g.ok())
            ++ok;
        else if (bad.empty())
            bad = pr.name();
        norm_cf += g.norm_matches;
    }
    r.line("parameters", count);
    r.line("norm_closed_form_matches", norm_cf);
    r.check("statements-1-7+d-values+norm", ok == static_cast<long>(count), std::to_string(ok) + " of " + std::to_string(count) +
                                                                                 (bad.empty() ? "" : ", first failure " + bad));
    return r;
}

// ---------------------------------------------------------------------------
// Vertical comparator.

struct ComparatorStats {
    long windows = 0, skipped = 0, ok = 0, pairs = 0;
    Rat worst = 0;
    std::map<std::string, long> failures;
};

/// Plaid against the straightened graph on unit columns, between consecutive clean horizontal lines.
inline ComparatorStats comparator_on_model(const BlockModel& M, long columns = 60) {
    ComparatorStats st;
    const long H = M.height();
    for (long k = 0; k < columns; ++k) {
        long X0 = k - 3, X1 = k + 4, Y0 = -3, Y1 = H + 3;
        auto A = plaid_family(M, X0, X1, Y0, Y1);
        auto G = graph_family(M, X0 - 2, X1 + 2, Y0 - 2, Y1 + 2);
        auto B = straighten(G, X0, X1, Y0, Y1);
        std::vector<long> clean;
        for (long y = 0; y <= H; ++y)
            if (!touches_horizontal(A, k, k + 1, y) && !touches_horizontal(B, k, k + 1, y)) clean.push_back(y);
        for (std::size_t a = 0; a + 1 < clean.size(); ++a) {
            auto vm = vertical_compare(A, B, k, k + 1, clean[a], clean[a + 1]);
            ++st.windows;
            if (vm.status == CompareStatus::NotNice || vm.status == CompareStatus::HorizontalHit) {
                ++st.skipped;
                continue;
            }
            if (vm.status == CompareStatus::Ok) {
                ++st.ok;
                st.pairs += vm.pairs;
                if (vm.max_disp_sq > st.worst) st.worst = vm.max_disp_sq;
            } else {
                st.failures[compare_status_name(vm.status)]++;
            }
        }
    }
    return st;
}

struct InjectionStats {
    long trials = 0, control_ok = 0, injected_rejected = 0;
    Rat worst = 0;
};

/// Random one-column configurations: A is a standard family of straight crossers, B a perturbed copy; half the trials tilt one crosser of B the wrong way.
inline InjectionStats comparator_injection(long trials = 200, unsigned seed = 7) {
    std::mt19937 rng(seed);
    InjectionStats st;
    const long Y = 16;
    auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    auto crosser = [](const Rat& yl, const Rat& yr) {
        Polyline pl;
        pl.pts = {{Rat(-1, 2), yl}, {Rat(0), yl}, {Rat(1), yr}, {Rat(3, 2), yr}};
        return pl;
    };
    for (long t = 0; t < trials; ++t) {
        PolygonFamily A, B;
        A.source = "standard";
        B.source = "nice";
        std::vector<long> rows;
        for (long m = 2 + rnd(0, 1); m + 3 < Y; m += 4 + rnd(0, 1)) rows.push_back(m);
        std::vector<int> delta;
        for (std::size_t i = 0; i < rows.size(); ++i) delta.push_back(static_cast<int>(rnd(-1, 1)));
        delta[rnd(0, static_cast<long>(rows.size()) - 1)] = rnd(0, 1) ? 1 : -1;
        std::size_t target = SIZE_MAX;
        bool inject = t % 2 == 1;
        if (inject)
            for (std::size_t i = 0; i < rows.size() && target == SIZE_MAX; ++i)
                if (delta[i] != 0) target = i;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Rat al = Rat(2 * rows[i] + 1, 2), ar = Rat(2 * (rows[i] + delta[i]) + 1, 2);
            A.components.push_back(crosser(al, ar));
            Rat bl, br;
            if (i == target) {
                // B keeps within 1 of A at both ends but tilts against it
                bl = al + Rat(delta[i]) * make_rat(rnd(11, 19), 20);
                do br = bl - Rat(delta[i]) * make_rat(rnd(1, 9), 20);
                while (is_integer(br));  // keep B nice
            } else {
                bl = al + make_rat(rnd(-9, 9), 20);
                br = ar + make_rat(rnd(-9, 9), 20);
            }
            B.components.push_back(crosser(bl, br));
        }
        auto vm = vertical_compare(A, B, 0, 1, 0, Y);
        ++st.trials;
        if (inject) {
            st.injected_rejected += vm.status == CompareStatus::SwitchFound;
        } else if (vm.status == CompareStatus::Ok && vm.max_disp_sq <= 2) {
            ++st.control_ok;
            if (vm.max_disp_sq > st.worst) st.worst = vm.max_disp_sq;
        }
    }
    return st;
}

inline SuiteReport verify_comparator(const std::vector<Param>& ps, long columns = 60, long trials = 200) {
    SuiteReport r;
    r.suite = "comparator";
    for (auto& pr : ps) {
        auto st = comparator_on_model(BlockModel(pr), columns);
        const std::string n = pr.name();
        r.line(n + "_windows", st.windows);
        r.line(n + "_precondition_not_met", st.skipped);
        r.line(n + "_matched_pieces", st.pairs);
        r.line(n + "_max_displacement_sq", st.worst);
        for (auto& [s, c] : st.failures) r.line(n + "_" + s, c);
        r.check(n + "-matching", st.failures.empty() && st.ok > 0 && st.pairs > 0 && st.worst <= 2,
                std::to_string(st.ok) + " windows matched");
    }
    auto inj = comparator_injection(trials);
    r.line("synthetic_trials", inj.trials);
    r.line("synthetic_max_displacement_sq", inj.worst);
    long half = inj.trials / 2;
    r.check("synthetic-control", inj.control_ok == inj.trials - half, count_str(inj.control_ok, inj.trials - half));
    r.check("injected-switch-rejected", inj.injected_rejected == half, count_str(inj.injected_rejected, half));
    return r;
}

inline std::vector<Param> params_of(const std::vector<std::pair<long, long>>& pq) {
    std::vector<Param> out;
    for (auto [p, q] : pq) out.push_back(make_param(p, q));
    return out;
}

}  // namespace plaid

#endif  // PLAID_VERIFY_HPP
