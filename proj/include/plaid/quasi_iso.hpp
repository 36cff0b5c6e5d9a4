#ifndef PLAID_QUASI_ISO_HPP
#define PLAID_QUASI_ISO_HPP

#include "graph_pet.hpp"
#include "plaid_pet.hpp"

#include <map>
#include <optional>
#include <set>

namespace plaid {

using Square = std::array<long, 2>;
using MN = std::array<long, 2>;

inline Square step(const Square& s, char side) {
    auto d = side_step(side);
    return {s[0] + d[0], s[1] + d[1]};
}

inline bool perpendicular(char a, char b) {
    bool ha = a == 'E' || a == 'W', hb = b == 'E' || b == 'W';
    return ha != hb;
}

inline Square square_of(const RVec& v) { return {floor_rat(v[0]).get_si(), floor_rat(v[1]).get_si()}; }

inline bool strictly_inside(const Square& s, const RVec& v) {
    return v[0] > s[0] && v[0] < s[0] + 1 && v[1] > s[1] && v[1] < s[1] + 1;
}

/// Center of a side of a unit square.
inline RVec side_center(const Square& s, char side) {
    auto d = side_step(side);
    RVec c = {Rat(2 * s[0] + 1 + d[0], 2), Rat(2 * s[1] + 1 + d[1], 2)};
    for (auto& x : c) x.canonicalize();
    return c;
}

/// Side through which the segment v->w leaves the open square s (v inside): a letter, 'C' at a corner, 0 if w is inside.
inline char exit_side(const Square& s, const RVec& v, const RVec& w) {
    if (strictly_inside(s, w)) return 0;
    Rat dx = w[0] - v[0], dy = w[1] - v[1];
    std::optional<Rat> tx, ty;
    char sx = 0, sy = 0;
    if (dx > 0) tx = (s[0] + 1 - v[0]) / dx, sx = 'E';
    if (dx < 0) tx = (s[0] - v[0]) / dx, sx = 'W';
    if (dy > 0) ty = (s[1] + 1 - v[1]) / dy, sy = 'N';
    if (dy < 0) ty = (s[1] - v[1]) / dy, sy = 'S';
    if (tx && ty) {
        if (*tx < *ty) return sx;
        if (*ty < *tx) return sy;
        return 'C';
    }
    return tx ? sx : sy;
}

inline Rat cross2(const RVec& o, const RVec& a, const RVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline bool on_segment(const RVec& a, const RVec& b, const RVec& p) {
    return sgn(cross2(a, b, p)) == 0 && std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

/// Closed segments ab and cd meet.
inline bool segments_intersect(const RVec& a, const RVec& b, const RVec& c, const RVec& d) {
    int d1 = sgn(cross2(c, d, a)), d2 = sgn(cross2(c, d, b)), d3 = sgn(cross2(a, b, c)), d4 = sgn(cross2(a, b, d));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    return on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d);
}

inline Rat dist2(const RVec& a, const RVec& b) {
    Rat dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

/// Discrete Frechet coupling of two polylines with pinned ends; returns the squared bottleneck.
/// Couplings of breakpoints bound the displacement of the induced piecewise-linear correspondence.
inline Rat frechet_sq(const std::vector<RVec>& P, const std::vector<RVec>& Q) {
    const std::size_t n = P.size(), m = Q.size();
    std::vector<std::vector<Rat>> D(n, std::vector<Rat>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Rat d = dist2(P[i], Q[j]);
            if (i == 0 && j == 0)
                D[i][j] = d;
            else {
                Rat best;
                bool any = false;
                auto take = [&](const Rat& r) {
                    if (!any || r < best) best = r;
                    any = true;
                };
                if (i > 0) take(D[i - 1][j]);
                if (j > 0) take(D[i][j - 1]);
                if (i > 0 && j > 0) take(D[i - 1][j - 1]);
                D[i][j] = std::max(best, d);
            }
        }
    return D[n - 1][m - 1];
}

/// Breakpoints of the segment a->b at every integer horizontal and vertical line it crosses.
inline std::vector<RVec> densify(const RVec& a, const RVec& b) {
    std::vector<Rat> ts;
    for (int c = 0; c < 2; ++c) {
        Rat d = b[c] - a[c];
        if (d == 0) continue;
        Rat lo = std::min(a[c], b[c]), hi = std::max(a[c], b[c]);
        for (Int k = ceil_rat(lo); Rat(k) <= hi; ++k) {
            Rat t = (Rat(k) - a[c]) / d;
            if (t > 0 && t < 1) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<RVec> out = {a};
    for (auto& t : ts) out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    out.push_back(b);
    return out;
}

// ---------------------------------------------------------------------------
// Both models on the period torus Z^2 / <(omega^2,0),(0,omega)>.

class BlockModel {
public:
    explicit BlockModel(const Param& pr) : pr_(pr), T_(canonical_T(pr)) {
        W_ = pr.omega * pr.omega;
        H_ = pr.omega;
        for (auto& mn : grid_points_in_box(T_, Rat(0), Rat(W_), Rat(0), Rat(H_))) {
            RVec v = T_.T(mn[0], mn[1]);
            Square s = square_of(v);
            if (s[0] < 0 || s[0] >= W_ || s[1] < 0 || s[1] >= H_) continue;
            if (!grid_.emplace(s, mn).second) throw Error("GridGeometryFailure", "two grid points share a square");
        }
        tiles_.resize(W_ * H_);
        for (long i = 0; i < W_; ++i)
            for (long j = 0; j < H_; ++j) tiles_[i * H_ + j] = tile_at_square(pr, i, j);
        for (auto& [s, mn] : grid_) asg_.emplace(s, edge_assignment(pr, mn[0], mn[1]));
    }

    const Param& param() const { return pr_; }
    const CanonicalMap& T() const { return T_; }
    long width() const { return W_; }
    long height() const { return H_; }

    Square canon(const Square& s) const { return {mod(s[0], W_), mod(s[1], H_)}; }

    const PlaidLabel& tile(const Square& s) const {
        Square c = canon(s);
        return tiles_[c[0] * H_ + c[1]];
    }

    /// Z^2 preimage of the grid point in s, if any.
    std::optional<MN> grid(const Square& s) const {
        Square c = canon(s);
        auto it = grid_.find(c);
        if (it == grid_.end()) return std::nullopt;
        long a = (s[0] - c[0]) / W_, b = (s[1] - c[1]) / H_;
        const long p = pr_.p, q = pr_.q;
        return MN{it->second[0] + a * 2 * p * q + b * q, it->second[1] + a * (2 * p * q + q * q - p * p) - b * p};
    }

    bool full(const Square& s) const { return grid_.count(canon(s)) != 0; }

    const EdgeAssignment& assignment(const Square& s) const { return asg_.at(canon(s)); }

    RVec point(const MN& mn) const { return T_.T(mn[0], mn[1]); }

    std::size_t grid_count() const { return grid_.size(); }

private:
    static long mod(long a, long m) { return ((a % m) + m) % m; }

    Param pr_;
    CanonicalMap T_;
    long W_ = 0, H_ = 0;
    std::map<Square, MN> grid_;
    std::map<Square, EdgeAssignment> asg_;
    std::vector<PlaidLabel> tiles_;
};

// ---------------------------------------------------------------------------
// Square classification.

enum class SquareStatus { GridEmpty, Trivial, Pixellated, Bad };

inline const char* status_name(SquareStatus s) {
    switch (s) {
        case SquareStatus::GridEmpty: return "grid-empty";
        case SquareStatus::Trivial: return "trivial";
        case SquareStatus::Pixellated: return "pixellated";
        case SquareStatus::Bad: return "bad";
    }
    return "?";
}

struct SquareClassification {
    Square sq{};
    PlaidLabel tile;
    bool full = false;
    MN mn{};
    RVec v;
    EdgeAssignment asg;
    std::array<RVec, 2> ends;  // far endpoints of the (+) and (-) edges
    std::array<char, 2> exits{};
    SquareStatus status = SquareStatus::GridEmpty;
    std::vector<int> offending;
    std::vector<char> unused;

    bool plaid_nontrivial() const { return !tile.empty(); }
    bool graph_nontrivial() const { return full && !asg.isolated(); }
};

inline SquareClassification classify_square(const BlockModel& M, const Square& s) {
    SquareClassification c;
    c.sq = s;
    c.tile = M.tile(s);
    auto g = M.grid(s);
    if (!g) return c;
    c.full = true;
    c.mn = *g;
    c.v = M.point(c.mn);
    c.asg = M.assignment(s);
    if (c.asg.isolated()) {
        c.status = c.tile.empty() ? SquareStatus::Trivial : SquareStatus::Bad;
        return c;
    }
    const std::array<Edge2, 2> lab = {c.asg.plus, c.asg.minus};
    for (int k = 0; k < 2; ++k) {
        c.ends[k] = M.point({c.mn[0] + lab[k][0], c.mn[1] + lab[k][1]});
        c.exits[k] = exit_side(s, c.v, c.ends[k]);
    }
    if (c.tile.empty()) {
        c.status = SquareStatus::Bad;
        return c;
    }
    for (int k = 0; k < 2; ++k)
        if (!c.tile.has(c.exits[k])) c.offending.push_back(k);
    for (char side : {c.tile.a, c.tile.b})
        if (c.exits[0] != side && c.exits[1] != side) c.unused.push_back(side);
    c.status = c.offending.empty() && c.unused.empty() ? SquareStatus::Pixellated : SquareStatus::Bad;
    return c;
}

// ---------------------------------------------------------------------------
// Catches.

struct Catch {
    int kind = 0;
    Square bad{}, across_unused{}, diagonal{}, end{};
    char unused = 0, crossed = 0;
};

inline std::set<char> sides_of(const PlaidLabel& l) {
    if (l.empty()) return {};
    return {l.a, l.b};
}

/// Template match for an offending edge and an unused side of a bad square.
inline std::optional<Catch> find_catch(const BlockModel& M, const SquareClassification& c, int edge, char unused) {
    char o = c.exits[edge];
    if (o == 0 || o == 'C' || !perpendicular(o, unused)) return std::nullopt;
    Catch k;
    k.bad = c.sq;
    k.unused = unused;
    k.crossed = o;
    k.across_unused = step(c.sq, unused);
    k.diagonal = step(k.across_unused, o);
    if (M.full(k.across_unused)) return std::nullopt;
    if (sides_of(M.tile(k.across_unused)) != std::set<char>{opposite(unused), o}) return std::nullopt;
    if (sides_of(M.tile(k.diagonal)) != std::set<char>{opposite(o), unused}) return std::nullopt;
    auto du = side_step(unused), dO = side_step(o);
    int diag = (du[0] + dO[0]) * (du[1] + dO[1]);
    RVec d = c.ends[edge] - c.v;
    if (sgn(d[0]) * sgn(d[1]) != diag) return std::nullopt;
    if (M.full(k.diagonal)) {
        k.kind = 1;
        k.end = k.diagonal;
    } else {
        k.kind = 2;
        k.end = step(k.diagonal, unused);
    }
    auto g = M.grid(k.end);
    if (!g || M.point(*g) != c.ends[edge]) return std::nullopt;
    return k;
}

/// Matches every offending edge to an unused side through a catch; empty when no bijection exists.
inline std::optional<std::vector<Catch>> catch_bijection(const BlockModel& M, const SquareClassification& c) {
    if (c.offending.size() != c.unused.size() || c.offending.empty()) return std::nullopt;
    std::vector<char> u = c.unused;
    std::sort(u.begin(), u.end());
    do {
        std::vector<Catch> out;
        for (std::size_t i = 0; i < u.size(); ++i) {
            auto k = find_catch(M, c, c.offending[i], u[i]);
            if (!k) break;
            out.push_back(*k);
        }
        if (out.size() == u.size()) return out;
    } while (std::next_permutation(u.begin(), u.end()));
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Anomaly detectors.

/// Two disjoint edges from the grid points of neighbouring squares crossing their common side.
inline bool double_crossing(const Square& s1, const RVec& v1, const std::vector<RVec>& ends1, const Square& s2, const RVec& v2,
                            const std::vector<RVec>& ends2) {
    char shared = 0;
    for (char side : {'E', 'N', 'W', 'S'})
        if (step(s1, side) == s2) shared = side;
    if (!shared) return false;
    for (auto& w1 : ends1) {
        if (exit_side(s1, v1, w1) != shared) continue;
        for (auto& w2 : ends2) {
            if (exit_side(s2, v2, w2) != opposite(shared)) continue;
            if (!segments_intersect(v1, w1, v2, w2)) return true;
        }
    }
    return false;
}

/// An edge passing into the neighbour across a plaid side and rising a unit while the plaid there does not rise.
inline bool errant(const BlockModel& M, const SquareClassification& c, int edge) {
    char x = c.exits[edge];
    if (!c.plaid_nontrivial() || !c.tile.has(x)) return false;
    Square t = step(c.sq, x);
    const PlaidLabel& lt = M.tile(t);
    RVec d = c.ends[edge] - c.v;
    for (char u : {'E', 'N', 'W', 'S'}) {
        if (!perpendicular(u, x)) continue;
        auto su = side_step(u);
        Rat rise = d[0] * su[0] + d[1] * su[1];
        if (rise >= 1 && !lt.has(u)) return true;
    }
    return false;
}

struct PixellationReport {
    std::string param;
    long squares = 0, full = 0, empty = 0, trivial = 0, pixellated = 0, bad = 0;
    std::vector<Square> double_crossings, errant_edges, statement2, statement4, uncaught, corners, reciprocity;
    std::map<int, long> catch_kinds;

    bool clean() const {
        return double_crossings.empty() && errant_edges.empty() && statement2.empty() && statement4.empty() && uncaught.empty() &&
               corners.empty() && reciprocity.empty();
    }
};

inline PixellationReport scan_region(const BlockModel& M) {
    PixellationReport r;
    r.param = M.param().name();
    std::map<Square, SquareClassification> cls;
    for (long i = 0; i < M.width(); ++i)
        for (long j = 0; j < M.height(); ++j) cls.emplace(Square{i, j}, classify_square(M, {i, j}));
    auto get = [&](const Square& s) {
        Square c = M.canon(s);
        if (c == s) return cls.at(s);
        return classify_square(M, s);
    };
    for (auto& [s, c] : cls) {
        ++r.squares;
        if (!c.full) {
            ++r.empty;
            continue;
        }
        ++r.full;
        if (c.plaid_nontrivial() != c.graph_nontrivial()) r.statement2.push_back(s);
        if (c.status == SquareStatus::Trivial) ++r.trivial;
        if (c.status == SquareStatus::Pixellated) ++r.pixellated;
        if (c.status == SquareStatus::Bad) ++r.bad;
        if (!c.graph_nontrivial()) continue;
        if (c.exits[0] == 'C' || c.exits[1] == 'C') r.corners.push_back(s);
        if (c.exits[0] == c.exits[1]) r.statement4.push_back(s);
        // reciprocity of the two assignments
        for (const Edge2& e : {c.asg.plus, c.asg.minus}) {
            Square t = square_of(M.point({c.mn[0] + e[0], c.mn[1] + e[1]}));
            const auto& a = M.assignment(t);
            Edge2 back = {-e[0], -e[1]};
            if (a.plus != back && a.minus != back) r.reciprocity.push_back(s);
        }
        for (int k = 0; k < 2; ++k)
            if (errant(M, c, k)) r.errant_edges.push_back(s);
        if (c.status == SquareStatus::Bad && c.plaid_nontrivial()) {
            auto cb = catch_bijection(M, c);
            if (!cb)
                r.uncaught.push_back(s);
            else
                for (auto& k : *cb) r.catch_kinds[k.kind]++;
        }
        for (char dir : {'E', 'N'}) {
            SquareClassification n = get(step(s, dir));
            if (!n.graph_nontrivial()) continue;
            if (double_crossing(s, c.v, {c.ends[0], c.ends[1]}, n.sq, n.v, {n.ends[0], n.ends[1]})) r.double_crossings.push_back(s);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Linked chains.

struct LinkedChain {
    std::vector<Square> squares;
    bool bound = false;

    std::string shape() const {
        std::set<long> rows, cols;
        for (auto& s : squares) {
            cols.insert(s[0]);
            rows.insert(s[1]);
        }
        std::size_t m = squares.size();
        if (m == 2) return "pair";
        if (rows.size() == 1) return "row";
        if (cols.size() == 1) return "column";
        if (m == 3) return "corner";
        if (rows.size() == 2 && cols.size() == 2) return "block";
        if (rows.size() == 2 || cols.size() == 2) {
            // three in a line plus one, or a zig-zag
            std::map<long, int> rc, cc;
            for (auto& s : squares) rc[s[1]]++, cc[s[0]]++;
            for (auto& [k, n] : rc)
                if (n == 3) return "three-in-line";
            for (auto& [k, n] : cc)
                if (n == 3) return "three-in-line";
            return "zig-zag";
        }
        return "other";
    }
};

struct ChainReport {
    std::vector<LinkedChain> chains;
    std::vector<Square> overlong;  // walks through more than two grid-empty squares
    std::map<std::string, long> shapes;
    long unbound = 0;
    bool all_bound() const { return unbound == 0 && overlong.empty(); }
};

/// The connector side of a tile other than the given one.
inline char other_plaid_side(const PlaidLabel& l, char side) { return l.a == side ? l.b : l.a; }

inline bool graph_edge_between(const BlockModel& M, const Square& a, const Square& b) {
    auto ga = M.grid(a), gb = M.grid(b);
    if (!ga || !gb) return false;
    const auto& e = M.assignment(a);
    if (e.isolated()) return false;
    Edge2 d = {(*gb)[0] - (*ga)[0], (*gb)[1] - (*ga)[1]};
    return d == e.plus || d == e.minus;
}

inline ChainReport linked_chains(const BlockModel& M) {
    ChainReport r;
    for (long i = 0; i < M.width(); ++i)
        for (long j = 0; j < M.height(); ++j) {
            Square s = {i, j};
            const PlaidLabel& l = M.tile(s);
            if (l.empty() || !M.full(s)) continue;
            for (char x : {l.a, l.b}) {
                LinkedChain ch;
                ch.squares.push_back(s);
                Square cur = s;
                char out = x;
                bool ok = true;
                for (;;) {
                    Square nx = step(cur, out);
                    ch.squares.push_back(nx);
                    const PlaidLabel& t = M.tile(nx);
                    if (t.empty() || !t.has(opposite(out))) throw Error("InconsistentTiles", "plaid sides disagree");
                    if (M.full(nx)) break;
                    out = other_plaid_side(t, opposite(out));
                    cur = nx;
                    if (ch.squares.size() > 4) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) {
                    r.overlong.push_back(s);
                    continue;
                }
                // keep one orientation: compare the two ends on the torus
                Square last = ch.squares.back(), prev = ch.squares[ch.squares.size() - 2];
                char back = 0;
                for (char side : {'E', 'N', 'W', 'S'})
                    if (step(last, side) == prev) back = side;
                auto k1 = std::make_pair(M.canon(s), x), k2 = std::make_pair(M.canon(last), back);
                if (k2 < k1) continue;
                ch.bound = graph_edge_between(M, s, last);
                if (!ch.bound) ++r.unbound;
                r.shapes[ch.shape()]++;
                r.chains.push_back(std::move(ch));
            }
        }
    return r;
}

// ---------------------------------------------------------------------------
// The homeomorphism between the two polygon families.

struct PolygonMatch {
    std::vector<Square> plaid;  // squares of the plaid polygon in order
    std::vector<MN> graph;      // graph polygon vertices in order
    Rat max_disp_sq;
};

struct Matching {
    std::vector<PolygonMatch> components;
    Rat max_disp_sq = 0;
    long graph_vertices = 0, matched_vertices = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty() && graph_vertices == matched_vertices && max_disp_sq <= 4; }
};

/// Midpoint of the connector in a nontrivial square.
inline RVec connector_midpoint(const Square& s, const PlaidLabel& l) {
    RVec a = side_center(s, l.a), b = side_center(s, l.b);
    return {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
}

/// Plaid polygons as cyclic square lists (one representative per torus orbit).
inline std::vector<std::vector<Square>> plaid_polygon_squares(const BlockModel& M) {
    std::vector<std::vector<Square>> out;
    std::set<Square> seen;
    for (long i = 0; i < M.width(); ++i)
        for (long j = 0; j < M.height(); ++j) {
            Square s0 = {i, j};
            const PlaidLabel& l0 = M.tile(s0);
            if (l0.empty() || seen.count(s0)) continue;
            std::vector<Square> poly = {s0};
            seen.insert(s0);
            Square cur = s0;
            char out_side = l0.b;
            for (;;) {
                Square nx = step(cur, out_side);
                const PlaidLabel& t = M.tile(nx);
                if (t.empty() || !t.has(opposite(out_side))) throw Error("InconsistentTiles", "plaid sides disagree");
                if (nx == s0) break;
                if (!seen.insert(M.canon(nx)).second) throw Error("InconsistentTiles", "polygon revisits a torus square");
                poly.push_back(nx);
                out_side = other_plaid_side(t, opposite(out_side));
                cur = nx;
            }
            out.push_back(std::move(poly));
        }
    return out;
}

inline Matching build_homeomorphism(const BlockModel& M) {
    Matching mt;
    std::set<Square> covered;
    for (long i = 0; i < M.width(); ++i)
        for (long j = 0; j < M.height(); ++j)
            if (M.full({i, j}) && !M.assignment({i, j}).isolated()) ++mt.graph_vertices;
    for (auto& poly : plaid_polygon_squares(M)) {
        PolygonMatch pm;
        pm.plaid = poly;
        pm.max_disp_sq = 0;
        std::vector<std::size_t> g;
        for (std::size_t k = 0; k < poly.size(); ++k)
            if (M.full(poly[k])) g.push_back(k);
        auto where = [&](std::size_t k) {
            const auto& s = poly[k];
            return "(" + std::to_string(s[0]) + "," + std::to_string(s[1]) + ")";
        };
        if (g.size() < 3) {
            mt.failures.push_back("plaid polygon at " + where(0) + " meets " + std::to_string(g.size()) + " grid-full squares");
            continue;
        }
        const std::size_t n = g.size();
        bool good = true;
        for (std::size_t a = 0; a < n; ++a) {
            const Square& s = poly[g[a]];
            const Square& sp = poly[g[(a + n - 1) % n]];
            const Square& sn = poly[g[(a + 1) % n]];
            MN v = *M.grid(s), vp = *M.grid(sp), vn = *M.grid(sn);
            const auto& e = M.assignment(s);
            std::set<Edge2> want = {e.plus, e.minus}, have = {Edge2{vp[0] - v[0], vp[1] - v[1]}, Edge2{vn[0] - v[0], vn[1] - v[1]}};
            if (e.isolated() || want != have) {
                mt.failures.push_back("graph vertex at " + where(g[a]) + " does not follow the plaid polygon");
                good = false;
                break;
            }
            pm.graph.push_back(v);
        }
        if (!good) continue;
        for (std::size_t a = 0; a < n; ++a) {
            std::size_t k0 = g[a], k1 = g[(a + 1) % n];
            // plaid arc between the two connector midpoints
            std::vector<RVec> arc = {connector_midpoint(poly[k0], M.tile(poly[k0]))};
            for (std::size_t k = k0;; k = (k + 1) % poly.size()) {
                std::size_t kn = (k + 1) % poly.size();
                for (char side : {'E', 'N', 'W', 'S'})
                    if (step(poly[k], side) == poly[kn]) arc.push_back(side_center(poly[k], side));
                if (kn == k1) break;
            }
            arc.push_back(connector_midpoint(poly[k1], M.tile(poly[k1])));
            RVec v0 = M.point(pm.graph[a]), v1 = M.point(pm.graph[(a + 1) % n]);
            Rat d = frechet_sq(densify(v0, v1), arc);
            if (d > pm.max_disp_sq) pm.max_disp_sq = d;
        }
        for (auto k : g)
            if (!covered.insert(M.canon(poly[k])).second) mt.failures.push_back("grid vertex matched twice at " + where(k));
        mt.matched_vertices += static_cast<long>(n);
        if (pm.max_disp_sq > mt.max_disp_sq) mt.max_disp_sq = pm.max_disp_sq;
        mt.components.push_back(std::move(pm));
    }
    return mt;
}

// ---------------------------------------------------------------------------
// Generic polygon families and the vertical comparator.

struct Polyline {
    std::vector<RVec> pts;
    bool closed = false;
};

struct PolygonFamily {
    std::vector<Polyline> components;
    std::string source;
};

/// Plaid connectors of all squares in [x0,x1) x [y0,y1), chained into polylines.
inline PolygonFamily plaid_family(const BlockModel& M, long x0, long x1, long y0, long y1) {
    std::vector<std::pair<RVec, RVec>> segs;
    for (long i = x0; i < x1; ++i)
        for (long j = y0; j < y1; ++j) {
            const PlaidLabel& l = M.tile({i, j});
            if (!l.empty()) segs.push_back({side_center({i, j}, l.a), side_center({i, j}, l.b)});
        }
    PolygonFamily F;
    F.source = "plaid";
    std::map<RVec, std::vector<std::size_t>> at;
    for (std::size_t k = 0; k < segs.size(); ++k) at[segs[k].first].push_back(k), at[segs[k].second].push_back(k);
    std::vector<bool> used(segs.size());
    auto walk = [&](std::size_t k0, RVec start) {
        Polyline pl;
        pl.pts.push_back(start);
        std::size_t k = k0;
        RVec cur = start;
        for (;;) {
            used[k] = true;
            RVec nx = segs[k].first == cur ? segs[k].second : segs[k].first;
            pl.pts.push_back(nx);
            cur = nx;
            std::size_t next = SIZE_MAX;
            for (auto c : at[cur])
                if (!used[c]) next = c;
            if (next == SIZE_MAX) break;
            k = next;
        }
        if (pl.pts.size() > 2 && pl.pts.front() == pl.pts.back()) {
            pl.closed = true;
            pl.pts.pop_back();
        }
        return pl;
    };
    // open ends first, then cycles
    for (std::size_t k = 0; k < segs.size(); ++k)
        for (const RVec& e : {segs[k].first, segs[k].second})
            if (!used[k] && at[e].size() == 1) F.components.push_back(walk(k, e));
    for (std::size_t k = 0; k < segs.size(); ++k)
        if (!used[k]) F.components.push_back(walk(k, segs[k].first));
    return F;
}

/// Graph edges with an endpoint in [x0,x1) x [y0,y1), chained into polylines.
inline PolygonFamily graph_family(const BlockModel& M, long x0, long x1, long y0, long y1) {
    std::map<MN, std::vector<MN>> adj;
    for (long i = x0; i < x1; ++i)
        for (long j = y0; j < y1; ++j) {
            auto g = M.grid({i, j});
            if (!g) continue;
            const auto& e = M.assignment({i, j});
            if (e.isolated()) continue;
            for (const Edge2& d : {e.plus, e.minus}) {
                MN w = {(*g)[0] + d[0], (*g)[1] + d[1]};
                auto& a = adj[*g];
                if (std::find(a.begin(), a.end(), w) == a.end()) a.push_back(w);
                auto& b = adj[w];
                if (std::find(b.begin(), b.end(), *g) == b.end()) b.push_back(*g);
            }
        }
    PolygonFamily F;
    F.source = "graph";
    std::set<std::pair<MN, MN>> used;
    auto key = [](MN a, MN b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
    auto walk = [&](MN start) {
        Polyline pl;
        pl.pts.push_back(M.point(start));
        MN cur = start;
        for (;;) {
            MN next{};
            bool found = false;
            for (auto& w : adj[cur])
                if (!used.count(key(cur, w))) {
                    next = w;
                    found = true;
                    break;
                }
            if (!found) break;
            used.insert(key(cur, next));
            cur = next;
            if (cur == start) {
                pl.closed = true;
                break;
            }
            pl.pts.push_back(M.point(cur));
        }
        return pl;
    };
    for (auto& [v, a] : adj)
        if (a.size() == 1 && !used.count(key(v, a[0]))) F.components.push_back(walk(v));
    for (auto& [v, a] : adj)
        for (auto& w : a)
            if (!used.count(key(v, w))) F.components.push_back(walk(v));
    return F;
}

inline std::vector<std::pair<RVec, RVec>> segments_of(const Polyline& pl) {
    std::vector<std::pair<RVec, RVec>> out;
    for (std::size_t k = 0; k + 1 < pl.pts.size(); ++k) out.push_back({pl.pts[k], pl.pts[k + 1]});
    if (pl.closed && pl.pts.size() > 2) out.push_back({pl.pts.back(), pl.pts.front()});
    return out;
}

/// Heights where the family crosses the vertical line x = k strictly inside (y0,y1); touching points do not count.
inline std::vector<Rat> vertical_crossings(const PolygonFamily& F, long k, const Rat& y0, const Rat& y1) {
    std::vector<Rat> out;
    Rat x(k);
    for (auto& pl : F.components) {
        const auto& P = pl.pts;
        const std::size_t n = P.size();
        auto side = [&](const RVec& p) { return sgn(p[0] - x); };
        for (std::size_t i = 0; i < n; ++i) {
            bool last = i + 1 == n;
            if (last && !pl.closed) break;
            const RVec& a = P[i];
            const RVec& b = P[(i + 1) % n];
            int sa = side(a), sb = side(b);
            if (sa * sb < 0) {
                Rat y = a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0]);
                if (y > y0 && y < y1) out.push_back(y);
            }
        }
        // vertices on the line: a crossing when the neighbours off the line lie on opposite sides
        for (std::size_t i = 0; i < n; ++i) {
            if (side(P[i]) != 0) continue;
            if (!pl.closed && (i == 0 || i + 1 == n)) continue;
            int before = 0, after = 0;
            for (std::size_t d = 1; d < n && before == 0; ++d) {
                if (!pl.closed && d > i) break;
                before = side(P[(i + n - d) % n]);
            }
            for (std::size_t d = 1; d < n && after == 0; ++d) {
                if (!pl.closed && i + d >= n) break;
                after = side(P[(i + d) % n]);
            }
            if (before * after < 0 && (side(P[(i + n - 1) % n]) != 0)) {
                if (P[i][1] > y0 && P[i][1] < y1) out.push_back(P[i][1]);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Pieces of the family inside the closed rectangle, as polylines cut at the boundary.
inline std::vector<std::vector<RVec>> clip_pieces(const PolygonFamily& F, const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
    std::vector<std::vector<RVec>> out;
    auto inside = [&](const RVec& p) { return p[0] >= x0 && p[0] <= x1 && p[1] >= y0 && p[1] <= y1; };
    for (auto& pl : F.components) {
        std::vector<std::vector<RVec>> pieces;
        std::vector<RVec> cur;
        auto flush = [&]() {
            if (cur.size() >= 2) pieces.push_back(cur);
            cur.clear();
        };
        for (auto& [a, b] : segments_of(pl)) {
            // Liang-Barsky in exact arithmetic
            Rat t0 = 0, t1 = 1;
            RVec d = {b[0] - a[0], b[1] - a[1]};
            bool keep = true;
            auto clipc = [&](const Rat& p, const Rat& q) {
                if (p == 0) {
                    if (q < 0) keep = false;
                    return;
                }
                Rat r = q / p;
                if (p < 0) {
                    if (r > t1) keep = false;
                    else if (r > t0) t0 = r;
                } else {
                    if (r < t0) keep = false;
                    else if (r < t1) t1 = r;
                }
            };
            clipc(-d[0], a[0] - x0);
            clipc(d[0], x1 - a[0]);
            clipc(-d[1], a[1] - y0);
            clipc(d[1], y1 - a[1]);
            if (!keep || t0 >= t1) {
                flush();
                continue;
            }
            RVec p = {a[0] + t0 * d[0], a[1] + t0 * d[1]}, q = {a[0] + t1 * d[0], a[1] + t1 * d[1]};
            if (!cur.empty() && cur.back() != p) flush();
            if (cur.empty()) cur.push_back(p);
            cur.push_back(q);
            if (t1 < 1) flush();
        }
        flush();
        // a closed curve cut once: rejoin the wrap-around
        if (pl.closed && pieces.size() >= 2 && inside(pl.pts.front()) && pieces.front().front() == pieces.back().back()) {
            auto& f = pieces.front();
            auto& l = pieces.back();
            l.insert(l.end(), f.begin() + 1, f.end());
            pieces.erase(pieces.begin());
        }
        for (auto& p : pieces) out.push_back(p);
    }
    return out;
}

struct NicenessReport {
    std::vector<Square> poor, vertex_hits, multi;
    bool nice() const { return poor.empty() && vertex_hits.empty() && multi.empty(); }
};

/// Horizontal-line condition per square, no crossing at lattice points, at most one crossing per unit vertical edge.
inline NicenessReport niceness_test(const PolygonFamily& F, long x0, long x1, long y0, long y1) {
    NicenessReport r;
    for (long i = x0; i < x1; ++i)
        for (long j = y0; j < y1; ++j) {
            auto pcs = clip_pieces(F, Rat(i), Rat(i + 1), Rat(j), Rat(j + 1));
            std::vector<std::pair<Rat, Rat>> ranges;
            for (auto& p : pcs) {
                Rat lo = p[0][1], hi = p[0][1];
                for (auto& q : p) lo = std::min(lo, q[1]), hi = std::max(hi, q[1]);
                ranges.push_back({lo, hi});
            }
            bool poor = false;
            for (std::size_t a = 0; a < ranges.size(); ++a)
                for (std::size_t b = a + 1; b < ranges.size(); ++b)
                    if (ranges[a].first <= ranges[b].second && ranges[b].first <= ranges[a].second) poor = true;
            if (poor) r.poor.push_back({i, j});
        }
    for (long k = x0; k <= x1; ++k) {
        auto ys = vertical_crossings(F, k, Rat(y0), Rat(y1));
        std::map<long, int> per;
        for (auto& y : ys) {
            if (is_integer(y)) r.vertex_hits.push_back({k, floor_rat(y).get_si()});
            per[floor_rat(y).get_si()]++;
        }
        for (auto& [j, n] : per)
            if (n > 1) r.multi.push_back({k, j});
    }
    return r;
}

/// Replaces each square's piece by the connector of the sides it enters and leaves.
inline PolygonFamily straighten(const PolygonFamily& F, long x0, long x1, long y0, long y1) {
    PolygonFamily S;
    S.source = F.source + "-straight";
    std::vector<std::pair<RVec, RVec>> segs;
    for (long i = x0; i < x1; ++i)
        for (long j = y0; j < y1; ++j) {
            Square s = {i, j};
            for (auto& p : clip_pieces(F, Rat(i), Rat(i + 1), Rat(j), Rat(j + 1))) {
                auto side_of = [&](const RVec& q) -> char {
                    if (q[0] == i) return 'W';
                    if (q[0] == i + 1) return 'E';
                    if (q[1] == j) return 'S';
                    if (q[1] == j + 1) return 'N';
                    return 0;
                };
                char a = side_of(p.front()), b = side_of(p.back());
                if (!a || !b || a == b) continue;
                segs.push_back({side_center(s, a), side_center(s, b)});
            }
        }
    // chain connectors that share side centers
    std::map<RVec, std::vector<std::size_t>> at;
    for (std::size_t k = 0; k < segs.size(); ++k) at[segs[k].first].push_back(k), at[segs[k].second].push_back(k);
    std::vector<bool> used(segs.size());
    auto walk = [&](std::size_t k, RVec cur) {
        Polyline pl;
        pl.pts.push_back(cur);
        for (;;) {
            used[k] = true;
            cur = segs[k].first == cur ? segs[k].second : segs[k].first;
            pl.pts.push_back(cur);
            std::size_t nx = SIZE_MAX;
            for (auto c : at[cur])
                if (!used[c]) nx = c;
            if (nx == SIZE_MAX) break;
            k = nx;
        }
        if (pl.pts.size() > 2 && pl.pts.front() == pl.pts.back()) {
            pl.closed = true;
            pl.pts.pop_back();
        }
        return pl;
    };
    for (std::size_t k = 0; k < segs.size(); ++k)
        for (const RVec& e : {segs[k].first, segs[k].second})
            if (!used[k] && at[e].size() == 1) S.components.push_back(walk(k, e));
    for (std::size_t k = 0; k < segs.size(); ++k)
        if (!used[k]) S.components.push_back(walk(k, segs[k].first));
    return S;
}

enum class CompareStatus { Ok, NotNice, HorizontalHit, CountMismatch, SwitchFound, MatchingFailure };

inline const char* compare_status_name(CompareStatus s) {
    switch (s) {
        case CompareStatus::Ok: return "ok";
        case CompareStatus::NotNice: return "NotNice";
        case CompareStatus::HorizontalHit: return "HorizontalHit";
        case CompareStatus::CountMismatch: return "CountMismatch";
        case CompareStatus::SwitchFound: return "SwitchFound";
        case CompareStatus::MatchingFailure: return "MatchingFailure";
    }
    return "?";
}

struct VerticalMatching {
    CompareStatus status = CompareStatus::Ok;
    long pairs = 0;
    Rat max_disp_sq = 0;
    std::string detail;
};

inline bool touches_horizontal(const PolygonFamily& F, long x0, long x1, long y) {
    RVec a = {Rat(x0), Rat(y)}, b = {Rat(x1), Rat(y)};
    for (auto& pl : F.components)
        for (auto& [p, q] : segments_of(pl))
            if (segments_intersect(p, q, a, b)) return true;
    return false;
}

/// Vertical comparator on the rectangle [x0,x1] x [y0,y1]; A standard, B nice.
inline VerticalMatching vertical_compare(const PolygonFamily& A, const PolygonFamily& B, long x0, long x1, long y0, long y1) {
    VerticalMatching vm;
    auto fail = [&](CompareStatus s, std::string d) {
        vm.status = s;
        vm.detail = std::move(d);
        return vm;
    };
    if (!niceness_test(A, x0, x1, y0, y1).nice()) return fail(CompareStatus::NotNice, "A");
    if (!niceness_test(B, x0, x1, y0, y1).nice()) return fail(CompareStatus::NotNice, "B");
    for (long y : {y0, y1})
        if (touches_horizontal(A, x0, x1, y) || touches_horizontal(B, x0, x1, y))
            return fail(CompareStatus::HorizontalHit, "y=" + std::to_string(y));
    std::vector<std::vector<Rat>> AL, BL;
    for (long k = x0; k <= x1; ++k) {
        AL.push_back(vertical_crossings(A, k, Rat(y0), Rat(y1)));
        BL.push_back(vertical_crossings(B, k, Rat(y0), Rat(y1)));
        const auto &a = AL.back(), &b = BL.back();
        if (a.size() != b.size()) return fail(CompareStatus::CountMismatch, "x=" + std::to_string(k));
        for (std::size_t i = 0; i < a.size(); ++i)
            if (abs(a[i] - b[i]) > 1) return fail(CompareStatus::CountMismatch, "x=" + std::to_string(k) + " moved more than 1");
    }
    for (std::size_t c = 0; c + 1 < AL.size(); ++c)
        for (std::size_t i = 0; i < AL[c].size(); ++i)
            for (std::size_t j = 0; j < AL[c + 1].size(); ++j)
                if (sgn(AL[c][i] - AL[c + 1][j]) * sgn(BL[c][i] - BL[c + 1][j]) < 0)
                    return fail(CompareStatus::SwitchFound, "x=" + std::to_string(x0 + static_cast<long>(c)));
    for (long k = x0; k < x1; ++k) {
        std::size_t c = static_cast<std::size_t>(k - x0);
        using End = std::pair<int, std::size_t>;  // side (0 left, 1 right), index from the bottom
        auto ends_of = [&](const std::vector<RVec>& piece, const std::vector<Rat>& L, const std::vector<Rat>& R) -> std::optional<std::pair<End, End>> {
            auto locate = [&](const RVec& p) -> std::optional<End> {
                const auto& v = p[0] == k ? L : R;
                int sd = p[0] == k ? 0 : 1;
                if (p[0] != k && p[0] != k + 1) return std::nullopt;
                auto it = std::find(v.begin(), v.end(), p[1]);
                if (it == v.end()) return std::nullopt;
                return End{sd, static_cast<std::size_t>(it - v.begin())};
            };
            auto e0 = locate(piece.front()), e1 = locate(piece.back());
            if (!e0 || !e1) return std::nullopt;
            return e0 < e1 ? std::make_pair(*e0, *e1) : std::make_pair(*e1, *e0);
        };
        auto collect = [&](const PolygonFamily& F, const std::vector<Rat>& L, const std::vector<Rat>& R,
                           std::map<std::pair<End, End>, std::vector<RVec>>& out) {
            for (auto& p : clip_pieces(F, Rat(k), Rat(k + 1), Rat(y0), Rat(y1))) {
                bool degenerate = true;
                for (auto& q : p)
                    if (q[0] != p.front()[0]) degenerate = false;
                if (degenerate) continue;  // runs along a boundary line or touches it
                auto e = ends_of(p, L, R);
                if (!e) return false;
                std::vector<RVec> piece = p;
                if (!(piece.front()[0] == k && e->first.first == 0 && piece.front()[1] == L[e->first.second]) &&
                    !(piece.front()[0] == k + 1 && e->first.first == 1 && piece.front()[1] == R[e->first.second]))
                    std::reverse(piece.begin(), piece.end());
                out[*e] = piece;
            }
            return true;
        };
        std::map<std::pair<End, End>, std::vector<RVec>> pa, pb;
        if (!collect(A, AL[c], AL[c + 1], pa) || !collect(B, BL[c], BL[c + 1], pb))
            return fail(CompareStatus::MatchingFailure, "piece with an interior end in column " + std::to_string(k));
        if (pa.size() != pb.size()) return fail(CompareStatus::MatchingFailure, "piece counts differ in column " + std::to_string(k));
        for (auto& [key, piece] : pa) {
            auto it = pb.find(key);
            if (it == pb.end()) return fail(CompareStatus::MatchingFailure, "unmatched component in column " + std::to_string(k));
            std::vector<RVec> da, db;
            for (std::size_t i = 0; i + 1 < piece.size(); ++i) {
                auto d = densify(piece[i], piece[i + 1]);
                da.insert(da.end(), d.begin() + (i ? 1 : 0), d.end());
            }
            for (std::size_t i = 0; i + 1 < it->second.size(); ++i) {
                auto d = densify(it->second[i], it->second[i + 1]);
                db.insert(db.end(), d.begin() + (i ? 1 : 0), d.end());
            }
            Rat d = frechet_sq(da, db);
            if (d > vm.max_disp_sq) vm.max_disp_sq = d;
            ++vm.pairs;
        }
    }
    if (vm.max_disp_sq > 2) return fail(CompareStatus::MatchingFailure, "displacement above sqrt 2");
    return vm;
}

}  // namespace plaid

#endif  // PLAID_QUASI_ISO_HPP
