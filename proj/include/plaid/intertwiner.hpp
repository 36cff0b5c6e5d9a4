#ifndef PLAID_INTERTWINER_HPP
#define PLAID_INTERTWINER_HPP

#include "graph_pet.hpp"
#include "plaid_pet.hpp"

#include <atomic>
#include <thread>

namespace plaid {

/// Runs f(i) for i in [0,n) on up to `jobs` threads.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Projective intertwiner.

/// +1 on the half x <= y, -1 on x >= y (x == y resolves to +1).
inline int psi_branch(const RVec& v) { return v[0] <= v[1] ? 1 : -1; }

/// Psi(x,y,z,P) = (x-y, -y-1, z+P+1, P)/(2-P) + branch*(1,0,0,0), as a representative mod the graph lattice.
inline RVec psi(const RVec& v, int branch = 0) {
    if (branch == 0) branch = psi_branch(v);
    const Rat& P = v[3];
    Rat s = 1 / (2 - P);
    RVec r = {s * (v[0] - v[1]) + branch, s * (-v[1] - 1), s * (v[2] + P + 1), s * P};
    return r;
}

/// Branch shared by every vertex of Q; throws AmbiguousBranch otherwise.
inline int psi_branch(const Polytope& Q) {
    bool le = true, ge = true;
    for (auto& v : Q.verts) {
        if (v[0] > v[1]) le = false;
        if (v[0] < v[1]) ge = false;
    }
    if (le) return 1;
    if (ge) return -1;
    throw Error("AmbiguousBranch", "polytope straddles x = y");
}

/// Image of a polytope of the plaid space; the map is projective with positive denominator, so faces go to faces.
inline Polytope psi(const Polytope& Q, int branch = 0) {
    if (branch == 0) branch = psi_branch(Q);
    Polytope R;
    R.dim = 4;
    for (auto& v : Q.verts) R.verts.push_back(psi(v, branch));
    // (1+A)(x,y,z,P) = (2(X-b) - 2Y - 1 - A, -2Y - 1 - A, 2Z - 1 - 3A, 2A)
    for (auto& h : Q.hs) {
        Rat ax(h.a[0]), ay(h.a[1]), az(h.a[2]), ap(h.a[3]), b(h.b);
        RVec n = {2 * ax, -2 * ax - 2 * ay, 2 * az, -ax - ay - 3 * az + 2 * ap - b};
        R.hs.push_back(make_halfspace(n, 2 * branch * ax + ax + ay + az + b));
    }
    sort_vertices(R.verts);
    std::sort(R.hs.begin(), R.hs.end());
    return R;
}

// ---------------------------------------------------------------------------
// Hitset.

struct HitsetOctagon {
    Rat P;
    /// Cyclic order.
    std::array<RVec, 8> vertices() const {
        return {{{Rat(-1), Rat(-1)},
                 {P - 1, P - 1},
                 {1 - P, Rat(-1)},
                 {Rat(1), P - 1},
                 {Rat(1), Rat(1)},
                 {1 - P, 1 - P},
                 {P - 1, Rat(1)},
                 {Rat(-1), 1 - P}}};
    }
};

enum class Membership { Inside, Boundary, Outside };

namespace detail {

/// Sign of the orientation of (a,b,c).
inline int orient2(const RVec& a, const RVec& b, const RVec& c) {
    Rat d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return sgn(d);
}

}  // namespace detail

/// Point-in-octagon on the (x,y) projection (the octagon is not convex).
inline Membership hitset_membership(const Rat& P, const Rat& x, const Rat& y) {
    auto V = HitsetOctagon{P}.vertices();
    RVec p = {x, y};
    bool inside = false;
    for (int i = 0; i < 8; ++i) {
        const RVec& a = V[i];
        const RVec& b = V[(i + 1) % 8];
        if (detail::orient2(a, b, p) == 0 && std::min(a[0], b[0]) <= x && x <= std::max(a[0], b[0]) &&
            std::min(a[1], b[1]) <= y && y <= std::max(a[1], b[1]))
            return Membership::Boundary;
        if ((a[1] > y) != (b[1] > y)) {
            Rat xc = a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if (xc > x) inside = !inside;
        }
    }
    return inside ? Membership::Inside : Membership::Outside;
}

// ---------------------------------------------------------------------------
// Dipole and plaid reconstruction.

/// The affine map Omega of the plane at parameter P (fractional parts dropped).
inline RVec omega_map(const Rat& P, const Rat& x, const Rat& y) {
    return {(x - y) / (2 - P), (-2 - P + P * P + P * x + 2 * y - 2 * P * y) / (2 * P - 4)};
}

inline RVec omega_inverse(const Rat& P, const Rat& u, const Rat& v) {
    // x - y = (2-P)u ; P x + (2-2P) y = (2P-4) v + 2 + P - P^2
    Rat d = (2 - P) * u, e = (2 * P - 4) * v + 2 + P - P * P;
    Rat y = (e - P * d) / (P + 2 - 2 * P);
    return {d + y, y};
}

/// Vertices of the fundamental dipole, counterclockwise, as Omega^{-1} of the unit square corners.
inline std::array<RVec, 4> dipole(const Rat& P) {
    return {omega_inverse(P, 0, 1), omega_inverse(P, 1, 1), omega_inverse(P, 1, 0), omega_inverse(P, 0, 0)};
}

/// ([a],[b]) of the graph grid point sharing the square with a plaid center classified to v.
/// The formula holds on the fundamental dipole, so v is first moved there by a multiple of (2,P).
inline RVec plaid_reconstruction(const RVec& v) {
    const Rat& P = v[3];
    for (long k : {0L, 1L, -1L}) {
        RVec w = omega_map(P, v[0] + 2 * k, v[1] + k * P);
        if (w[0] >= 0 && w[0] <= 1 && w[1] >= 0 && w[1] <= 1) return {frac(w[0]), frac(w[1])};
    }
    throw Error("OutOfRange", "point has no representative in the fundamental dipole");
}

/// Grid-side hi rule: the fractional part of the second coordinate exceeds P.
inline bool grid_is_hi(const Param& pr, const RVec& zeta) { return frac(zeta[1]) > pr.P; }

inline std::array<RVec, 4> h_hi(const Rat& P) {
    return {{{P - 1, P - 1}, {1 - P, Rat(-1)}, {3 - 3 * P, 1 - 2 * P}, {1 - P, 1 - P}}};
}
inline std::array<RVec, 4> h_lo(const Rat& P) {
    return {{{1 - 3 * P, 1 - 3 * P}, {1 - P, 1 - P}, {P - 1, Rat(1)}, {-1 - P, 1 - 2 * P}}};
}

/// Plaid-side hi/lo: membership of (x,y) in the plane orbit of H^hi or H^lo under (2,P),(0,2); 0 = neither or boundary.
inline int plaid_hi_lo(const Rat& P, const Rat& x, const Rat& y) {
    auto inside = [&](const std::array<RVec, 4>& q, const RVec& p) {
        int s0 = 0;
        for (int i = 0; i < 4; ++i) {
            int s = detail::orient2(q[i], q[(i + 1) % 4], p);
            if (s == 0) return false;
            if (s0 == 0) s0 = s;
            if (s != s0) return false;
        }
        return true;
    };
    int res = 0;
    for (long k = -3; k <= 3; ++k)
        for (long l = -4; l <= 4; ++l) {
            RVec p = {x - 2 * k, y - k * P - 2 * l};
            if (inside(h_hi(P), p)) res |= 1;
            if (inside(h_lo(P), p)) res |= 2;
        }
    return res == 1 ? 1 : res == 2 ? -1 : 0;
}

// ---------------------------------------------------------------------------
// Polytope correspondence.

struct GraphTarget {
    int cell = -1;                // index into the partition's cells
    std::array<long, 3> word{};  // lattice word applied to the cell
    Edge2 label{};
    Polytope hv;  // the translated cell
};

struct CorrespondenceEntry {
    int k = -1;
    TriplePolytope tri;
    Polytope image;  // Psi(Pi_k), moved by a lattice word near the reduction domain
    int branch = 1;
    std::vector<GraphTarget> plus, minus;
    int orientation_type = -1;
    bool null() const { return tri.null(); }
    int group() const {
        if (null()) return 0;
        if (plus.size() == 1 && minus.size() == 1) return 1;
        return plus.size() == 2 ? 2 : 3;
    }
};

namespace detail {

struct Translate {
    int cell;
    std::array<long, 3> word;
    Polytope hv;
    RVec lo, hi;
};

/// Lattice translates of the cells near the reduction domain, cached per partition.
inline const std::vector<Translate>& graph_translates(bool plus) {
    static std::once_flag once[2];
    static std::vector<Translate> cache[2];
    std::call_once(once[plus ? 1 : 0], [plus] {
        const GraphPartition& G = plus ? graph_plus() : graph_minus();
        auto& out = cache[plus ? 1 : 0];
        for (int i = 0; i < static_cast<int>(G.cells().size()); ++i)
            for (long a = -3; a <= 3; ++a)
                for (long b = -3; b <= 3; ++b)
                    for (long c = -3; c <= 3; ++c) {
                        Polytope T = transform(G.cells()[i].hv, graph_lattice_word(a, b, c));
                        auto [lo, hi] = T.bbox();
                        if (hi[0] < -2 || lo[0] > 3 || hi[1] < -4 || lo[1] > 4 || hi[2] < -3 || lo[2] > 5) continue;
                        out.push_back({i, {a, b, c}, std::move(T), lo, hi});
                    }
    });
    return cache[plus ? 1 : 0];
}

/// Lattice translates of the partition cells whose intersection with Q is full dimensional.
inline std::vector<GraphTarget> graph_targets(const GraphPartition& G, const Polytope& Q) {
    std::vector<GraphTarget> out;
    auto [lo, hi] = Q.bbox();
    Rat vol = volume(Q), acc = 0;
    for (auto& t : graph_translates(G.plus())) {
        bool sep = false;
        for (int d = 0; d < 4 && !sep; ++d)
            if (t.hi[d] <= lo[d] || hi[d] <= t.lo[d]) sep = true;
        if (sep) continue;
        Polytope I = intersect(Q, t.hv);
        if (I.empty()) continue;
        acc += volume(I);
        out.push_back({t.cell, t.word, G.cells()[t.cell].label, t.hv});
    }
    if (acc != vol) throw Error("UncontainedImage", "graph translates do not tile the image");
    return out;
}

}  // namespace detail

/// Psi image of one RTP cell with its targets in both graph partitions.
inline CorrespondenceEntry correspond(const TriplePolytope& t) {
    CorrespondenceEntry e;
    e.tri = t;
    e.branch = psi_branch(t.hv);
    Polytope img = psi(t.hv, e.branch);
    auto [r, w] = GraphPartition::reduce(centroid(img));
    e.image = transform(img, graph_lattice_word(-w[0], -w[1], -w[2]));
    e.plus = detail::graph_targets(graph_plus(), e.image);
    e.minus = detail::graph_targets(graph_minus(), e.image);
    if (e.plus.empty() || e.minus.empty() || e.plus.size() > 2 || e.minus.size() > 2 ||
        (e.plus.size() == 2 && e.minus.size() == 2))
        throw Error("UncontainedImage", "cell " + t.code + " meets too many graph cells");
    return e;
}

// ---------------------------------------------------------------------------
// Edge crossing problems.

/// The two sides of a square an edge dT(i,j) can leave through (sign pattern is the same for every A in (0,1)).
inline std::array<char, 2> potential_sides(const Edge2& e) {
    Rat A(1, 2);
    Rat x = A * e[0] + e[1], y = ((1 + 2 * A - A * A) * e[0] - 2 * A * e[1]) / (1 + A);
    if (x == 0 || y == 0) throw Error("UnlabeledInput", "trivial edge");
    return {x > 0 ? 'E' : 'W', y > 0 ? 'N' : 'S'};
}

inline bool can_cross(const Edge2& e, char side) {
    auto s = potential_sides(e);
    return s[0] == side || s[1] == side;
}

inline char other_side(const Edge2& e, char side) {
    auto s = potential_sides(e);
    return s[0] == side ? s[1] : s[0];
}

/// Goal side of Sigma_0 for the (+) or (-) edge under an orientation type.
inline char goal_side(const PlaidLabel& center, int type, bool plus) {
    bool head = (type == 1) == plus;
    return head ? center.b : center.a;
}

/// Types under which every target label can reach its goal side.
inline std::vector<int> feasible_types(const CorrespondenceEntry& e) {
    std::vector<int> out;
    const PlaidLabel& c = e.tri.parents[1].label;
    for (int type : {1, 0}) {
        bool ok = true;
        for (auto& t : e.plus) ok = ok && can_cross(t.label, goal_side(c, type, true));
        for (auto& t : e.minus) ok = ok && can_cross(t.label, goal_side(c, type, false));
        if (ok) out.push_back(type);
    }
    return out;
}

/// Guessed type: the unique feasible one, else the one sending each edge toward the side of its dominant component.
inline int guess_type(const CorrespondenceEntry& e) {
    if (e.null()) return -1;
    auto f = feasible_types(e);
    if (f.empty()) throw Error("CountMismatch", "no feasible orientation type for " + e.tri.code);
    if (f.size() == 1) return f[0];
    const PlaidLabel& c = e.tri.parents[1].label;
    Rat A(1, 2);
    auto dominant = [&](const Edge2& l) {
        Rat x = A * l[0] + l[1], y = ((1 + 2 * A - A * A) * l[0] - 2 * A * l[1]) / (1 + A);
        return abs(x) > abs(y) ? potential_sides(l)[0] : potential_sides(l)[1];
    };
    int best = -1, bestScore = -1;
    for (int type : f) {
        int score = 0;
        for (auto& t : e.plus) score += dominant(t.label) == goal_side(c, type, true);
        for (auto& t : e.minus) score += dominant(t.label) == goal_side(c, type, false);
        if (score > bestScore) best = type, bestScore = score;
    }
    return best;
}

enum class Method { None, Graph, GraphCell, Plaid, OutOfBounds };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Graph: return "graph";
        case Method::GraphCell: return "graph-cell";
        case Method::Plaid: return "plaid";
        case Method::OutOfBounds: return "out-of-bounds";
        default: return "-";
    }
}

struct CrossingProblem {
    int k = -1;
    bool plus = true;
    int target = 0;  // which of the one or two graph cells on this side
    Edge2 edge{};
    char side = 0;
    char goal = 0;
    bool solved = false;
    Method method = Method::None;
    std::string str() const {
        return std::to_string(k) + " " + (plus ? "+" : "-") + " " + std::to_string(edge[0]) + " " + std::to_string(edge[1]) + " " + side;
    }
};

/// Graph Avoidance criteria as closed vertex conditions on (x,y,A); false when no criterion applies.
inline bool graph_avoidance_holds(const Edge2& e, char side, const RVec& v) {
    const Rat &x = v[0], &y = v[1], &A = v[3];
    auto in = [](const Rat& t, const Rat& lo, const Rat& hi) { return lo <= t && t <= hi; };
    if (e == Edge2{-1, 0} && side == 'W') return in(x, A, 1);
    if (e == Edge2{-1, 1} && side == 'E') return in(x, 0, A);
    if (e == Edge2{0, -1} && side == 'N') return in(x, 0, 1) && in(y, A, 1);
    if (e == Edge2{0, 1} && side == 'S') return in(x, 0, 1) && in(y, 2 * A, 1 + A);
    if (e == Edge2{1, -1} && side == 'W') return in(x, 1 - A, 1);
    if (e == Edge2{1, 0} && side == 'E') return in(x, 0, 1 - A);
    return false;
}

inline bool graph_criterion_exists(const Edge2& e, char side) {
    static const std::set<std::pair<Edge2, char>> known = {
        {{-1, 0}, 'W'}, {{-1, 1}, 'E'}, {{0, -1}, 'N'}, {{0, 1}, 'S'}, {{1, -1}, 'W'}, {{1, 0}, 'E'}};
    return known.count({e, side}) > 0;
}

/// True when some lattice translate of Q satisfies the criterion at every vertex.
inline bool graph_method_on(const Polytope& Q, const Edge2& e, char side) {
    if (!graph_criterion_exists(e, side)) return false;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            Affine w = graph_lattice_word(a, b, 0);
            bool ok = true;
            for (auto& v : Q.verts)
                if (!graph_avoidance_holds(e, side, w(v))) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
    return false;
}

/// Planar halfspace a x + b y <= c0 + c1 P, lifted to (x,y,z,P).
struct PlanarConstraint {
    long a, b, c0, c1;
    Halfspace lift(int sign = 1) const { return make_halfspace({Rat(sign * a), Rat(sign * b), Rat(0), Rat(-c1)}, Rat(c0)); }
};

/// Polytope of plaid space from planar constraints, with |z| <= 1 and P in [0,1].
inline Polytope planar_polytope(const std::vector<PlanarConstraint>& cs, int sign = 1) {
    Polytope Z = PlaidPartition::cube();
    for (auto& c : cs) Z = clip(Z, c.lift(sign));
    if (Z.empty()) throw Error("DegeneratePolytope", "empty planar set");
    return Z;
}

struct ZSet {
    Edge2 edge;
    char side;
    bool excluder;
    Polytope Z;
};

/// The ten Plaid Method sets: five listed ones and their negatives.
inline const std::vector<ZSet>& z_sets() {
    static const std::vector<ZSet> zs = [] {
        // y <= x ; x >= P-1 ; y >= -1 ; x <= 1-P
        std::vector<PlanarConstraint> n11 = {{-1, 1, 0, 0}, {-1, 0, 1, -1}, {0, -1, 1, 0}, {1, 0, 1, -1}};
        // y <= x ; y >= -1 ; x <= 1-P
        std::vector<PlanarConstraint> e11 = {{-1, 1, 0, 0}, {0, -1, 1, 0}, {1, 0, 1, -1}};
        // y <= x ; y <= P-1 ; y >= x-2+P ; y >= -1
        std::vector<PlanarConstraint> s01 = {{-1, 1, 0, 0}, {0, 1, -1, 1}, {1, -1, 2, -1}, {0, -1, 1, 0}};
        struct Row {
            Edge2 e;
            char side;
            bool ex;
            const std::vector<PlanarConstraint>* c;
        };
        std::vector<Row> rows = {{{1, 1}, 'N', true, &n11},
                                 {{1, 1}, 'E', false, &e11},
                                 {{0, 1}, 'S', false, &s01},
                                 {{1, 0}, 'E', false, &e11},
                                 {{0, -1}, 'W', false, &s01}};
        std::vector<ZSet> out;
        for (auto& r : rows) out.push_back({r.e, r.side, r.ex, planar_polytope(*r.c)});
        for (auto& r : rows) out.push_back({{-r.e[0], -r.e[1]}, opposite(r.side), r.ex, planar_polytope(*r.c, -1)});
        return out;
    }();
    return zs;
}

inline bool plaid_method(const Polytope& Pk, const Edge2& e, char side) {
    for (auto& z : z_sets()) {
        if (z.edge != e || z.side != side) continue;
        if (z.excluder) return intersect(Pk, z.Z).empty();
        for (auto& v : Pk.verts)
            if (!z.Z.contains(v)) return false;
        return true;
    }
    return false;
}

/// The four out-of-bounds polytopes B_1..B_4.
inline const std::array<Polytope, 4>& out_of_bounds_sets() {
    static const std::array<Polytope, 4> bs = [] {
        // B'_1: y >= -1, x <= P-1, y <= x ; B'_2: y >= -1, x <= 1, y <= x-2+P
        std::vector<PlanarConstraint> b1 = {{0, -1, 1, 0}, {1, 0, -1, 1}, {-1, 1, 0, 0}};
        std::vector<PlanarConstraint> b2 = {{0, -1, 1, 0}, {1, 0, 1, 0}, {-1, 1, -2, 1}};
        return std::array<Polytope, 4>{planar_polytope(b1), planar_polytope(b2), planar_polytope(b1, -1), planar_polytope(b2, -1)};
    }();
    return bs;
}

/// Index 1..4 of an out-of-bounds set containing Pk, or 0.
inline int out_of_bounds_test(const Polytope& Pk) {
    const auto& bs = out_of_bounds_sets();
    for (int i = 0; i < 4; ++i) {
        bool in = true;
        for (auto& v : Pk.verts)
            if (!bs[i].contains(v)) {
                in = false;
                break;
            }
        if (in) return i + 1;
    }
    return 0;
}

/// Problems of one entry: for each target label the potential side that is not the goal.
inline std::vector<CrossingProblem> problems_of(const CorrespondenceEntry& e) {
    std::vector<CrossingProblem> out;
    if (e.null()) return out;
    const PlaidLabel& c = e.tri.parents[1].label;
    for (bool plus : {true, false}) {
        const auto& ts = plus ? e.plus : e.minus;
        char goal = goal_side(c, e.orientation_type, plus);
        for (int i = 0; i < static_cast<int>(ts.size()); ++i) {
            CrossingProblem p;
            p.k = e.k;
            p.plus = plus;
            p.target = i;
            p.edge = ts[i].label;
            p.goal = goal;
            p.side = other_side(p.edge, goal);
            out.push_back(p);
        }
    }
    return out;
}

/// Tries graph (image, then graph cell), plaid, and out-of-bounds in that order.
inline void solve(CrossingProblem& p, const CorrespondenceEntry& e) {
    const auto& ts = p.plus ? e.plus : e.minus;
    if (graph_method_on(e.image, p.edge, p.side)) {
        p.solved = true, p.method = Method::Graph;
    } else if (graph_method_on(ts[p.target].hv, p.edge, p.side)) {
        p.solved = true, p.method = Method::GraphCell;
    } else if (plaid_method(e.tri.hv, p.edge, p.side)) {
        p.solved = true, p.method = Method::Plaid;
    } else if (out_of_bounds_test(e.tri.hv)) {
        p.solved = true, p.method = Method::OutOfBounds;
    }
}

// ---------------------------------------------------------------------------
// Indexed correspondence and the prover.

namespace detail {

inline IVec min_scaled_vertex(const Polytope& P, long scale = 60) {
    IVec best;
    for (auto& v : P.verts) {
        IVec w;
        for (auto& x : v) {
            Rat t = x * scale;
            if (!is_integer(t)) throw Error("Capacity", "vertex not on the 1/60 grid");
            w.push_back(t.get_num());
        }
        if (best.empty() || w < best) best = w;
    }
    return best;
}

}  // namespace detail

/// All 218 entries, indexed: null cells, single/single, double on (+), double on (-), each block sorted by (code, smallest vertex).
inline std::vector<CorrespondenceEntry> build_correspondence(unsigned jobs = 0) {
    auto raw = triple_partition_raw();
    std::vector<CorrespondenceEntry> ents(raw.size());
    parallel_for(raw.size(), jobs, [&](std::size_t i) {
        ents[i] = correspond(raw[i]);
        ents[i].orientation_type = guess_type(ents[i]);
    });
    std::vector<std::tuple<int, std::string, IVec, std::size_t>> keys;
    for (std::size_t i = 0; i < ents.size(); ++i)
        keys.emplace_back(ents[i].group(), ents[i].tri.code, detail::min_scaled_vertex(ents[i].tri.hv), i);
    std::sort(keys.begin(), keys.end());
    std::vector<CorrespondenceEntry> out;
    for (auto& key : keys) {
        out.push_back(std::move(ents[std::get<3>(key)]));
        out.back().k = static_cast<int>(out.size()) - 1;
        out.back().tri.index = out.back().k;
        out.back().tri.orientation_type = out.back().orientation_type;
    }
    return out;
}

struct ProofReport {
    std::vector<CorrespondenceEntry> entries;
    std::vector<CrossingProblem> problems;
    int solved() const {
        int n = 0;
        for (auto& p : problems) n += p.solved;
        return n;
    }
    int recalcitrant() const { return static_cast<int>(problems.size()) - solved(); }
    std::map<std::string, int> by_method() const {
        std::map<std::string, int> m;
        for (auto& p : problems)
            if (p.solved) ++m[method_name(p.method)];
        return m;
    }
};

inline ProofReport prove_all(unsigned jobs = 0) {
    ProofReport r;
    r.entries = build_correspondence(jobs);
    for (auto& e : r.entries)
        for (auto& p : problems_of(e)) r.problems.push_back(p);
    if (r.problems.size() != 462) throw Error("CountMismatch", "expected 462 crossing problems, got " + std::to_string(r.problems.size()));
    parallel_for(r.problems.size(), jobs, [&](std::size_t i) { solve(r.problems[i], r.entries[r.problems[i].k]); });
    return r;
}

inline void write_report(std::ostream& os, const ProofReport& r) {
    os << "# k sign i j side status method\n";
    for (auto& p : r.problems)
        os << p.k << " " << (p.plus ? '+' : '-') << " " << p.edge[0] << " " << p.edge[1] << " " << p.side << " "
           << (p.solved ? "solved" : "recalcitrant") << " " << method_name(p.method) << "\n";
    os << "# summary\n";
    os << "problems " << r.problems.size() << "\n";
    os << "solved " << r.solved() << "\n";
    os << "recalcitrant " << r.recalcitrant() << "\n";
    for (auto& [m, n] : r.by_method()) os << "method " << m << " " << n << "\n";
}

// ---------------------------------------------------------------------------
// Recalcitrant analysis.

/// Graph-space symmetry induced by the half turn of the square: (x,y) -> (1-x, 1+2A-y).
inline RVec half_turn(const RVec& v) { return {1 - v[0], 1 + 2 * v[3] - v[1], v[2], v[3]}; }

/// Catch case 1..4 of a recalcitrant problem, and whether it is the half-turned version.
inline std::pair<int, bool> catch_case(const Edge2& e, char side) {
    static const std::map<std::pair<Edge2, char>, int> base = {
        {{{-1, 0}, 'S'}, 1}, {{{-1, 0}, 'W'}, 2}, {{{0, -1}, 'N'}, 3}, {{{0, -1}, 'W'}, 4}};
    auto it = base.find({e, side});
    if (it != base.end()) return {it->second, false};
    it = base.find({Edge2{-e[0], -e[1]}, opposite(side)});
    if (it != base.end()) return {it->second, true};
    return {0, false};
}

/// Case 3: the edge (-1,P) leaving through the top ends in the square diagonally up and left (checked at P = 0 and 1, endpoints affine in P).
inline bool case3_vector_geometry() {
    for (int Pi = 0; Pi <= 1; ++Pi) {
        Rat P(Pi);
        // danger zone of (0,-1,N): (0,1),(1,1),(1,1-P); endpoint = start + (-1,P)
        for (auto& st : std::vector<RVec>{{Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1), 1 - P}}) {
            Rat ex = st[0] - 1, ey = st[1] + P;
            if (ex < -1 || ex > 0 || ey < 1 || ey > 2) return false;
        }
    }
    return true;
}

/// Checks the ending condition of cases 1, 2, 4 on a lattice translate of Q.
inline bool catch_ending_holds(const Polytope& Q, int kase, bool turned) {
    if (kase == 3) return case3_vector_geometry();
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            Affine w = graph_lattice_word(a, b, 0);
            bool ok = true;
            for (auto& v0 : Q.verts) {
                RVec v = w(v0);
                if (turned) v = half_turn(v);
                const Rat &x = v[0], &y = v[1], &A = v[3];
                if (kase == 1 || kase == 2)
                    ok = 0 <= x && x <= A;
                else
                    ok = 0 <= x && x <= 1 && 1 - A <= y && y <= 1 + A;
                if (!ok) break;
            }
            if (ok) return true;
        }
    return false;
}

struct Concatenation {
    int k = -1;
    bool forward = true;
    std::vector<std::pair<int, std::array<long, 3>>> partners;  // Lambda_1 translates of RTP cells covering the image
    bool covered = false;
    bool partners_grid_empty = false;  // every partner passes the out-of-bounds test
    int partner() const { return partners.size() == 1 ? partners[0].first : -1; }
};

/// Covers F(Pi_k) (or F^{-1}(Pi_k)) by Lambda_1 translates of RTP cells; exact by volume.
inline Concatenation concatenate(const std::vector<CorrespondenceEntry>& ents, int k, bool forward) {
    Concatenation c;
    c.k = k;
    c.forward = forward;
    const auto& t = ents[k].tri;
    Polytope img = pet_step(t.hv, t.parents[1].label, forward);
    auto [r, w] = reduce_lambda1(centroid(img));
    Rat vol = volume(img), acc = 0;
    for (long da = -1; da <= 1; ++da)
        for (long db = -1; db <= 1; ++db)
            for (long dc = -1; dc <= 1; ++dc) {
                std::array<long, 3> ww = {w[0] + da, w[1] + db, w[2] + dc};
                Polytope back = transform(img, lambda1_word(ww[0], ww[1], ww[2]).inv());
                for (auto& e : ents) {
                    Polytope I = intersect(back, e.tri.hv);
                    if (I.empty()) continue;
                    acc += volume(I);
                    c.partners.push_back({e.k, ww});
                }
            }
    c.covered = acc == vol;
    c.partners_grid_empty = c.covered && !c.partners.empty();
    for (auto& [j, ww] : c.partners)
        if (!out_of_bounds_test(ents[j].tri.hv)) c.partners_grid_empty = false;
    return c;
}

struct RecalcitrantCase {
    CrossingProblem problem;
    int kase = 0;
    bool turned = false;
    bool ending_ok = false;
    Concatenation concat;
};

struct CatchReport {
    std::vector<RecalcitrantCase> cases;
    std::array<int, 5> case_counts{};  // base (unturned) counts per case
    std::array<int, 5> turned_counts{};
    int errant_hits = 0;
    std::vector<int> same_side_cells;  // cells whose two problems share a side and which carry a recalcitrant problem
    bool symmetric = false;
    bool all_ok() const {
        for (auto& c : cases)
            if (!c.ending_ok || !c.concat.partners_grid_empty) return false;
        return errant_hits == 0 && symmetric;
    }
};

/// Forbidden labels of the errant-edge scan, keyed by (center exit, head entry, head exit).
inline const std::map<std::array<char, 3>, std::vector<Edge2>>& errant_table() {
    static const std::map<std::array<char, 3>, std::vector<Edge2>> t = [] {
        std::map<std::array<char, 3>, std::vector<Edge2>> m = {
            {{'E', 'W', 'S'}, {{1, 0}, {1, -1}}},
            {{'E', 'W', 'N'}, {{-1, 0}, {-1, 1}}},
            {{'E', 'W', 'E'}, {{1, 0}, {1, -1}, {-1, 0}, {-1, 1}}},
            {{'S', 'N', 'E'}, {{-1, -1}, {0, -1}}},
            {{'S', 'N', 'W'}, {{1, 1}, {0, 1}}},
            {{'S', 'N', 'S'}, {{-1, -1}, {1, 1}, {0, 1}, {0, -1}}},
        };
        auto base = m;
        for (auto& [k, v] : base) {
            std::vector<Edge2> neg;
            for (auto& e : v) neg.push_back({-e[0], -e[1]});
            m[{opposite(k[0]), opposite(k[1]), opposite(k[2])}] = neg;
        }
        return m;
    }();
    return t;
}

/// Number of target labels hitting the forbidden list at either end of any triple.
inline int errant_label_scan(const std::vector<CorrespondenceEntry>& ents) {
    int hits = 0;
    const auto& tab = errant_table();
    for (auto& e : ents) {
        if (e.null()) continue;
        const auto& P = e.tri.parents;
        bool headPlus = e.orientation_type == 1;
        auto check = [&](std::array<char, 3> key, const std::vector<GraphTarget>& ts) {
            auto it = tab.find(key);
            if (it == tab.end()) return;
            for (auto& t : ts)
                for (auto& f : it->second)
                    if (t.label == f) ++hits;
        };
        check({P[1].label.b, P[2].label.a, P[2].label.b}, headPlus ? e.plus : e.minus);
        check({P[1].label.a, P[0].label.b, P[0].label.a}, headPlus ? e.minus : e.plus);
    }
    return hits;
}

/// Lambda_1-class of -Pi_k among the RTP cells.
inline int negated_cell(const std::vector<CorrespondenceEntry>& ents, int k) {
    std::vector<RVec> nv;
    for (auto& v : ents[k].tri.hv.verts) nv.push_back({-v[0], -v[1], -v[2], v[3]});
    sort_vertices(nv);
    for (auto& e : ents)
        if (e.tri.hv.verts == nv) return e.k;
    return -1;
}

inline CatchReport recalcitrant_analysis(const ProofReport& r) {
    CatchReport cr;
    std::map<int, int> recPerCell;
    for (auto& p : r.problems) {
        if (p.solved) continue;
        ++recPerCell[p.k];
        RecalcitrantCase rc;
        rc.problem = p;
        auto [kase, turned] = catch_case(p.edge, p.side);
        rc.kase = kase;
        rc.turned = turned;
        const auto& e = r.entries[p.k];
        rc.ending_ok = kase != 0 && catch_ending_holds(e.image, kase, turned);
        // follow the arc toward the side square of the offending edge
        bool forward = p.goal == e.tri.parents[1].label.b;
        rc.concat = concatenate(r.entries, p.k, forward);
        (turned ? cr.turned_counts : cr.case_counts)[kase]++;
        cr.cases.push_back(rc);
    }
    cr.errant_hits = errant_label_scan(r.entries);
    for (auto& [k, n] : recPerCell) {
        std::vector<char> sides;
        for (auto& p : r.problems)
            if (p.k == k) sides.push_back(p.side);
        if (sides.size() == 2 && sides[0] == sides[1]) cr.same_side_cells.push_back(k);
    }
    cr.symmetric = true;
    for (auto& c : cr.cases) {
        int k2 = negated_cell(r.entries, c.problem.k);
        bool found = false;
        for (auto& p : r.problems)
            if (!p.solved && p.k == k2 && p.edge == Edge2{-c.problem.edge[0], -c.problem.edge[1]} && p.side == opposite(c.problem.side))
                found = true;
        if (!found) cr.symmetric = false;
    }
    return cr;
}

// ---------------------------------------------------------------------------
// Structural fingerprints of individually named cells.

/// Our indices are a sort order, so named cells are located by what they do rather than by number.
struct NamedCells {
    std::vector<int> sample;                  // codes NEWEWS / SWEWEN
    std::vector<int> pi7;                     // sample cells whose image is the listed vertex set mod the lattice
    std::vector<int> confined;                // (+,-1,-1,W) solved by a Z-confiner
    std::vector<int> cell_only;               // double-plus, (+,-1,1,E) fails on the image, holds on the graph cell
    std::vector<std::pair<int, int>> follow;  // EWEWES with (-,-1,0,S) recalcitrant and a single partner
    std::vector<int> same_side;
};

inline const std::vector<RVec>& pi7_image() {
    static const std::vector<RVec> v = [] {
        std::vector<std::array<int, 4>> raw = {{60, 60, 0, 30}, {60, 40, 20, 20}, {40, 40, 0, 20}, {60, 40, 0, 20},
                                               {60, 60, 0, 20}, {45, 45, 0, 15}, {60, 45, 15, 15}, {60, 45, 0, 15}};
        std::vector<RVec> out;
        for (auto& r : raw) out.push_back({Rat(r[0], 60), Rat(r[1], 60), Rat(r[2], 60), Rat(r[3], 60)});
        for (auto& x : out)
            for (auto& c : x) c.canonicalize();
        sort_vertices(out);
        return out;
    }();
    return v;
}

inline bool equal_mod_graph_word(const std::vector<RVec>& verts, const std::vector<RVec>& target) {
    if (verts.size() != target.size()) return false;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c) {
                Affine w = graph_lattice_word(a, b, c);
                std::vector<RVec> t;
                for (auto& v : verts) t.push_back(w(v));
                sort_vertices(t);
                if (t == target) return true;
            }
    return false;
}

inline NamedCells named_cells(const ProofReport& r, const CatchReport& cr) {
    NamedCells nc;
    for (auto& e : r.entries) {
        const std::string& c = e.tri.code;
        if (c != "NEWEWS" && c != "SWEWEN") continue;
        nc.sample.push_back(e.k);
        if (equal_mod_graph_word(e.image.verts, pi7_image())) nc.pi7.push_back(e.k);
    }
    for (auto& p : r.problems) {
        const auto& e = r.entries[p.k];
        if (p.plus && p.edge == Edge2{-1, -1} && p.side == 'W' && p.method == Method::Plaid) nc.confined.push_back(p.k);
        if (p.plus && p.edge == Edge2{-1, 1} && p.side == 'E' && e.group() == 2 && p.method == Method::GraphCell)
            nc.cell_only.push_back(p.k);
    }
    for (auto& c : cr.cases) {
        const auto& p = c.problem;
        if (!p.plus && p.edge == Edge2{-1, 0} && p.side == 'S' && r.entries[p.k].tri.code == "EWEWES" && c.concat.partner() >= 0)
            nc.follow.push_back({p.k, c.concat.partner()});
    }
    nc.same_side = cr.same_side_cells;
    return nc;
}

// ---------------------------------------------------------------------------
// Intertwining on actual parameters.

struct IntertwiningReport {
    std::string param;
    long points = 0;
    long psi_fail = 0, hitset_fail = 0, hilo_fail = 0, graph_recon_fail = 0, plaid_recon_fail = 0;
    bool ok() const { return points > 0 && psi_fail + hitset_fail + hilo_fail + graph_recon_fail + plaid_recon_fail == 0; }
};

/// Checks every grid point of [0,side) x [0,side) (side defaults to omega) and the diagonal points zeta + dT(n,n), |n| <= diag.
inline IntertwiningReport intertwining_check(const Param& pr, long side = 0, long diag = 10) {
    if (side <= 0) side = pr.omega;
    IntertwiningReport r;
    r.param = pr.name();
    CanonicalMap T = canonical_T(pr);
    auto pts = grid_points_in_box(T, Rat(0), Rat(side), Rat(0), Rat(side));
    std::vector<std::array<long, 2>> all = pts;
    if (!pts.empty())
        for (long n = -diag; n <= diag; ++n)
            if (n != 0) all.push_back({pts[0][0] + n, pts[0][1] + n});
    for (auto& mn : all) {
        RVec z = T.T(mn[0], mn[1]);
        Rat cx = floor_rat(z[0]) + Rat(1, 2), cy = floor_rat(z[1]) + Rat(1, 2);
        RVec red = reduce_lambda1(plaid_classify(pr, cx, cy)).first;
        ++r.points;
        if (!equal_mod_graph_lattice(psi(red), graph_classify_xy(pr, z))) ++r.psi_fail;
        if (hitset_membership(pr.P, red[0], red[1]) == Membership::Outside) ++r.hitset_fail;  // the hitset is closed
        int hl = plaid_hi_lo(pr.P, red[0], red[1]);
        if (hl == 0 || (hl == 1) != grid_is_hi(pr, z)) ++r.hilo_fail;
        RVec fz = {frac(z[0]), frac(z[1])};
        if (reconstruction(graph_classify_mn(pr, mn[0], mn[1])) != fz) ++r.graph_recon_fail;
        try {
            if (plaid_reconstruction(red) != fz) ++r.plaid_recon_fail;
        } catch (const Error&) {
            ++r.plaid_recon_fail;
        }
    }
    return r;
}

}  // namespace plaid

#endif  // PLAID_INTERTWINER_HPP
