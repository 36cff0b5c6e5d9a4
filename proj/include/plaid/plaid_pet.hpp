#ifndef PLAID_PLAID_PET_HPP
#define PLAID_PLAID_PET_HPP

#include "polytope.hpp"

#include <mutex>

namespace plaid {

/// Ordered connector label; a = entry side, b = exit side. Zero chars mean the empty tile.
struct PlaidLabel {
    char a = 0, b = 0;
    bool empty() const { return a == 0; }
    PlaidLabel reversed() const { return {b, a}; }
    std::string str() const { return empty() ? std::string("X") : std::string{a, b}; }
    bool has(char s) const { return a == s || b == s; }
    bool operator==(const PlaidLabel& o) const { return a == o.a && b == o.b; }
    bool operator!=(const PlaidLabel& o) const { return !(*this == o); }
    static PlaidLabel parse(const std::string& s) {
        if (s == "X" || s == "-" || s.empty()) return {};
        if (s.size() != 2) throw Error("ParseError", "label " + s);
        return {s[0], s[1]};
    }
};

inline char opposite(char s) {
    switch (s) {
        case 'N': return 'S';
        case 'S': return 'N';
        case 'E': return 'W';
        case 'W': return 'E';
    }
    return 0;
}

inline char swap_ns(char s) { return s == 'N' ? 'S' : s == 'S' ? 'N' : s; }

/// Unit step in the plane for a side letter.
inline std::array<long, 2> side_step(char s) {
    switch (s) {
        case 'N': return {0, 1};
        case 'S': return {0, -1};
        case 'E': return {1, 0};
        case 'W': return {-1, 0};
    }
    throw Error("UnlabeledInput", "no side");
}

struct PlaidCell {
    IntegerPolytope geom;
    Polytope hv;
    PlaidLabel label;
};

namespace plaid_data {

struct SeedRow {
    std::vector<std::array<int, 4>> v;
    const char* label;
};

inline const std::vector<SeedRow>& seeds() {
    static const std::vector<SeedRow> s = {
        {{{-1, -1, -1, 0}, {-1, 1, -1, 0}, {1, 1, -1, 0}, {1, 1, 1, 0}, {0, 0, 0, 1}}, "WE"},
        {{{1, 1, -1, 0}, {1, 1, 0, 1}, {1, 1, -1, 1}, {0, 1, -1, 1}, {0, 0, -1, 1}}, "ES"},
        {{{1, -1, -1, 0}, {1, 0, 0, 1}, {1, 0, -1, 1}, {0, 0, -1, 1}, {0, -1, -1, 1}}, "EN"},
        {{{-1, 1, -1, 0}, {1, 1, -1, 0}, {1, 1, 1, 0}, {0, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 0, 1}, {1, 1, 1, 1}}, "WS"},
        {{{-1, -1, -1, 0}, {1, -1, -1, 0}, {1, 1, -1, 0}, {0, 0, -1, 1}, {0, 0, 0, 1}, {1, 0, 0, 1}, {1, 1, 0, 1}}, "SW"},
        {{{-1, 1, 1, 0}, {-1, 0, 0, 1}, {-1, 0, 1, 1}, {-1, 1, 0, 1}, {-1, 1, 1, 1}, {0, 1, 1, 1}, {-2, 0, 0, 1}}, "X"},
        {{{-1, -1, -1, 0}, {1, -1, -1, 0}, {-1, -1, -1, 1}, {0, 0, 0, 1}, {0, 0, -1, 1}, {0, -1, 0, 1}, {0, -1, -1, 1}, {1, 0, 0, 1}},
         "SN"},
        {{{1, 1, -1, 0}, {1, -1, -1, 0}, {1, 1, 0, 1}, {1, 0, 0, 1}, {1, 1, -1, 1}, {1, 0, -1, 1}, {0, 0, -1, 1}, {2, 1, 0, 1}}, "EW"},
        {{{-1, -1, 1, 0}, {-1, -1, 0, 1}, {0, -1, 0, 1}, {0, 0, 0, 1}, {0, -1, 1, 1}, {0, 0, 1, 1}, {1, 0, 1, 1}, {1, -1, 1, 0}}, "X"},
        {{{-1, -1, -1, 0},
          {-1, 1, 1, 0},
          {-1, -1, 1, 0},
          {-1, 1, -1, 0},
          {1, 1, 1, 0},
          {-1, -1, -1, 1},
          {-1, 0, -1, 1},
          {-1, -1, 0, 1},
          {-1, 0, 0, 1},
          {0, 0, 0, 1},
          {-3, -1, -1, 0},
          {-2, -1, -1, 1}},
         "X"},
    };
    return s;
}

}  // namespace plaid_data

/// The 10 listed seed polytopes.
inline std::vector<PlaidCell> seed_polytopes() {
    std::vector<PlaidCell> out;
    int k = 0;
    for (auto& row : plaid_data::seeds()) {
        PlaidCell c;
        c.geom.id = "seed" + std::to_string(k++);
        c.geom.scale = 1;
        c.geom.dim = 4;
        for (auto& v : row.v) c.geom.vertices.push_back({v[0], v[1], v[2], v[3]});
        c.label = PlaidLabel::parse(row.label);
        c.geom.label = c.label.str();
        c.hv = c.geom.geometry();
        out.push_back(std::move(c));
    }
    return out;
}

/// Generators of Lambda_1 acting on (x,y,z,P).
inline std::array<Affine, 3> lambda1() {
    Affine tx = Affine::identity(4), ty = Affine::identity(4), tz = Affine::identity(4);
    tx.t[0] = 2;
    tx.L.a[1][3] = 1;
    tx.L.a[2][3] = 1;
    ty.t[1] = 2;
    tz.t[2] = 2;
    return {tx, ty, tz};
}

inline Affine lambda1_word(long a, long b, long c) {
    Affine f = Affine::identity(4);
    f.t = {Rat(2 * a), Rat(2 * b), Rat(2 * c), Rat(0)};
    f.L.a[1][3] = a;
    f.L.a[2][3] = a;
    return f;
}

inline IVec apply_word(const IVec& v, long a, long b, long c) {
    // integer vertices at scale 1
    return {v[0] + 2 * a, v[1] + a * v[3] + 2 * b, v[2] + a * v[3] + 2 * c, v[3]};
}

namespace detail {

inline std::pair<IVec, std::array<long, 3>> canonical_lambda1(std::vector<IVec> V) {
    auto key = [](const IVec& t) { return std::make_tuple(t[3], t[0], t[1], t[2]); };
    auto mn = *std::min_element(V.begin(), V.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    Int a = -(mn[0] - mod_floor(mn[0], 2)) / 2;
    long al = a.get_si();
    for (auto& v : V) v = apply_word(v, al, 0, 0);
    mn = *std::min_element(V.begin(), V.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    long bl = Int(-(mn[1] - mod_floor(mn[1], 2)) / 2).get_si();
    long cl = Int(-(mn[2] - mod_floor(mn[2], 2)) / 2).get_si();
    IVec flat;
    for (auto& v : V) v = apply_word(v, 0, bl, cl);
    std::sort(V.begin(), V.end());
    for (auto& v : V)
        for (auto& x : v) flat.push_back(x);
    return {flat, {al, bl, cl}};
}

}  // namespace detail

/// The 26 cells modulo Lambda_1: seeds closed under Negation and Flipping.
inline std::vector<PlaidCell> full_partition() {
    auto seeds = seed_polytopes();
    std::vector<PlaidCell> out;
    std::map<IVec, std::size_t> seen;
    int idx = 0;
    for (auto& s : seeds) {
        for (int t = 0; t < 4; ++t) {
            PlaidCell c;
            c.geom.scale = 1;
            c.geom.dim = 4;
            PlaidLabel l = s.label;
            for (auto v : s.geom.vertices) {
                if (t & 2) std::swap(v[1], v[2]);
                if (t & 1) v = {-v[0], -v[1], -v[2], v[3]};
                c.geom.vertices.push_back(v);
            }
            if (!l.empty()) {
                if (t & 2) l = PlaidLabel{swap_ns(l.b), swap_ns(l.a)};
                if (t & 1) l = PlaidLabel{opposite(l.a), opposite(l.b)};
            }
            auto [key, word] = detail::canonical_lambda1(c.geom.vertices);
            auto it = seen.find(key);
            if (it != seen.end()) {
                PlaidLabel expect = l;
                if (word[0] % 2 != 0 && !expect.empty()) expect = expect.reversed();
                PlaidLabel have = out[it->second].label;
                auto [k2, w2] = detail::canonical_lambda1(out[it->second].geom.vertices);
                if (w2[0] % 2 != 0 && !have.empty()) have = have.reversed();
                if (have != expect) throw Error("PartitionAuditFailure", "orientation conflict");
                continue;
            }
            seen[key] = out.size();
            c.label = l;
            c.geom.id = "P" + std::to_string(idx++);
            c.geom.label = l.str();
            c.hv = c.geom.geometry();
            out.push_back(std::move(c));
        }
    }
    if (out.size() != 26) throw Error("PartitionAuditFailure", "expected 26 cells, got " + std::to_string(out.size()));
    return out;
}

/// Square-center classifying map (x,y half integers).
inline RVec plaid_classify(const Param& pr, const Rat& x, const Rat& y) {
    const Rat& P = pr.P;
    return {2 * P * x + 2 * y, 2 * P * x, 2 * P * x + 2 * P * y, P};
}

/// Reduces into [-1,1)^3 x {P}; returns the reduced point and the word w with point = w(reduced).
inline std::pair<RVec, std::array<long, 3>> reduce_lambda1(RVec v) {
    Int a = floor_rat((v[0] + 1) / 2);
    v[0] -= 2 * a;
    v[1] -= a * v[3];
    v[2] -= a * v[3];
    Int b = floor_rat((v[1] + 1) / 2);
    v[1] -= 2 * b;
    Int c = floor_rat((v[2] + 1) / 2);
    v[2] -= 2 * c;
    return {v, {a.get_si(), b.get_si(), c.get_si()}};
}

/// Curve-following translation for an exit side.
inline RVec exit_vector(char s, const Rat& P) {
    switch (s) {
        case 'N': return {Rat(2), Rat(0), 2 * P, Rat(0)};
        case 'S': return {Rat(-2), Rat(0), -2 * P, Rat(0)};
        case 'E': return {2 * P, 2 * P, 2 * P, Rat(0)};
        case 'W': return {-2 * P, -2 * P, -2 * P, Rat(0)};
    }
    throw Error("UnlabeledInput", "empty label has no exit");
}

/// Same translation as an affine map of (x,y,z,P) space, P being the last coordinate.
inline Affine exit_affine(char s) {
    Affine f = Affine::identity(4);
    int sg = (s == 'N' || s == 'E') ? 1 : -1;
    if (s == 'N' || s == 'S') {
        f.t[0] = 2 * sg;
        f.L.a[2][3] = 2 * sg;
    } else {
        for (int i = 0; i < 3; ++i) f.L.a[i][3] = 2 * sg;
    }
    return f;
}

/// A Lambda_1 translate of one of the 26 cells.
struct PlacedCell {
    int cell = -1;
    std::array<long, 3> word{};
    PlaidLabel label;  // oriented: reversed for odd T_X exponent
    Polytope hv;
};

/// The 26 cells with point location and placement utilities.
class PlaidPartition {
public:
    PlaidPartition() : cells_(full_partition()) { build_cube_pieces(); }

    const std::vector<PlaidCell>& cells() const { return cells_; }
    const std::vector<PlacedCell>& cube_pieces() const { return pieces_; }

    static PlaidLabel oriented(const PlaidLabel& l, long a) { return (a % 2 != 0 && !l.empty()) ? l.reversed() : l; }

    PlacedCell place(int cell, long a, long b, long c) const {
        PlacedCell pc;
        pc.cell = cell;
        pc.word = {a, b, c};
        pc.label = oriented(cells_[cell].label, a);
        pc.hv = transform(cells_[cell].hv, lambda1_word(a, b, c));
        return pc;
    }

    /// All placed cells meeting Y in a set with nonempty interior, with the intersections.
    std::vector<std::pair<PlacedCell, Polytope>> overlaps(const Polytope& Y) const {
        std::vector<std::pair<PlacedCell, Polytope>> out;
        auto [lo, hi] = Y.bbox();
        for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
            auto [cl, ch] = cells_[i].hv.bbox();
            long amin = ceil_rat((lo[0] - ch[0]) / 2).get_si() - 1, amax = floor_rat((hi[0] - cl[0]) / 2).get_si() + 1;
            for (long a = amin; a <= amax; ++a) {
                // y and z shift by a*P + 2b with P in [0,1]
                Rat sl = a < 0 ? Rat(a) : Rat(0), sh = a < 0 ? Rat(0) : Rat(a);
                long bmin = ceil_rat((lo[1] - ch[1] - sh) / 2).get_si() - 1, bmax = floor_rat((hi[1] - cl[1] - sl) / 2).get_si() + 1;
                long cmin = ceil_rat((lo[2] - ch[2] - sh) / 2).get_si() - 1, cmax = floor_rat((hi[2] - cl[2] - sl) / 2).get_si() + 1;
                for (long b = bmin; b <= bmax; ++b)
                    for (long c = cmin; c <= cmax; ++c) {
                        PlacedCell pc = place(i, a, b, c);
                        Polytope I = intersect(Y, pc.hv);
                        if (!I.empty()) out.push_back({std::move(pc), std::move(I)});
                    }
            }
        }
        return out;
    }

    /// Placed cell whose interior contains v (v in any position).
    PlacedCell locate(const RVec& v) const {
        auto [r, w] = reduce_lambda1(v);
        const PlacedCell* hit = nullptr;
        for (auto& pc : pieces_) {
            if (pc.hv.contains_interior(r)) {
                if (hit) throw Error("BoundaryHit", "two cells contain " + str(v));
                hit = &pc;
            }
        }
        if (!hit) throw Error("BoundaryHit", "point on a cell boundary: " + str(v));
        PlacedCell out = *hit;
        out.word = {hit->word[0] + w[0], hit->word[1] + w[1], hit->word[2] + w[2]};
        out.label = oriented(cells_[hit->cell].label, out.word[0]);
        out.hv = Polytope{};
        return out;
    }

    /// Unit cube fundamental domain [-1,1]^3 x [0,1].
    static Polytope cube() { return box({Rat(-1), Rat(-1), Rat(-1), Rat(0)}, {Rat(1), Rat(1), Rat(1), Rat(1)}); }

private:
    void build_cube_pieces() {
        for (auto& [pc, I] : overlaps(cube())) pieces_.push_back(pc);
        // keep the unclipped placed geometry so boundary points of the cube still locate
    }

    std::vector<PlaidCell> cells_;
    std::vector<PlacedCell> pieces_;
};

inline const PlaidPartition& plaid_partition() {
    static const PlaidPartition p;
    return p;
}

/// A cell of the reduced triple partition.
struct TriplePolytope {
    int index = -1;
    Polytope hv;
    IntegerPolytope geom;  // scale 60
    std::string code;      // oriented 6-letter code as placed in the cube
    std::string canonical_code() const {
        std::string r(code.rbegin(), code.rend());
        return std::min(code, r);
    }
    bool null() const { return code == "XXXXXX"; }
    std::array<PlacedCell, 3> parents;  // F^{-1} cell, cell, F cell (placements relative to this cell)
    int orientation_type = -1;
};

inline std::string code_of(const PlaidLabel& a, const PlaidLabel& b, const PlaidLabel& c) {
    auto s = [](const PlaidLabel& l) { return l.empty() ? std::string("XX") : l.str(); };
    return s(a) + s(b) + s(c);
}

/// Common refinement of F^{-1}(P), P, F(P) clipped to the cube, in raw construction order.
inline std::vector<TriplePolytope> triple_partition_raw() {
    const auto& pp = plaid_partition();
    std::vector<TriplePolytope> out;
    Polytope C = PlaidPartition::cube();
    for (auto& [pc, X] : pp.overlaps(C)) {
        if (pc.label.empty()) {
            TriplePolytope t;
            t.hv = X;
            t.code = "XXXXXX";
            t.parents = {pc, pc, pc};
            out.push_back(std::move(t));
            continue;
        }
        Affine back = exit_affine(pc.label.a), fwd = exit_affine(pc.label.b);
        for (auto& [c1, Y1] : pp.overlaps(transform(X, back))) {
            if (c1.label.empty() || c1.label.b != opposite(pc.label.a))
                throw Error("PartitionAuditFailure", "predecessor label mismatch");
            Polytope Z = transform(Y1, back.inv());
            for (auto& [c2, Y2] : pp.overlaps(transform(Z, fwd))) {
                if (c2.label.empty() || c2.label.a != opposite(pc.label.b))
                    throw Error("PartitionAuditFailure", "successor label mismatch");
                TriplePolytope t;
                t.hv = transform(Y2, fwd.inv());
                t.code = code_of(c1.label, pc.label, c2.label);
                t.parents = {c1, pc, c2};
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

/// Oriented tile of the square with center (x,y).
inline PlaidLabel tile_at(const Param& pr, const Rat& x, const Rat& y) {
    return plaid_partition().locate(plaid_classify(pr, x, y)).label;
}

inline PlaidLabel tile_at_square(const Param& pr, long i, long j) {
    return tile_at(pr, Rat(2 * i + 1, 2), Rat(2 * j + 1, 2));
}

/// One step of the curve-following map on a point with known oriented label.
inline RVec pet_step(const RVec& v, const PlaidLabel& l, bool forward = true) {
    if (l.empty()) return v;
    const Rat& P = v[3];
    return forward ? v + exit_vector(l.b, P) : v + exit_vector(l.a, P);
}

/// The same for polytopes carrying a label.
inline Polytope pet_step(const Polytope& X, const PlaidLabel& l, bool forward = true) {
    if (l.empty()) return X;
    return transform(X, exit_affine(forward ? l.b : l.a));
}

}  // namespace plaid

#endif  // PLAID_PLAID_PET_HPP
