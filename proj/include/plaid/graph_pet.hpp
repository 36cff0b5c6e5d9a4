#ifndef PLAID_GRAPH_PET_HPP
#define PLAID_GRAPH_PET_HPP

#include "polytope.hpp"

namespace plaid {

using Edge2 = std::array<long, 2>;

struct GraphCell {
    IntegerPolytope geom;
    Polytope hv;
    Edge2 label{};
    bool plus = true;
    int source = 0;  // index of the plus cell it comes from
};

namespace graph_data {

struct Row {
    std::vector<std::array<int, 4>> v;
    Edge2 label;
};

inline const std::vector<Row>& plus_rows() {
    static const std::vector<Row> r = {
        {{{0, -1, 0, 0}, {0, 0, 0, 1}, {0, -1, 1, 1}, {0, 0, 1, 1}, {1, 0, 1, 1}}, {0, 1}},
        {{{0, -1, 0, 1}, {1, -1, 0, 0}, {1, -1, 0, 1}, {1, 0, 0, 1}, {1, -1, 1, 1}}, {0, 1}},
        {{{0, 0, 1, 0}, {0, 1, 1, 1}, {0, 0, 2, 1}, {0, 1, 2, 1}, {1, 1, 2, 1}}, {-1, 0}},
        {{{0, 0, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}, {1, 0, 2, 1}}, {-1, 0}},
        {{{0, -1, 1, 1}, {1, -1, 1, 0}, {1, -1, 1, 1}, {1, 0, 1, 1}, {1, -1, 2, 1}}, {1, 0}},
        {{{0, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 1, 0}, {1, 0, 1, 1}, {1, 1, 1, 1}, {1, 0, 2, 1}}, {-1, -1}},
        {{{0, -1, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}}, {-1, 0}},
        {{{0, -1, 1, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, -1, 2, 1}, {0, 0, 2, 1}, {1, 0, 2, 1}}, {1, 0}},
        {{{0, -1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 0, 1}, {0, 0, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}}, {-1, 1}},
        {{{0, 0, 0, 0}, {0, 1, 0, 1}, {0, -1, 1, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 1, 1}, {1, 1, 1, 1}}, {0, 1}},
        {{{0, -1, 0, 0}, {1, -1, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {1, 0, 0, 1}, {1, 1, 0, 1}, {1, -1, 1, 0}, {1, 0, 1, 1}}, {0, 1}},
        {{{0, 0, 1, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 1, 1}, {1, 1, 1, 1}, {0, 0, 2, 1}, {1, 0, 2, 1}, {1, 1, 2, 1}}, {0, 0}},
        {{{0, -1, 0, 0}, {0, -1, 0, 1}, {1, -1, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}, {0, -1, 1, 1}, {1, -1, 1, 0}, {1, -1, 1, 1}, {1, 0, 1, 1}},
         {1, 1}},
        {{{0, -1, 0, 0},
          {0, 0, 0, 0},
          {1, 0, 0, 0},
          {0, -1, 1, 0},
          {0, -1, 1, 1},
          {1, -1, 1, 0},
          {0, 0, 1, 1},
          {1, 0, 1, 0},
          {1, 0, 1, 1},
          {0, -1, 2, 1},
          {1, -1, 2, 1},
          {1, 0, 2, 1}},
         {0, 0}},
    };
    return r;
}

}  // namespace graph_data

inline std::string edge_str(const Edge2& e) { return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")"; }

/// The involution I(x,y,z,A) = (1,A,2+A,A) - (x,y,z,0).
inline Affine graph_involution() {
    Affine f = Affine::identity(4);
    for (int i = 0; i < 3; ++i) f.L.a[i][i] = -1;
    f.L.a[1][3] = 1;
    f.L.a[2][3] = 1;
    f.t = {Rat(1), Rat(0), Rat(2), Rat(0)};
    return f;
}

/// Lattice word T_X^a T_Y^b T_Z^c acting on (x,y,z,A).
inline Affine graph_lattice_word(long a, long b, long c) {
    Affine f = Affine::identity(4);
    // T_X = +(1,-1,-1); T_Y = +(0,1+A,1-A); T_Z = +(0,0,1+A)
    f.t = {Rat(a), Rat(-a + b), Rat(-a + b + c), Rat(0)};
    f.L.a[1][3] = b;
    f.L.a[2][3] = -b + c;
    return f;
}

inline std::array<Affine, 3> graph_lattice() {
    return {graph_lattice_word(1, 0, 0), graph_lattice_word(0, 1, 0), graph_lattice_word(0, 0, 1)};
}

/// R = union over A of [0,1] x [0,1+A] x [0,1+A] x {A}, optionally shifted in y.
inline Polytope graph_fundamental_domain(long yshift = 0) {
    std::vector<RVec> pts;
    for (int A = 0; A <= 1; ++A)
        for (int x = 0; x <= 1; ++x)
            for (int y = 0; y <= 1; ++y)
                for (int z = 0; z <= 1; ++z) pts.push_back({Rat(x), Rat(y * (1 + A) + yshift), Rat(z * (1 + A)), Rat(A)});
    return hull(pts);
}

inline std::vector<GraphCell> graph_partition(bool plus) {
    std::vector<GraphCell> out;
    Affine I = graph_involution();
    int k = 0;
    for (auto& row : graph_data::plus_rows()) {
        GraphCell c;
        c.plus = plus;
        c.source = k;
        c.geom.scale = 1;
        c.geom.dim = 4;
        for (auto& v : row.v) {
            RVec x = {Rat(v[0]), Rat(v[1]), Rat(v[2]), Rat(v[3])};
            if (!plus) x = I(x);
            IVec w;
            for (auto& t : x) w.push_back(t.get_num());
            c.geom.vertices.push_back(w);
        }
        c.label = plus ? row.label : Edge2{-row.label[0], -row.label[1]};
        c.geom.id = std::string(plus ? "G+" : "G-") + std::to_string(k);
        c.geom.label = edge_str(c.label);
        c.hv = c.geom.geometry();
        out.push_back(std::move(c));
        ++k;
    }
    return out;
}

struct GraphPlaced {
    int cell = -1;
    std::array<long, 3> word{};
    Polytope hv;
};

/// One of the two graph partitions with point location.
class GraphPartition {
public:
    explicit GraphPartition(bool plus) : plus_(plus), cells_(graph_partition(plus)) {
        Polytope D = domain();
        for (int i = 0; i < static_cast<int>(cells_.size()); ++i)
            for (long a = -2; a <= 2; ++a)
                for (long b = -2; b <= 2; ++b)
                    for (long c = -2; c <= 2; ++c) {
                        Polytope T = transform(cells_[i].hv, graph_lattice_word(a, b, c));
                        if (!intersect(T, D).empty()) pieces_.push_back({i, {a, b, c}, std::move(T)});
                    }
    }

    bool plus() const { return plus_; }
    const std::vector<GraphCell>& cells() const { return cells_; }
    const std::vector<GraphPlaced>& pieces() const { return pieces_; }

    /// Domain used for reduction: R shifted down by one in y.
    static Polytope domain() { return graph_fundamental_domain(-1); }

    /// Reduces (x,y,z,A) into [0,1) x [-1,A) x [0,1+A).
    static std::pair<RVec, std::array<long, 3>> reduce(RVec v) {
        const Rat& A = v[3];
        Int a = floor_rat(v[0]);
        v[0] -= a;
        v[1] += a;
        v[2] += a;
        Int b = floor_rat((v[1] + 1) / (1 + A));
        v[1] -= b * (1 + A);
        v[2] -= b * (1 - A);
        Int c = floor_rat(v[2] / (1 + A));
        v[2] -= c * (1 + A);
        return {v, {a.get_si(), b.get_si(), c.get_si()}};
    }

    /// Index of the cell whose (translated) interior contains v.
    int locate(const RVec& v) const {
        auto [r, w] = reduce(v);
        int hit = -1;
        for (auto& pc : pieces_)
            if (pc.hv.contains_interior(r)) {
                if (hit >= 0) throw Error("BoundaryHit", "overlapping graph cells at " + str(v));
                hit = pc.cell;
            }
        if (hit < 0) throw Error("BoundaryHit", "graph point on a boundary: " + str(v));
        return hit;
    }

    /// Cell index containing v, or -1 when v lies on a boundary.
    int locate_or_boundary(const RVec& v) const {
        try {
            return locate(v);
        } catch (const Error&) {
            return -1;
        }
    }

private:
    bool plus_;
    std::vector<GraphCell> cells_;
    std::vector<GraphPlaced> pieces_;
};

inline const GraphPartition& graph_plus() {
    static const GraphPartition g(true);
    return g;
}
inline const GraphPartition& graph_minus() {
    static const GraphPartition g(false);
    return g;
}

/// Equality modulo the graph lattice at parameter A (3D part).
inline bool equal_mod_graph_lattice(const RVec& u, const RVec& v) {
    if (u[3] != v[3]) return false;
    const Rat& A = u[3];
    Rat dx = u[0] - v[0], dy = u[1] - v[1], dz = u[2] - v[2];
    if (!is_integer(dx)) return false;
    Rat b = (dy + dx) / (1 + A);
    if (!is_integer(b)) return false;
    Rat c = (dz + dx - b * (1 - A)) / (1 + A);
    return is_integer(c);
}

// ---------------------------------------------------------------------------
// Canonical affine transformation.

struct CanonicalMap {
    Param pr;
    Mat dT, dTinv;
    RVec tinv;  // T^{-1}(v) = dTinv v + tinv

    RVec T(const RVec& mn) const { return dT * (mn - tinv); }
    RVec Tinv(const RVec& xy) const { return dTinv * xy + tinv; }
    RVec T(long m, long n) const { return T(RVec{Rat(m), Rat(n)}); }
    RVec edge(const Edge2& e) const { return dT * RVec{Rat(e[0]), Rat(e[1])}; }
};

inline CanonicalMap canonical_T(const Param& pr) {
    CanonicalMap c;
    c.pr = pr;
    const Rat& A = pr.A;
    Rat s = 1 / (1 + A);
    c.dT.a = {{s * (A * A + A), s * (A + 1)}, {s * (-A * A + 2 * A + 1), s * (-2 * A)}};
    c.dTinv = inverse(c.dT);
    c.tinv = {Rat(-1 - 2 * pr.q * pr.tau, 2 * pr.omega), Rat(-1 + 2 * pr.p * pr.tau, 2 * pr.omega)};
    for (auto& x : c.tinv) x.canonicalize();
    return c;
}

inline RVec anchor_point(const Param& pr) { return {(1 + pr.A) / 2, (1 - pr.A) / 2}; }

/// Graph classifying map on Z^2: (t,t,t,A), t = Am + n + 1/(2q).
inline RVec graph_classify_mn(const Param& pr, long m, long n) {
    Rat t = pr.A * m + n + pr.iota;
    return {t, t, t, pr.A};
}

/// Same on the normalized grid: (x,x,x,A).
inline RVec graph_classify_xy(const Param& pr, const RVec& xy) { return {xy[0], xy[0], xy[0], pr.A}; }

struct EdgeAssignment {
    Edge2 plus{}, minus{};
    int plus_cell = -1, minus_cell = -1;
    bool isolated() const { return plus == Edge2{0, 0}; }
};

inline EdgeAssignment edge_assignment(const Param& pr, long m, long n) {
    RVec v = graph_classify_mn(pr, m, n);
    EdgeAssignment e;
    e.plus_cell = graph_plus().locate(v);
    e.minus_cell = graph_minus().locate(v);
    e.plus = graph_plus().cells()[e.plus_cell].label;
    e.minus = graph_minus().cells()[e.minus_cell].label;
    if ((e.plus == Edge2{0, 0}) != (e.minus == Edge2{0, 0}))
        throw Error("PartitionAuditFailure", "isolation mismatch at (" + std::to_string(m) + "," + std::to_string(n) + ")");
    return e;
}

/// Parity of floor((1+A)m + 1/(2q)).
inline int orientation_rho(const Param& pr, long m, long /*n*/) {
    Int f = floor_rat((1 + pr.A) * m + pr.iota);
    return static_cast<int>(mod_floor(f, 2).get_si());
}

/// Reconstruction map Theta on (x,y,z,A), reduced mod Z^2.
inline RVec reconstruction(const RVec& v) {
    const Rat& A = v[3];
    Rat t1 = v[0], t2 = (v[1] - A * v[0]) / (1 + A);
    return {frac(t1), frac(t2)};
}

/// The 8 shortest nonzero integer vectors.
inline const std::vector<Edge2>& short_vectors() {
    static const std::vector<Edge2> s = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    return s;
}

/// Z^2 points (m,n) whose normalized image lies in the box [x0,x1] x [y0,y1].
inline std::vector<std::array<long, 2>> grid_points_in_box(const CanonicalMap& T, const Rat& x0, const Rat& x1, const Rat& y0,
                                                            const Rat& y1) {
    std::vector<std::array<long, 2>> out;
    Rat mlo, mhi, nlo, nhi;
    bool first = true;
    for (const Rat& x : {x0, x1})
        for (const Rat& y : {y0, y1}) {
            RVec mn = T.Tinv({x, y});
            if (first || mn[0] < mlo) mlo = mn[0];
            if (first || mn[0] > mhi) mhi = mn[0];
            if (first || mn[1] < nlo) nlo = mn[1];
            if (first || mn[1] > nhi) nhi = mn[1];
            first = false;
        }
    for (long m = floor_rat(mlo).get_si() - 1; m <= ceil_rat(mhi).get_si() + 1; ++m)
        for (long n = floor_rat(nlo).get_si() - 1; n <= ceil_rat(nhi).get_si() + 1; ++n) {
            RVec p = T.T(m, n);
            if (p[0] >= x0 && p[0] <= x1 && p[1] >= y0 && p[1] <= y1) out.push_back({m, n});
        }
    return out;
}

}  // namespace plaid

#endif  // PLAID_GRAPH_PET_HPP
