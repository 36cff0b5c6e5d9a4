#ifndef PLAID_POLYTOPE_HPP
#define PLAID_POLYTOPE_HPP

#include "linalg.hpp"

#include <bitset>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>

namespace plaid {

/// a . x <= b with primitive integer coefficients.
struct Halfspace {
    IVec a;
    Int b;
    Rat eval(const RVec& x) const {
        Rat s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
        return s - b;
    }
    bool operator<(const Halfspace& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
    bool operator==(const Halfspace& o) const { return a == o.a && b == o.b; }
};

/// Builds the primitive integer halfspace n . x <= c.
inline Halfspace make_halfspace(const RVec& n, const Rat& c) {
    Int den = c.get_den();
    for (auto& x : n) den = lcm(den, x.get_den());
    Halfspace h;
    Int g = 0;
    for (auto& x : n) {
        Int v = x.get_num() * (den / x.get_den());
        h.a.push_back(v);
        g = gcd(g, v);
    }
    h.b = c.get_num() * (den / c.get_den());
    g = gcd(g, h.b);
    if (g != 0 && g != 1) {
        for (auto& v : h.a) v /= g;
        h.b /= g;
    }
    return h;
}

constexpr std::size_t kMaxFacets = 256;
using Mask = std::bitset<kMaxFacets>;

/// Full-dimensional convex polytope with both representations, exact rational coordinates.
struct Polytope {
    int dim = 4;
    std::vector<RVec> verts;
    std::vector<Halfspace> hs;

    bool empty() const { return verts.empty(); }

    bool contains(const RVec& x) const {
        for (auto& h : hs)
            if (h.eval(x) > 0) return false;
        return true;
    }
    bool contains_interior(const RVec& x) const {
        for (auto& h : hs)
            if (h.eval(x) >= 0) return false;
        return true;
    }
    std::vector<Mask> tight_masks() const {
        std::vector<Mask> m(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = 0; j < hs.size(); ++j)
                if (hs[j].eval(verts[i]) == 0) m[i].set(j);
        return m;
    }
    std::pair<RVec, RVec> bbox() const {
        RVec lo = verts[0], hi = verts[0];
        for (auto& v : verts)
            for (int i = 0; i < dim; ++i) {
                if (v[i] < lo[i]) lo[i] = v[i];
                if (v[i] > hi[i]) hi[i] = v[i];
            }
        return {lo, hi};
    }
};

inline void sort_vertices(std::vector<RVec>& v) {
    std::sort(v.begin(), v.end(), [](const RVec& a, const RVec& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
}

/// Drops halfspaces whose tight set is not a facet and vertices that are not extreme.
inline void prune(Polytope& P) {
    std::vector<Halfspace> keep;
    std::set<Halfspace> seen;
    for (auto& h : P.hs) {
        if (seen.count(h)) continue;
        std::vector<RVec> t;
        for (auto& v : P.verts)
            if (h.eval(v) == 0) t.push_back(v);
        if (static_cast<int>(t.size()) >= P.dim && affine_dim(t) == P.dim - 1) {
            keep.push_back(h);
            seen.insert(h);
        }
    }
    P.hs = std::move(keep);
    std::sort(P.hs.begin(), P.hs.end());
    std::vector<RVec> vs;
    for (auto& v : P.verts) {
        std::vector<RVec> normals;
        for (auto& h : P.hs)
            if (h.eval(v) == 0) normals.push_back(to_rvec(h.a));
        if (rank(normals) == P.dim) vs.push_back(v);
    }
    P.verts = std::move(vs);
    sort_vertices(P.verts);
}

/// Convex hull of a point set (facets by brute force over affinely independent d-subsets).
inline Polytope hull(std::vector<RVec> pts) {
    sort_vertices(pts);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Polytope P;
    if (pts.empty()) return P;
    P.dim = static_cast<int>(pts[0].size());
    const int d = P.dim;
    if (affine_dim(pts) < d) throw Error("DegeneratePolytope", "points do not span");
    std::set<Halfspace> found;
    std::vector<int> idx(d);
    const int n = static_cast<int>(pts.size());
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == d) {
            std::vector<RVec> s;
            for (int i : idx) s.push_back(pts[i]);
            RVec nrm = hyperplane_normal(s);
            bool zero = std::all_of(nrm.begin(), nrm.end(), [](const Rat& x) { return x == 0; });
            if (zero) return;
            Rat c = dot(nrm, s[0]);
            bool le = true, ge = true;
            for (auto& p : pts) {
                Rat v = dot(nrm, p) - c;
                if (v > 0) le = false;
                if (v < 0) ge = false;
                if (!le && !ge) return;
            }
            if (le)
                found.insert(make_halfspace(nrm, c));
            else
                found.insert(make_halfspace(-nrm, -c));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    P.hs.assign(found.begin(), found.end());
    P.verts = pts;
    prune(P);
    return P;
}

/// Axis box [lo,hi].
inline Polytope box(const RVec& lo, const RVec& hi) {
    Polytope P;
    P.dim = static_cast<int>(lo.size());
    const int d = P.dim;
    for (int m = 0; m < (1 << d); ++m) {
        RVec v(d);
        for (int i = 0; i < d; ++i) v[i] = (m >> i & 1) ? hi[i] : lo[i];
        P.verts.push_back(v);
    }
    for (int i = 0; i < d; ++i) {
        RVec e(d, Rat(0));
        e[i] = 1;
        P.hs.push_back(make_halfspace(e, hi[i]));
        e[i] = -1;
        P.hs.push_back(make_halfspace(e, -lo[i]));
    }
    sort_vertices(P.verts);
    std::sort(P.hs.begin(), P.hs.end());
    return P;
}

/// Intersection with a halfspace; empty result when not full dimensional.
inline Polytope clip(const Polytope& P, const Halfspace& h) {
    std::vector<Rat> s(P.verts.size());
    bool anyPos = false, anyNeg = false;
    for (std::size_t i = 0; i < P.verts.size(); ++i) {
        s[i] = h.eval(P.verts[i]);
        if (s[i] > 0) anyPos = true;
        if (s[i] < 0) anyNeg = true;
    }
    if (!anyPos) return P;
    Polytope R;
    R.dim = P.dim;
    if (!anyNeg) return R;
    if (P.hs.size() + 1 > kMaxFacets) throw Error("Capacity", "too many halfspaces");
    auto tm = P.tight_masks();
    for (std::size_t i = 0; i < P.verts.size(); ++i)
        if (s[i] <= 0) R.verts.push_back(P.verts[i]);
    for (std::size_t i = 0; i < P.verts.size(); ++i) {
        if (s[i] >= 0) continue;
        for (std::size_t j = 0; j < P.verts.size(); ++j) {
            if (s[j] <= 0) continue;
            Mask common = tm[i] & tm[j];
            if (common.count() < static_cast<std::size_t>(P.dim - 1)) continue;
            bool edge = true;
            for (std::size_t k = 0; k < P.verts.size() && edge; ++k)
                if (k != i && k != j && (tm[k] & common) == common) edge = false;
            if (!edge) continue;
            Rat t = s[i] / (s[i] - s[j]);
            R.verts.push_back(P.verts[i] + t * (P.verts[j] - P.verts[i]));
        }
    }
    if (static_cast<int>(R.verts.size()) <= R.dim || affine_dim(R.verts) < R.dim) return Polytope{R.dim, {}, {}};
    R.hs = P.hs;
    R.hs.push_back(h);
    prune(R);
    return R;
}

inline bool boxes_overlap(const Polytope& P, const Polytope& Q) {
    auto [pl, ph] = P.bbox();
    auto [ql, qh] = Q.bbox();
    for (int i = 0; i < P.dim; ++i)
        if (ph[i] <= ql[i] || qh[i] <= pl[i]) return false;
    return true;
}

/// Closed intersection; empty unless it has nonempty interior.
inline Polytope intersect(const Polytope& P, const Polytope& Q) {
    if (P.empty() || Q.empty() || !boxes_overlap(P, Q)) return Polytope{P.dim, {}, {}};
    Polytope R = P;
    for (auto& h : Q.hs) {
        R = clip(R, h);
        if (R.empty()) break;
    }
    return R;
}

/// Image under an invertible affine map.
inline Polytope transform(const Polytope& P, const Affine& f) {
    Polytope R;
    R.dim = P.dim;
    for (auto& v : P.verts) R.verts.push_back(f(v));
    Affine g = f.inv();
    for (auto& h : P.hs) {
        // a.(g y) <= b  =>  (a L_g) y <= b - a.t_g
        RVec a = to_rvec(h.a), na(P.dim, Rat(0));
        for (int j = 0; j < P.dim; ++j)
            for (int i = 0; i < P.dim; ++i) na[j] += a[i] * g.L.a[i][j];
        R.hs.push_back(make_halfspace(na, Rat(h.b) - dot(a, g.t)));
    }
    sort_vertices(R.verts);
    std::sort(R.hs.begin(), R.hs.end());
    return R;
}

/// Faces of codimension one inside the face with vertex set F (indices), using facet tight masks.
inline std::vector<std::vector<int>> subfaces(const Polytope& P, const std::vector<Mask>& tm,
                                              const std::vector<int>& F, int k) {
    std::set<std::vector<int>> out;
    for (std::size_t j = 0; j < P.hs.size(); ++j) {
        std::vector<int> G;
        for (int v : F)
            if (tm[v].test(j)) G.push_back(v);
        if (G.size() == F.size() || static_cast<int>(G.size()) < k) continue;
        std::vector<RVec> pts;
        for (int v : G) pts.push_back(P.verts[v]);
        if (affine_dim(pts) == k - 1) out.insert(G);
    }
    return {out.begin(), out.end()};
}

/// Pulling triangulation: each simplex as d+1 vertex indices.
inline std::vector<std::vector<int>> triangulate(const Polytope& P) {
    std::vector<std::vector<int>> out;
    if (P.empty()) return out;
    auto tm = P.tight_masks();
    std::vector<int> all(P.verts.size());
    std::iota(all.begin(), all.end(), 0);
    std::function<void(const std::vector<int>&, int, std::vector<int>&)> rec =
        [&](const std::vector<int>& F, int k, std::vector<int>& apex) {
            if (k == 0) {
                std::vector<int> s = apex;
                s.push_back(F[0]);
                out.push_back(s);
                return;
            }
            int v = F[0];
            apex.push_back(v);
            for (auto& G : subfaces(P, tm, F, k))
                if (std::find(G.begin(), G.end(), v) == G.end()) rec(G, k - 1, apex);
            apex.pop_back();
        };
    std::vector<int> apex;
    rec(all, P.dim, apex);
    return out;
}

inline Rat factorial(int d) {
    Rat f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

/// Sum of |det| over the pulling triangulation, equal to d! * volume.
inline Rat simplex_det_sum(const Polytope& P) {
    Rat s = 0;
    for (auto& t : triangulate(P)) {
        std::vector<RVec> m;
        for (std::size_t i = 1; i < t.size(); ++i) m.push_back(P.verts[t[i]] - P.verts[t[0]]);
        Rat d = det(m);
        s += d < 0 ? Rat(-d) : d;
    }
    return s;
}

inline Rat volume(const Polytope& P) {
    if (P.empty()) return 0;
    return simplex_det_sum(P) / factorial(P.dim);
}

inline RVec centroid(const Polytope& P) {
    RVec c(P.dim, Rat(0));
    for (auto& v : P.verts) c = c + v;
    return Rat(1, static_cast<long>(P.verts.size())) * c;
}

// ---------------------------------------------------------------------------
// Integer-scaled polytopes and the functional-search predicates.

struct LinearFunctional {
    std::vector<long> coeffs;
    long offset = 0;
};

struct IntegerPolytope {
    std::string id;
    Int scale = 1;
    int dim = 4;
    std::vector<IVec> vertices;
    std::string label = "-";

    std::vector<RVec> true_vertices() const {
        std::vector<RVec> r;
        for (auto& v : vertices) r.push_back(to_rvec(v, scale));
        return r;
    }
    Polytope geometry() const { return hull(true_vertices()); }
};

/// Rescales the vertices of a rational polytope to a common integer scale (lcm of denominators, or a multiple of `min_scale`).
inline IntegerPolytope to_integer(const Polytope& P, std::string id = "", std::string label = "-", Int min_scale = 1) {
    IntegerPolytope I;
    I.id = std::move(id);
    I.label = std::move(label);
    I.dim = P.dim;
    Int s = min_scale;
    for (auto& v : P.verts)
        for (auto& x : v) s = lcm(s, x.get_den());
    I.scale = s;
    for (auto& v : P.verts) {
        IVec w;
        for (auto& x : v) w.push_back(x.get_num() * (s / x.get_den()));
        I.vertices.push_back(w);
    }
    return I;
}

namespace detail {

inline std::vector<std::vector<long>> small_vertices(const IntegerPolytope& P) {
    std::vector<std::vector<long>> out;
    for (auto& v : P.vertices) {
        std::vector<long> w;
        for (auto& x : v) {
            if (!x.fits_slong_p() || abs(x) > Int(1) << 40) throw Error("Overflow", "coordinate too large for functional search");
            w.push_back(x.get_si());
        }
        out.push_back(w);
    }
    return out;
}

/// Visits coefficient vectors in [-N,N]^d lexicographically, skipping zero; stops when f returns true.
inline bool for_functionals(int d, int N, const std::function<bool(const std::vector<long>&)>& f) {
    std::vector<long> c(d, -N);
    while (true) {
        bool zero = std::all_of(c.begin(), c.end(), [](long x) { return x == 0; });
        if (!zero && f(c)) return true;
        int i = d - 1;
        while (i >= 0 && c[i] == N) {
            c[i] = -N;
            --i;
        }
        if (i < 0) return false;
        ++c[i];
    }
}

inline long eval(const std::vector<long>& c, const std::vector<long>& v) {
    long s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * v[i];
    return s;
}

}  // namespace detail

/// The functional making vertex i the unique maximizer, if one exists with |c_j| <= N.
inline std::optional<LinearFunctional> clean_witness(const IntegerPolytope& P, std::size_t i, int N) {
    auto V = detail::small_vertices(P);
    std::optional<LinearFunctional> w;
    detail::for_functionals(P.dim, N, [&](const std::vector<long>& c) {
        long top = detail::eval(c, V[i]);
        for (std::size_t j = 0; j < V.size(); ++j)
            if (j != i && detail::eval(c, V[j]) >= top) return false;
        w = LinearFunctional{c, top};
        return true;
    });
    return w;
}

inline bool clean_check(const IntegerPolytope& P, int N) {
    if (static_cast<int>(P.vertices.size()) < P.dim + 1) return false;
    std::set<IVec> uniq(P.vertices.begin(), P.vertices.end());
    if (uniq.size() != P.vertices.size()) return false;
    for (std::size_t i = 0; i < P.vertices.size(); ++i)
        if (!clean_witness(P, i, N)) return false;
    return true;
}

/// Some L with |c_i| <= N has max over P1 <= min over P2.
inline std::optional<LinearFunctional> separating_functional(const IntegerPolytope& P1, const IntegerPolytope& P2, int N = 5) {
    if (P1.scale != P2.scale || P1.dim != P2.dim) throw Error("DimensionMismatch", "scale or dimension differs");
    auto V1 = detail::small_vertices(P1), V2 = detail::small_vertices(P2);
    std::optional<LinearFunctional> w;
    detail::for_functionals(P1.dim, N, [&](const std::vector<long>& c) {
        long mx = LONG_MIN, mn = LONG_MAX;
        for (auto& v : V1) mx = std::max(mx, detail::eval(c, v));
        for (auto& v : V2) mn = std::min(mn, detail::eval(c, v));
        if (mx <= mn) {
            w = LinearFunctional{c, mx};
            return true;
        }
        return false;
    });
    return w;
}

inline bool disjoint_interiors(const IntegerPolytope& P1, const IntegerPolytope& P2, int N = 5) {
    return separating_functional(P1, P2, N).has_value();
}

/// Hyperplane functionals through affinely independent vertex d-tuples that support the polytope.
inline std::vector<Halfspace> quadruple_functionals(const IntegerPolytope& P) {
    std::vector<RVec> V;
    for (auto& v : P.vertices) V.push_back(to_rvec(v));
    const int d = P.dim;
    const int n = static_cast<int>(V.size());
    std::set<Halfspace> out;
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == d) {
            std::vector<RVec> s;
            for (int i : idx) s.push_back(V[i]);
            RVec nrm = hyperplane_normal(s);
            if (std::all_of(nrm.begin(), nrm.end(), [](const Rat& x) { return x == 0; })) return;
            Rat c = dot(nrm, s[0]);
            bool le = true, ge = true;
            for (auto& p : V) {
                Rat v = dot(nrm, p) - c;
                if (v > 0) le = false;
                if (v < 0) ge = false;
            }
            if (le) out.insert(make_halfspace(nrm, c));
            if (ge) out.insert(make_halfspace(-nrm, -c));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    return {out.begin(), out.end()};
}

/// Closed membership: v lies outside iff some supporting vertex-tuple functional strictly separates it.
inline bool contains_point(const IntegerPolytope& P, const IVec& v) {
    if (static_cast<int>(v.size()) != P.dim) throw Error("DimensionMismatch", "point dimension");
    RVec x = to_rvec(v);
    for (auto& h : quadruple_functionals(P))
        if (h.eval(x) > 0) return false;
    return true;
}

inline bool contains_polytope(const IntegerPolytope& inner, const IntegerPolytope& outer) {
    if (inner.dim != outer.dim) throw Error("DimensionMismatch", "dimension");
    auto hs = quadruple_functionals(outer);
    for (auto& v : inner.vertices) {
        RVec x = to_rvec(v, inner.scale);
        for (auto& h : hs) {
            // h is in outer's scaled coordinates
            Rat s = 0;
            for (std::size_t i = 0; i < x.size(); ++i) s += h.a[i] * x[i] * outer.scale;
            if (s > h.b) return false;
        }
    }
    return true;
}

struct Facet {
    LinearFunctional functional;  // maximized (= offset) exactly on `vertices`
    std::vector<int> vertices;
};

inline std::vector<Facet> facets(const IntegerPolytope& P) {
    std::vector<RVec> V;
    for (auto& v : P.vertices) V.push_back(to_rvec(v));
    if (affine_dim(V) < P.dim) throw Error("DegeneratePolytope", P.id);
    Polytope G = hull(V);
    std::vector<Facet> out;
    for (auto& h : G.hs) {
        Facet f;
        for (auto& a : h.a) f.functional.coeffs.push_back(a.get_si());
        f.functional.offset = h.b.get_si();
        for (std::size_t i = 0; i < V.size(); ++i)
            if (h.eval(V[i]) == 0) f.vertices.push_back(static_cast<int>(i));
        out.push_back(f);
    }
    return out;
}

struct VolumeReport {
    Rat volume;     // true volume
    Int det_sum;    // d! * scale^d * volume, an integer
    Rat scaled_units;  // 6^4 10^3 * volume
};

inline VolumeReport scaled_volume(const IntegerPolytope& P) {
    std::vector<RVec> V;
    for (auto& v : P.vertices) V.push_back(to_rvec(v));
    if (affine_dim(V) < P.dim) throw Error("DegeneratePolytope", P.id);
    Polytope G = hull(V);
    Rat s = simplex_det_sum(G);
    if (!is_integer(s)) throw Error("DegeneratePolytope", "non-integral determinant sum");
    VolumeReport r;
    r.det_sum = s.get_num();
    Rat sp = 1;
    for (int i = 0; i < P.dim; ++i) sp *= Rat(P.scale);
    r.volume = s / factorial(P.dim) / sp;
    r.scaled_units = r.volume * 1296000;
    return r;
}

/// Images of P under words g1^i g2^j g3^k with |i|,|j|,|k| <= radius.
inline std::vector<std::pair<std::array<long, 3>, Polytope>> orbit_translates(const Polytope& P, const std::array<Affine, 3>& gens,
                                                                            long radius) {
    std::vector<std::pair<std::array<long, 3>, Polytope>> out;
    for (long i = -radius; i <= radius; ++i)
        for (long j = -radius; j <= radius; ++j)
            for (long k = -radius; k <= radius; ++k) {
                Affine f = gens[0].pow(i) * gens[1].pow(j) * gens[2].pow(k);
                out.push_back({{i, j, k}, transform(P, f)});
            }
    return out;
}

// ---------------------------------------------------------------------------
// Polytope table format: `id scale dim nverts v11 ... vnd label`, `#` comments.

inline void write_table(std::ostream& os, const std::vector<IntegerPolytope>& ps) {
    for (auto& p : ps) {
        os << p.id << ' ' << p.scale << ' ' << p.dim << ' ' << p.vertices.size();
        for (auto& v : p.vertices)
            for (auto& x : v) os << ' ' << x;
        os << ' ' << (p.label.empty() ? "-" : p.label) << '\n';
    }
}

inline std::vector<IntegerPolytope> read_table(std::istream& is) {
    std::vector<IntegerPolytope> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        IntegerPolytope p;
        std::string scale;
        std::size_t n;
        if (!(ss >> p.id)) continue;
        if (!(ss >> scale >> p.dim >> n)) throw Error("ParseError", "line " + std::to_string(lineno));
        p.scale = Int(scale);
        for (std::size_t i = 0; i < n; ++i) {
            IVec v(p.dim);
            for (int j = 0; j < p.dim; ++j) {
                std::string t;
                if (!(ss >> t)) throw Error("ParseError", "line " + std::to_string(lineno));
                v[j] = Int(t);
            }
            p.vertices.push_back(v);
        }
        if (!(ss >> p.label)) throw Error("ParseError", "missing label on line " + std::to_string(lineno));
        out.push_back(p);
    }
    return out;
}

}  // namespace plaid

#endif  // PLAID_POLYTOPE_HPP
