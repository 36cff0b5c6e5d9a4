#ifndef PLAID_BILLIARDS_HPP
#define PLAID_BILLIARDS_HPP

#include "graph_pet.hpp"

#include <climits>

namespace plaid {

/// Outer billiards on the kite with vertices (-1,0),(0,1),(0,-1),(A,0).
/// Coordinates are integers scaled by q, so special orbits stay exact.
class Kite {
public:
    /// orientation = +1 reflects through the vertex keeping the kite on the left of the ray p->v.
    explicit Kite(const Param& pr, int orientation = +1) : pr_(pr), orient_(orientation) {
        const long q = pr.q;
        v_ = {{{-q, 0}, {0, q}, {0, -q}, {pr.p, 0}}};
    }

    const Param& param() const { return pr_; }
    int orientation() const { return orient_; }

    using Pt = std::array<long long, 2>;

    static long long cross(const Pt& o, const Pt& a, const Pt& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    }

    bool inside(const Pt& p) const {
        for (int i = 0; i < 4; ++i) {
            static const int order[4] = {0, 2, 3, 1};  // counterclockwise: (-1,0),(0,-1),(A,0),(0,1)
            const Pt& a = v_[order[i]];
            const Pt& b = v_[order[(i + 1) % 4]];
            if (cross(a, b, p) < 0) return false;
        }
        return true;
    }

    /// One outer billiards step.
    Pt outer_step(const Pt& p) const {
        if (inside(p)) throw Error("SingularPoint", "point inside the kite");
        for (auto& v : v_) {
            if (v == p) continue;
            bool ok = true;
            for (auto& w : v_) {
                if (&w == &v) continue;
                long long c = cross(p, v, w) * orient_;
                if (c < 0) {
                    ok = false;
                    break;
                }
                if (c == 0) {
                    // w on the supporting line through v: singular tangent
                    ok = false;
                    bool alt = true;
                    for (auto& u : v_)
                        if (cross(p, v, u) * orient_ < 0) alt = false;
                    if (alt) throw Error("SingularPoint", "ambiguous tangent vertex");
                    break;
                }
            }
            if (ok) {
                if (std::llabs(p[0]) > (1LL << 40) || std::llabs(p[1]) > (1LL << 40)) throw Error("Overflow", "orbit escaped");
                return {2 * v[0] - p[0], 2 * v[1] - p[1]};
            }
        }
        throw Error("SingularPoint", "no supporting vertex");
    }

    Pt psi(const Pt& p) const { return outer_step(outer_step(p)); }

    /// Inverse of one outer step (reflect with the opposite orientation).
    Pt psi_inverse(const Pt& p) const {
        Kite k(pr_, -orient_);
        return k.outer_step(k.outer_step(p));
    }

    /// Scaled start point (2mA + 2n + 1/q, s).
    Pt start(long m, long n, int s) const { return {2LL * m * pr_.p + 2LL * n * pr_.q + 1, static_cast<long long>(s) * pr_.q}; }

private:
    Param pr_;
    int orient_;
    std::array<Pt, 4> v_;
};

struct ReturnResult {
    long m1 = 0, n1 = 0;
    int epsilon = 1;
    long long step_count = 0;
};

/// First return to R_+ x {-1,1} from the start point of (m0,n0) with sign s; forward or backward.
inline ReturnResult first_return(const Kite& k, long m0, long n0, int s = 1, bool forward = true, long long cap = 1000000) {
    const Param& pr = k.param();
    if (2 * m0 * pr.p + 2 * n0 * pr.q < 0) throw Error("OutOfRange", "start must lie on the positive ray");
    Kite::Pt p = k.start(m0, n0, s);
    ReturnResult r;
    do {
        p = forward ? k.psi(p) : k.psi_inverse(p);
        ++r.step_count;
        if (r.step_count > cap) throw Error("NonReturn", "iteration cap exceeded");
    } while (!(p[0] > 0 && (p[1] == pr.q || p[1] == -pr.q)));
    r.epsilon = p[1] > 0 ? 1 : -1;
    // p[0] = 2 m1 p + 2 n1 q + 1; choose the solution adjacent to (m0,n0) with matching parity
    long long rhs = p[0] - 1;
    if (rhs % 2 != 0) throw Error("NonReturn", "return point off the special lattice");
    rhs /= 2;
    bool found = false;
    for (long dm = -1; dm <= 1 && !found; ++dm) {
        long m1 = m0 + dm;
        long long rest = rhs - static_cast<long long>(m1) * pr.p;
        if (rest % pr.q != 0) continue;
        long n1 = static_cast<long>(rest / pr.q);
        if (std::labs(n1 - n0) > 1) continue;
        int eps = ((m0 + m1 + n0 + n1) % 2 == 0) ? 1 : -1;
        if (eps * s != r.epsilon) continue;
        r.m1 = m1;
        r.n1 = n1;
        found = true;
    }
    if (!found) throw Error("NonReturn", "no adjacent decoding of the return point");
    return r;
}

using GraphEdgeSet = std::set<std::pair<std::array<long, 2>, std::array<long, 2>>>;

inline void add_edge(GraphEdgeSet& s, std::array<long, 2> a, std::array<long, 2> b) {
    if (b < a) std::swap(a, b);
    s.insert({a, b});
}

/// Dynamical arithmetic graph on the window |m|,|n| <= w above the line of slope -A.
inline GraphEdgeSet dyn_graph(const Kite& k, long w) {
    GraphEdgeSet out;
    const Param& pr = k.param();
    for (long m = -w; m <= w; ++m)
        for (long n = -w; n <= w; ++n) {
            if (2 * m * pr.p + 2 * n * pr.q < 0) continue;
            int s = ((m + n) % 2 == 0) ? 1 : -1;
            for (bool fwd : {true, false}) {
                auto r = first_return(k, m, n, s, fwd);
                if (r.m1 != m || r.n1 != n) add_edge(out, {m, n}, {r.m1, r.n1});
            }
        }
    return out;
}

/// The PET-predicted graph on the same window.
inline GraphEdgeSet pet_graph(const Param& pr, long w) {
    GraphEdgeSet out;
    for (long m = -w; m <= w; ++m)
        for (long n = -w; n <= w; ++n) {
            if (2 * m * pr.p + 2 * n * pr.q < 0) continue;
            auto e = edge_assignment(pr, m, n);
            if (e.isolated()) continue;
            add_edge(out, {m, n}, {m + e.plus[0], n + e.plus[1]});
            add_edge(out, {m, n}, {m + e.minus[0], n + e.minus[1]});
        }
    return out;
}

}  // namespace plaid

#endif  // PLAID_BILLIARDS_HPP
