#ifndef PLAID_LINALG_HPP
#define PLAID_LINALG_HPP

#include "exact.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace plaid {

inline Rat dot(const RVec& a, const RVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RVec operator+(const RVec& a, const RVec& b) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RVec operator-(const RVec& a, const RVec& b) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RVec operator*(const Rat& s, const RVec& a) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline RVec operator-(const RVec& a) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline RVec rvec(std::initializer_list<Rat> xs) { return RVec(xs); }

inline RVec to_rvec(const IVec& v, const Int& scale = 1) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        r[i] = Rat(v[i], scale);
        r[i].canonicalize();
    }
    return r;
}

/// Rank of a list of row vectors.
inline int rank(std::vector<RVec> rows) {
    if (rows.empty()) return 0;
    const std::size_t n = rows[0].size();
    int r = 0;
    for (std::size_t c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Rat f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < n; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

/// Dimension of the affine hull of the points (-1 when empty).
inline int affine_dim(const std::vector<RVec>& pts) {
    if (pts.empty()) return -1;
    std::vector<RVec> d;
    d.reserve(pts.size());
    for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(pts[i] - pts[0]);
    return rank(std::move(d));
}

inline Rat det(std::vector<RVec> m) {
    const std::size_t n = m.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
        }
    }
    return d;
}

/// Solves m x = b for square nonsingular m; returns false when singular.
inline bool solve(std::vector<RVec> m, RVec b, RVec& x) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return false;
        std::swap(m[piv], m[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
            b[i] -= f * b[c];
        }
    }
    x.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
    return true;
}

/// Normal of the hyperplane through d points in R^d via cofactors (zero if degenerate).
inline RVec hyperplane_normal(const std::vector<RVec>& pts) {
    const std::size_t d = pts[0].size();
    std::vector<RVec> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(pts[i] - pts[0]);
    RVec n(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<RVec> minor;
        for (auto& r : rows) {
            RVec m;
            for (std::size_t k = 0; k < d; ++k)
                if (k != j) m.push_back(r[k]);
            minor.push_back(std::move(m));
        }
        Rat c = minor.empty() ? Rat(1) : det(minor);
        n[j] = (j % 2 == 0) ? c : Rat(-c);
    }
    return n;
}

/// Square rational matrix.
struct Mat {
    std::vector<RVec> a;
    static Mat identity(std::size_t n) {
        Mat m;
        m.a.assign(n, RVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) m.a[i][i] = 1;
        return m;
    }
    std::size_t n() const { return a.size(); }
    RVec operator*(const RVec& v) const {
        RVec r(a.size(), Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], v);
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat m;
        m.a.assign(n(), RVec(o.a[0].size(), Rat(0)));
        for (std::size_t i = 0; i < n(); ++i)
            for (std::size_t j = 0; j < o.a[0].size(); ++j)
                for (std::size_t k = 0; k < o.n(); ++k) m.a[i][j] += a[i][k] * o.a[k][j];
        return m;
    }
    bool operator==(const Mat& o) const { return a == o.a; }
};

inline Mat inverse(const Mat& m) {
    const std::size_t n = m.n();
    Mat r;
    r.a.assign(n, RVec(n, Rat(0)));
    for (std::size_t j = 0; j < n; ++j) {
        RVec e(n, Rat(0)), x;
        e[j] = 1;
        if (!solve(m.a, e, x)) throw Error("Singular", "matrix not invertible");
        for (std::size_t i = 0; i < n; ++i) r.a[i][j] = x[i];
    }
    return r;
}

/// Affine map x -> L x + t.
struct Affine {
    Mat L;
    RVec t;
    static Affine identity(std::size_t n) { return {Mat::identity(n), RVec(n, Rat(0))}; }
    static Affine translation(const RVec& t) { return {Mat::identity(t.size()), t}; }
    RVec operator()(const RVec& x) const { return L * x + t; }
    Affine operator*(const Affine& o) const { return {L * o.L, L * o.t + t}; }
    Affine inv() const {
        Mat Li = inverse(L);
        return {Li, -(Li * t)};
    }
    Affine pow(long k) const {
        Affine r = identity(t.size());
        Affine b = k >= 0 ? *this : inv();
        for (long i = 0; i < (k >= 0 ? k : -k); ++i) r = b * r;
        return r;
    }
    bool operator==(const Affine& o) const { return L == o.L && t == o.t; }
};

}  // namespace plaid

#endif  // PLAID_LINALG_HPP
