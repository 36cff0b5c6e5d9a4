#ifndef PLAID_EXACT_HPP
#define PLAID_EXACT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plaid {

using Int = mpz_class;
using Rat = mpq_class;
using RVec = std::vector<Rat>;
using IVec = std::vector<Int>;

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& what)
        : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

inline Rat make_rat(long n, long d = 1) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Rat frac(const Rat& r) { return r - Rat(floor_rat(r)); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::string str(const Rat& r) { return r.get_str(); }

inline std::string str(const RVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

/// Returns r in (0,m) with a*r = 1 mod m.
inline long mod_inverse(long a, long m) {
    if (m <= 0) throw Error("NotInvertible", "modulus must be positive");
    long r0 = ((a % m) + m) % m;
    if (m == 1) throw Error("NotInvertible", "modulus 1 has no unit in (0,1)");
    long old_r = r0, r = m, old_s = 1, s = 0;
    while (r != 0) {
        long qt = old_r / r;
        long t = old_r - qt * r;
        old_r = r;
        r = t;
        t = old_s - qt * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw Error("NotInvertible", std::to_string(a) + " mod " + std::to_string(m));
    return ((old_s % m) + m) % m;
}

/// The even rational parameter p/q and its derived constants.
struct Param {
    long p = 0, q = 0, omega = 0, tau = 0, xi = 0;
    Rat A, P, Q, iota;

    std::string name() const { return std::to_string(p) + "/" + std::to_string(q); }
};

inline Param make_param(long p, long q) {
    if (p <= 0 || q <= 0 || p >= q)
        throw Error("OutOfRange", "need 0 < p < q, got " + std::to_string(p) + "/" + std::to_string(q));
    if (std::gcd(p, q) != 1)
        throw Error("NotCoprime", std::to_string(p) + "/" + std::to_string(q));
    if ((p * q) % 2 != 0)
        throw Error("OddProduct", std::to_string(p) + "/" + std::to_string(q));
    Param r;
    r.p = p;
    r.q = q;
    r.omega = p + q;
    r.A = make_rat(p, q);
    r.P = make_rat(2 * p, r.omega);
    r.Q = make_rat(2 * q, r.omega);
    r.iota = make_rat(1, 2 * q);
    r.tau = mod_inverse(2 * p, r.omega);
    r.xi = mod_inverse((4 * p % r.omega) * p, r.omega);
    if ((2 * p * r.tau) % r.omega != 1 % r.omega || (4 * p * p % r.omega) * r.xi % r.omega != 1 % r.omega)
        throw Error("OutOfRange", "modular invariants failed");
    return r;
}

/// All even rationals p/q in (0,1) with q < qmax.
inline std::vector<Param> even_params_below(long qmax) {
    std::vector<Param> out;
    for (long q = 2; q < qmax; ++q)
        for (long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1 && (p * q) % 2 == 0) out.push_back(make_param(p, q));
    return out;
}

}  // namespace plaid

#endif  // PLAID_EXACT_HPP
