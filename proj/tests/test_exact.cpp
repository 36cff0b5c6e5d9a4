#include "plaid/exact.hpp"
#include "plaid/linalg.hpp"

#include <gtest/gtest.h>

using namespace plaid;

TEST(Exact, FloorCeilFrac) {
    EXPECT_EQ(floor_rat(make_rat(-7, 2)), -4);
    EXPECT_EQ(ceil_rat(make_rat(-7, 2)), -3);
    EXPECT_EQ(floor_rat(Rat(5)), 5);
    EXPECT_EQ(frac(make_rat(-1, 3)), make_rat(2, 3));
    EXPECT_EQ(frac(make_rat(9, 4)), make_rat(1, 4));
    EXPECT_TRUE(is_integer(make_rat(6, 3)));
}

TEST(Exact, ParamConstants) {
    Param pr = make_param(2, 9);
    EXPECT_EQ(pr.omega, 11);
    EXPECT_EQ(pr.A, make_rat(2, 9));
    EXPECT_EQ(pr.P, make_rat(4, 11));
    EXPECT_EQ(pr.Q, make_rat(18, 11));
    EXPECT_EQ(pr.P + pr.Q, 2);
    // 2 p tau = 1 mod omega: 4 * 3 = 12
    EXPECT_EQ(pr.tau, 3);
    EXPECT_EQ((4 * 2 * 2 * pr.xi) % 11, 1);
}

TEST(Exact, ParamRejectsBadInput) {
    auto code = [](long p, long q) {
        try {
            make_param(p, q);
        } catch (const Error& e) {
            return e.code;
        }
        return std::string("ok");
    };
    EXPECT_EQ(code(3, 9), "NotCoprime");
    EXPECT_EQ(code(3, 5), "OddProduct");
    EXPECT_EQ(code(5, 4), "OutOfRange");
    EXPECT_EQ(code(0, 4), "OutOfRange");
    EXPECT_EQ(code(1, 2), "ok");
}

TEST(Exact, EvenParameterCount) {
    // p/q in (0,1), gcd 1, pq even, q < 30
    long n = 0;
    for (long q = 2; q < 30; ++q)
        for (long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1 && (p * q) % 2 == 0) ++n;
    EXPECT_EQ(static_cast<long>(even_params_below(30).size()), n);
    EXPECT_EQ(n, 178);
}
