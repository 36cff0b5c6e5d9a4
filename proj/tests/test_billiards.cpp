#include "plaid/billiards.hpp"
#include "plaid/verify.hpp"

#include <gtest/gtest.h>

using namespace plaid;

TEST(Billiards, StepIsAReflection) {
    Kite k(make_param(1, 4));
    Kite::Pt p = {37, 9};
    Kite::Pt r = k.outer_step(p);
    // the midpoint of p and its image is a kite vertex
    long long mx = (p[0] + r[0]) / 2, my = (p[1] + r[1]) / 2;
    EXPECT_EQ((p[0] + r[0]) % 2, 0);
    bool vertex = (mx == -4 && my == 0) || (mx == 0 && my == 4) || (mx == 0 && my == -4) || (mx == 1 && my == 0);
    EXPECT_TRUE(vertex);
}

TEST(Billiards, InverseUndoesForward) {
    Kite k(make_param(2, 9));
    for (long long x : {11LL, 53LL, 101LL})
        for (long long y : {9LL, -9LL, 27LL}) {
            Kite::Pt p = {x, y};
            EXPECT_EQ(k.psi_inverse(k.psi(p)), p);
        }
}

TEST(Billiards, InsideIsSingular) {
    Kite k(make_param(1, 2));
    EXPECT_THROW(k.outer_step({0, 0}), Error);
}

TEST(Billiards, FirstReturnIsANeighbour) {
    Param pr = make_param(3, 8);
    Kite k(pr);
    auto r = first_return(k, 0, 0, 1);
    EXPECT_LE(std::labs(r.m1), 1);
    EXPECT_LE(std::labs(r.n1), 1);
    auto e = edge_assignment(pr, 0, 0);
    Edge2 d = {r.m1, r.n1};
    EXPECT_TRUE(d == e.plus || d == e.minus);
}

TEST(Billiards, OracleAgreesOnSmallWindow) {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 2}, {2, 9}}) {
        auto d = oracle_diff(make_param(p, q), 6);
        EXPECT_GT(d.edges, 0u);
        EXPECT_TRUE(d.only_dynamic.empty());
        EXPECT_TRUE(d.only_pet.empty());
    }
}
