#include "plaid/polytope.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace plaid;

namespace {
RVec rv(std::initializer_list<long> xs) {
    RVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}
}  // namespace

TEST(Polytope, BoxVolume) {
    Polytope B = box(rv({0, 0, 0, 0}), rv({2, 1, 1, 3}));
    EXPECT_EQ(B.verts.size(), 16u);
    EXPECT_EQ(volume(B), 6);
}

TEST(Polytope, SimplexVolume) {
    Polytope S = hull({rv({0, 0, 0, 0}), rv({1, 0, 0, 0}), rv({0, 1, 0, 0}), rv({0, 0, 1, 0}), rv({0, 0, 0, 1})});
    EXPECT_EQ(volume(S), make_rat(1, 24));
}

TEST(Polytope, RandomSplitsPreserveVolume) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> c(-5, 5);
    Polytope C = box(rv({-1, -1, -1, 0}), rv({1, 1, 1, 1}));
    for (int t = 0; t < 12; ++t) {
        RVec n = {Rat(c(rng)), Rat(c(rng)), Rat(c(rng)), Rat(c(rng))};
        if (n == rv({0, 0, 0, 0})) continue;
        Rat off = make_rat(c(rng), 7);
        Polytope a = clip(C, make_halfspace(n, off));
        RVec m = {-n[0], -n[1], -n[2], -n[3]};
        Polytope b = clip(C, make_halfspace(m, -off));
        Rat va = a.empty() ? Rat(0) : volume(a), vb = b.empty() ? Rat(0) : volume(b);
        EXPECT_EQ(va + vb, 8);
    }
}

TEST(Polytope, IntersectNeedsFullDimension) {
    Polytope A = box(rv({0, 0, 0, 0}), rv({1, 1, 1, 1}));
    Polytope B = box(rv({1, 0, 0, 0}), rv({2, 1, 1, 1}));
    Polytope C = box(rv({0, 0, 0, 0}), rv({2, 1, 1, 1}));
    EXPECT_TRUE(intersect(A, B).empty());
    EXPECT_EQ(volume(intersect(A, C)), 1);
}

TEST(Polytope, CleanAndSeparated) {
    IntegerPolytope a = to_integer(box(rv({0, 0, 0, 0}), rv({1, 1, 1, 1})), "a");
    IntegerPolytope b = to_integer(box(rv({1, 0, 0, 0}), rv({2, 1, 1, 1})), "b");
    IntegerPolytope c = to_integer(box(rv({0, 0, 0, 0}), rv({2, 1, 1, 1})), "c");
    EXPECT_TRUE(clean_check(a, 3));
    EXPECT_TRUE(disjoint_interiors(a, b, 5));
    EXPECT_FALSE(disjoint_interiors(a, c, 5));
    EXPECT_TRUE(contains_polytope(a, c));
    EXPECT_FALSE(contains_polytope(c, a));
}

TEST(Polytope, TableRoundTrip) {
    Polytope S = hull({rv({0, 0, 0, 0}), rv({1, 0, 0, 0}), rv({0, 1, 0, 0}), rv({0, 0, 1, 0}), RVec{Rat(0), Rat(0), Rat(0), make_rat(1, 2)}});
    std::vector<IntegerPolytope> ps = {to_integer(S, "s1", "NE", 2)};
    std::ostringstream os;
    os << "# header\n";
    write_table(os, ps);
    std::istringstream is(os.str());
    auto back = read_table(is);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].id, "s1");
    EXPECT_EQ(back[0].scale, 2);
    EXPECT_EQ(back[0].label, "NE");
    EXPECT_EQ(back[0].vertices, ps[0].vertices);
    EXPECT_EQ(scaled_volume(back[0]).volume, make_rat(1, 48));
}

TEST(Polytope, ParseErrorsAreReported) {
    std::istringstream is("p 1 4 2 0 0 0 0\n");
    EXPECT_THROW(read_table(is), Error);
}
