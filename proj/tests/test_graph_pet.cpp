#include "plaid/graph_pet.hpp"
#include "plaid/render.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace plaid;

namespace {
std::string slurp(const std::string& name) {
    std::ifstream is(std::string(PLAID_DATA_DIR) + "/" + name, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}
}  // namespace

TEST(GraphPet, FourteenCellsEachFamily) {
    EXPECT_EQ(graph_plus().cells().size(), 14u);
    EXPECT_EQ(graph_minus().cells().size(), 14u);
    Rat v = 0;
    for (auto& c : graph_plus().cells()) v += volume(c.hv);
    EXPECT_EQ(v, make_rat(7, 3));
    // integral of (1+A)^2 over [0,1]
    EXPECT_EQ(volume(graph_fundamental_domain()), make_rat(7, 3));
}

TEST(GraphPet, InvolutionSquaresToIdentity) {
    Affine I = graph_involution();
    RVec v = {make_rat(1, 3), make_rat(2, 5), make_rat(-1, 7), make_rat(3, 8)};
    EXPECT_EQ(I(I(v)), v);
}

TEST(GraphPet, CanonicalMapHandValues) {
    // A = 1/2: dT = (2/3) [[3/4, 3/2], [7/4, -1]]
    CanonicalMap T = canonical_T(make_param(1, 2));
    RVec e1 = T.edge({1, 0}), e2 = T.edge({0, 1});
    EXPECT_EQ(e1[0], make_rat(1, 2));
    EXPECT_EQ(e1[1], make_rat(7, 6));
    EXPECT_EQ(e2[0], 1);
    EXPECT_EQ(e2[1], make_rat(-2, 3));
    // det dT = 1 + A
    EXPECT_EQ(abs(e1[0] * e2[1] - e1[1] * e2[0]), make_rat(3, 2));
}

TEST(GraphPet, OriginImage) {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 9}, {3, 8}, {4, 5}, {1, 2}}) {
        Param pr = make_param(p, q);
        RVec z = canonical_T(pr).T(0, 0);
        EXPECT_EQ(frac(z[0]), make_rat(1, 2 * q));
        EXPECT_EQ(frac(z[1]), make_rat(q - p, 2 * q * (p + q)));
    }
}

TEST(GraphPet, EdgesAreReciprocal) {
    Param pr = make_param(3, 8);
    for (long m = -6; m <= 6; ++m)
        for (long n = -6; n <= 6; ++n) {
            auto e = edge_assignment(pr, m, n);
            if (e.isolated()) continue;
            for (const Edge2& d : {e.plus, e.minus}) {
                auto f = edge_assignment(pr, m + d[0], n + d[1]);
                Edge2 back = {-d[0], -d[1]};
                EXPECT_TRUE(f.plus == back || f.minus == back) << m << "," << n;
            }
        }
}

TEST(GraphPet, CellTableMatchesGolden) {
    std::ostringstream os;
    write_table(os, graph_cell_table());
    std::string g = slurp("graph_cells.txt"), body;
    std::istringstream is(g);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') body += line + "\n";
    EXPECT_EQ(os.str(), body);
}

TEST(GraphPet, EdgeExportSnapshot38) {
    BlockModel M(make_param(3, 8));
    std::ostringstream os;
    write_graph_edges(os, M, {0, 121, 0, 11});
    EXPECT_EQ(os.str(), slurp("graph_3_8.txt"));
}
