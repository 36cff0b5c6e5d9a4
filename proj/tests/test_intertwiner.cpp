#include "plaid/intertwiner.hpp"
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

TEST(Intertwiner, HitsetMembership) {
    Rat P = make_rat(4, 11);
    EXPECT_EQ(hitset_membership(P, Rat(0), Rat(0)), Membership::Inside);
    // on the edge from (-1,-1) to (P-1,P-1)
    EXPECT_EQ(hitset_membership(P, make_rat(-9, 10), make_rat(-9, 10)), Membership::Boundary);
    // in the notch under that edge
    EXPECT_EQ(hitset_membership(P, make_rat(-7, 10), make_rat(-9, 10)), Membership::Outside);
    EXPECT_EQ(hitset_membership(P, Rat(1), Rat(1)), Membership::Boundary);
    EXPECT_EQ(hitset_membership(P, Rat(2), Rat(0)), Membership::Outside);
}

TEST(Intertwiner, OmegaInverts) {
    Rat P = make_rat(6, 11);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            RVec w = omega_map(P, make_rat(a, 4), make_rat(b, 5));
            RVec back = omega_inverse(P, w[0], w[1]);
            EXPECT_EQ(back[0], make_rat(a, 4));
            EXPECT_EQ(back[1], make_rat(b, 5));
        }
    auto D = dipole(P);
    EXPECT_EQ(omega_map(P, D[3][0], D[3][1]), (RVec{Rat(0), Rat(0)}));
    EXPECT_EQ(omega_map(P, D[1][0], D[1][1]), (RVec{Rat(1), Rat(1)}));
}

TEST(Intertwiner, PsiCarriesPToA) {
    // P = 2p/(p+q) goes to A = p/q = P/(2-P)
    RVec v = {make_rat(1, 5), make_rat(3, 5), make_rat(-1, 3), make_rat(2, 7)};
    RVec w = psi(v, psi_branch(v));
    EXPECT_EQ(w.size(), 4u);
    EXPECT_EQ(w[3], make_rat(1, 6));
}

TEST(Intertwiner, BlockChecksAtSmallParameters) {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 2}, {1, 4}, {2, 9}, {3, 8}, {4, 5}, {5, 6}, {6, 13}}) {
        auto r = intertwining_check(make_param(p, q));
        EXPECT_TRUE(r.ok()) << r.param << " psi " << r.psi_fail << " hitset " << r.hitset_fail << " hilo " << r.hilo_fail << " graph "
                            << r.graph_recon_fail << " plaid " << r.plaid_recon_fail;
    }
}

TEST(Intertwiner, ProofReportAndRtpTableMatchGolden) {
    ProofReport pr = prove_all();
    std::ostringstream rep;
    write_report(rep, pr);
    EXPECT_EQ(rep.str(), slurp("proof_report.txt"));
    std::ostringstream tab;
    write_table(tab, rtp_table(pr.entries));
    std::string g = slurp("rtp_cells.txt"), body;
    std::istringstream is(g);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') body += line + "\n";
    EXPECT_EQ(tab.str(), body);
    EXPECT_EQ(pr.entries.size(), 218u);
}
