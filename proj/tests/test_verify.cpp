#include <doctest.h>

#include "fixtures.hpp"
#include "hublab/builders.hpp"
#include "hublab/oracle.hpp"
#include "hublab/verify.hpp"

using namespace hublab;

TEST_CASE("verify: canonical labelings pass all three checks") {
    Labeling p3 = chl_oracle(test::p3(), test::p3_ranking());
    VerifyReport rep = verify_labeling(test::p3(), test::p3_ranking(), p3);
    CHECK(rep.ok());
    CHECK(rep.text.find("cover: PASS") != std::string::npos);
    CHECK(rep.text.find("respects-rank: PASS") != std::string::npos);
    CHECK(rep.text.find("minimality: PASS") != std::string::npos);

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = test::random_graph(24, 50, seed + 200, seed % 2 == 1, 9);
        Ranking r = rank_by_degree(g);
        CHECK(verify_labeling(g, r, seq_pll(g, r)).ok());
    }
}

TEST_CASE("verify: injected extra label fails minimality and names it") {
    Ranking r = test::p3_ranking();
    Labeling l = chl_oracle(test::p3(), r);
    l.outbound(test::C).push_back({test::A, 2});  // dominated by b
    VerifyReport rep = verify_labeling(test::p3(), r, l);
    CHECK_FALSE(rep.minimal_ok);
    CHECK(rep.text.find("minimality: FAIL") != std::string::npos);
    CHECK(rep.text.find("v=2, hub=0, dist=2") != std::string::npos);
    CHECK(rep.cover_ok);  // the extra label answers queries correctly
}

TEST_CASE("verify: deleted label fails cover with a witness pair") {
    Ranking r = test::p3_ranking();
    Labeling l = chl_oracle(test::p3(), r);
    l.outbound(test::A).clear();  // drop (b,1): pair (a,c) loses its hub
    VerifyReport rep = verify_labeling(test::p3(), r, l);
    CHECK_FALSE(rep.cover_ok);
    CHECK(rep.text.find("cover: FAIL pair") != std::string::npos);
    CHECK_FALSE(rep.respects_ok);
}

TEST_CASE("verify: sampled mode above the pair limit") {
    for (bool directed : {false, true}) {
        Graph g = test::random_graph(80, 200, directed ? 7 : 8, directed, 9);
        Ranking r = rank_by_degree(g);
        Labeling l = seq_pll(g, r);
        VerifyReport rep = verify_labeling(g, r, l, 32, 5);
        CHECK(rep.ok());
    }
}
