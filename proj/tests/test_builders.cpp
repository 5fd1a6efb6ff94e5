#include <doctest.h>

#include "fixtures.hpp"
#include "hublab/builders.hpp"
#include "hublab/oracle.hpp"

using namespace hublab;

namespace {

// Phase-I style checks: every stored hub outranks its vertex.
void check_rank_query_rule(const Labeling& l, const Ranking& r) {
    for (Vertex v = 0; v < l.num_vertices(); ++v) {
        for (const HubLabel& lab : l.outbound(v)) CHECK(r.rank(lab.hub) > r.rank(v));
        if (l.directed())
            for (const HubLabel& lab : l.inbound(v)) CHECK(r.rank(lab.hub) > r.rank(v));
    }
}

bool contains(const LabelSet& s, const HubLabel& l) {
    return std::find(s.begin(), s.end(), l) != s.end();
}

}  // namespace

TEST_CASE("prune_dij_rq: P3 hand traces") {
    Graph g = test::p3();
    Ranking r = test::p3_ranking();

    SUBCASE("lowest-ranked root is rank-pruned immediately") {
        GlobalLocalTable t(3, false);
        DijkstraScratch ws(3);
        prune_dij_rq(g, r, test::C, t, ws);
        CHECK(t.local_count() == 0);
    }
    SUBCASE("top root labels both neighbors") {
        GlobalLocalTable t(3, false);
        DijkstraScratch ws(3);
        prune_dij_rq(g, r, test::B, t, ws);
        t.commit_all(r);
        CHECK(t.global(kOutbound, test::A).size() == 1);
        CHECK(t.global(kOutbound, test::C).size() == 1);
        CHECK(t.global(kOutbound, test::B).empty());
    }
    SUBCASE("later root is distance-pruned by earlier labels") {
        GlobalLocalTable t(3, false);
        DijkstraScratch ws(3);
        prune_dij_rq(g, r, test::B, t, ws);
        t.commit_all(r);
        prune_dij_rq(g, r, test::A, t, ws);
        CHECK(t.local_count() == 0);  // c pruned via common hub b
    }
}

TEST_CASE("seq_pll equals the CHL oracle on fixtures") {
    CHECK(seq_pll(test::p3(), test::p3_ranking()) == chl_oracle(test::p3(), test::p3_ranking()));
    CHECK(seq_pll(test::k2(), test::k2_ranking()) == chl_oracle(test::k2(), test::k2_ranking()));
    Labeling dia = seq_pll(test::diamond(), test::diamond_ranking());
    CHECK(dia == chl_oracle(test::diamond(), test::diamond_ranking()));
    CHECK(contains(dia.outbound(test::DIA_T), {test::DIA_X, 1}));
    CHECK_FALSE(contains(dia.outbound(test::DIA_T), {test::DIA_R, 2}));
}

TEST_CASE("lcc: degenerate single worker equals seq_pll") {
    BuildConfig cfg;
    cfg.workers = 1;
    Graph g = test::random_graph(32, 70, 3, false, 9);
    Ranking r = rank_by_degree(g);
    CHECK(lcc(g, r, cfg) == seq_pll(g, r));
}

TEST_CASE("lcc: parallel schedules converge to the CHL") {
    BuildConfig cfg;
    for (unsigned workers : {3u, 8u}) {
        cfg.workers = workers;
        // Many runs double as a schedule fuzzer.
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            Graph g = test::random_graph(24, 50, seed, seed % 2 == 1, 9);
            Ranking r = rank_by_degree(g);
            CHECK(lcc(g, r, cfg) == chl_oracle(g, r));
        }
        CHECK(lcc(test::p3(), test::p3_ranking(), cfg) ==
              chl_oracle(test::p3(), test::p3_ranking()));
    }
}

TEST_CASE("lcc phase I covers, respects rank and contains the CHL") {
    BuildConfig cfg;
    cfg.workers = 4;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = test::random_graph(24, 60, seed, false, 9);
        Ranking r = rank_by_degree(g);
        Labeling raw = lcc_construct(g, r, cfg);
        Labeling chl = chl_oracle(g, r);
        check_rank_query_rule(raw, r);
        std::vector<std::vector<Dist>> all(g.num_vertices());
        for (Vertex v = 0; v < g.num_vertices(); ++v) all[v] = dijkstra_oracle(g, v);
        for (Vertex u = 0; u < g.num_vertices(); ++u) {
            // phase-I labels are a per-vertex superset of the CHL
            for (const HubLabel& lab : chl.outbound(u)) CHECK(contains(raw.outbound(u), lab));
            // the canonical hub covers every connected pair at exact distance
            for (Vertex v = u + 1; v < g.num_vertices(); ++v) {
                if (all[u][v] == kInfDist) continue;
                const Vertex hm = max_rank_on_shortest_path(r, all[u], all[v], u, v);
                const bool u_side = hm == u || contains(raw.outbound(u), {hm, all[u][hm]});
                const bool v_side = hm == v || contains(raw.outbound(v), {hm, all[v][hm]});
                CHECK(u_side);
                CHECK(v_side);
            }
        }
    }
}

TEST_CASE("gll: threshold variations all yield the CHL") {
    Graph g = test::random_graph(64, 160, 17, false, 9);
    Ranking r = rank_by_degree(g);
    Labeling expect = chl_oracle(g, r);
    for (double alpha : {2.0, 4.0, 8.0, 32.0, 1e9}) {
        BuildConfig cfg;
        cfg.workers = 4;
        cfg.alpha = alpha;
        CHECK(gll(g, r, cfg) == expect);
    }
}

TEST_CASE("gll equals seq_pll across worker counts and directed graphs") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = test::random_graph(30, 70, seed + 100, seed % 2 == 1, 9);
        Ranking r = rank_by_approx_betweenness(g, 16, seed);
        Labeling expect = seq_pll(g, r);
        for (unsigned workers : {1u, 4u, 8u}) {
            BuildConfig cfg;
            cfg.workers = workers;
            CHECK(gll(g, r, cfg) == expect);
        }
    }
}

TEST_CASE("alpha must exceed one") {
    BuildConfig cfg;
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(gll(test::p3(), test::p3_ranking(), cfg), ContractViolation);
}
