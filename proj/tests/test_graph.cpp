#include <doctest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "hublab/graph.hpp"
#include "hublab/oracle.hpp"
#include "hublab/ranking.hpp"

using namespace hublab;

TEST_CASE("dimacs: symmetric input becomes one undirected edge") {
    std::istringstream in("c tiny\np sp 2 2\na 1 2 5\na 2 1 5\n");
    Graph g = load_dimacs_gr(in);
    CHECK(g.num_vertices() == 2);
    CHECK_FALSE(g.directed());
    CHECK(g.num_edges() == 1);
    REQUIRE(g.out(0).size() == 1);
    CHECK(g.out(0)[0].weight == 5);
}

TEST_CASE("dimacs: asymmetric input stays directed with reverse adjacency") {
    std::istringstream in("p sp 3 2\na 1 2 1\na 2 3 1\n");
    Graph g = load_dimacs_gr(in);
    CHECK(g.directed());
    CHECK(g.num_edges() == 2);
    REQUIRE(g.in(1).size() == 1);
    CHECK(g.in(1)[0].to == 0);
}

TEST_CASE("dimacs: errors carry line numbers and weight domain is enforced") {
    std::istringstream nonpos("p sp 2 1\na 1 2 0\n");
    CHECK_THROWS_AS(load_dimacs_gr(nonpos), DomainError);
    std::istringstream bad("p sp 2 1\nz 1 2\n");
    CHECK_THROWS_WITH_AS(load_dimacs_gr(bad), doctest::Contains("line 2"), ParseError);
    std::istringstream no_header("a 1 2 3\n");
    CHECK_THROWS_AS(load_dimacs_gr(no_header), ParseError);
    std::istringstream out_of_range("p sp 2 1\na 1 5 1\n");
    CHECK_THROWS_AS(load_dimacs_gr(out_of_range), ParseError);
}

TEST_CASE("edge list: undirected unweighted path gets placeholder weights") {
    std::istringstream in("0 1\n1 2\n");
    Graph g = load_edge_list(in, false, false);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.out(1).size() == 2);
    CHECK(g.out(1)[0].weight == 1);
}

TEST_CASE("edge list: directed single arc and weight errors") {
    std::istringstream in("0 1 3\n");
    Graph g = load_edge_list(in, true, true);
    CHECK(g.directed());
    CHECK(g.out(0).size() == 1);
    CHECK(g.in(1).size() == 1);
    std::istringstream neg("0 1 -2\n");
    CHECK_THROWS_AS(load_edge_list(neg, true, true), DomainError);
}

TEST_CASE("parallel edges keep the minimum weight") {
    Graph g = Graph::build_undirected(2, {{0, 1, 7}, {0, 1, 3}, {1, 0, 9}});
    CHECK(g.num_edges() == 1);
    CHECK(g.out(0)[0].weight == 3);
}

TEST_CASE("random weights: degenerate interval, determinism, range") {
    Graph g4 = test::random_graph(4, 4, 1, false, 9);
    Graph w4 = assign_random_weights(g4, 42);
    for (const auto& [u, v, w] : w4.canonical_edges()) CHECK(w == 1);  // [1,2) has one integer

    Graph g100 = test::random_graph(100, 900, 2, false, 9);
    Graph a = assign_random_weights(g100, 7);
    Graph b = assign_random_weights(g100, 7);
    CHECK(a.digest() == b.digest());
    for (const auto& [u, v, w] : a.canonical_edges()) {
        CHECK(w >= 1);
        CHECK(w < 10);
    }
    Graph c = assign_random_weights(g100, 8);
    CHECK(a.digest() != c.digest());  // statistical smoke: ~1000 draws
}

TEST_CASE("degree ranking: star, path tie-break, isolated vertices") {
    Graph star = Graph::build_undirected(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    Ranking rs = rank_by_degree(star);
    CHECK(rs.rank(0) == 3);

    Ranking rp = rank_by_degree(test::p3());
    CHECK(rp.rank(test::B) == 2);
    CHECK(rp.rank(test::A) == 1);  // id tie-break over c
    CHECK(rp.rank(test::C) == 0);

    Graph iso = Graph::build_undirected(2, {});
    Ranking ri = rank_by_degree(iso);
    CHECK(ri.order()[0] == 0);
    CHECK(ri.order()[1] == 1);
}

TEST_CASE("betweenness ranking: tree-descendant scoring on P3") {
    Graph g = test::p3();
    // Any single root gives b a strictly positive score only when interior.
    Ranking one = rank_by_approx_betweenness(g, 1, 3);
    CHECK(one.is_permutation());
    // All roots sampled: b strictly highest.
    Ranking full = rank_by_approx_betweenness(g, 3, 3);
    CHECK(full.rank(test::B) == 2);

    Graph empty = Graph::build_undirected(3, {});
    Ranking re = rank_by_approx_betweenness(empty, 2, 1);
    CHECK(re.order()[0] == 0);  // all scores zero -> id order
    CHECK(re.order()[2] == 2);
}

TEST_CASE("rankings are permutations on random graphs") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Graph g = test::random_graph(24, 40, seed, seed % 2 == 1, 9);
        CHECK(rank_by_degree(g).is_permutation());
        CHECK(rank_by_approx_betweenness(g, 16, seed).is_permutation());
    }
}

TEST_CASE("dijkstra oracle: fixtures and unreachable sentinel") {
    auto dp3 = dijkstra_oracle(test::p3(), test::A);
    CHECK(dp3 == std::vector<Dist>{0, 1, 2});
    auto dk2 = dijkstra_oracle(test::k2(), 1);
    CHECK(dk2 == std::vector<Dist>{5, 0});
    Graph disc = Graph::build_undirected(2, {});
    CHECK(dijkstra_oracle(disc, 0)[1] == kInfDist);
}

TEST_CASE("chl oracle: P3, K2 and diamond hand values") {
    Labeling p3 = chl_oracle(test::p3(), test::p3_ranking());
    CHECK(p3.outbound(test::A) == LabelSet{{test::B, 1}});
    CHECK(p3.outbound(test::B).empty());
    CHECK(p3.outbound(test::C) == LabelSet{{test::B, 1}});

    Labeling k2 = chl_oracle(test::k2(), test::k2_ranking());
    CHECK(k2.outbound(0).empty());
    CHECK(k2.outbound(1) == LabelSet{{0, 5}});

    Labeling dia = chl_oracle(test::diamond(), test::diamond_ranking());
    const LabelSet& lt = dia.outbound(test::DIA_T);
    CHECK(lt == LabelSet{{test::DIA_X, 1}, {test::DIA_Y, 1}});
    CHECK(dia.outbound(test::DIA_R) == LabelSet{{test::DIA_X, 1}});
    CHECK(dia.outbound(test::DIA_Y) == LabelSet{{test::DIA_X, 2}, {test::DIA_R, 1}});
}

TEST_CASE("chl oracle covers all pairs on random graphs") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const bool directed = seed % 2 == 1;
        Graph g = test::random_graph(20 + 4 * Vertex(seed), 50, seed, directed, 9);
        Labeling l = chl_oracle(g, rank_by_degree(g));
        CHECK(test::covers_all_pairs(g, l));
    }
}

TEST_CASE("chl oracle is minimal: deleting any label breaks some pair") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Graph g = test::random_graph(10, 12, seed, false, 5);
        Ranking r = rank_by_degree(g);
        Labeling l = chl_oracle(g, r);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            for (std::size_t i = 0; i < l.outbound(v).size(); ++i) {
                Labeling copy = l;
                copy.outbound(v).erase(copy.outbound(v).begin() + i);
                CHECK_FALSE(test::covers_all_pairs(g, copy));
            }
        }
    }
}
