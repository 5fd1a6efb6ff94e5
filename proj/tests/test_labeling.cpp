#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "hublab/labeling.hpp"
#include "hublab/oracle.hpp"
#include "hublab/tables.hpp"

using namespace hublab;

TEST_CASE("ppsd: direct minimum, no common hub, P3 witness") {
    // Hub ids double as rank stand-ins here: sets sorted by descending rank.
    LabelSet lu{{9, 2}, {7, 5}};
    LabelSet lv{{9, 4}, {7, 3}};
    auto res = ppsd_query(lu, lv, 0, 1);
    CHECK(res.dist == 6);
    CHECK(res.hub == 9);

    LabelSet disjoint{{5, 1}};
    CHECK(ppsd_query(lu, disjoint, 0, 1).dist == kInfDist);

    Labeling p3 = chl_oracle(test::p3(), test::p3_ranking());
    auto q = ppsd_query(p3, test::A, test::C);
    CHECK(q.dist == 2);
    CHECK(q.hub == test::B);
}

TEST_CASE("ppsd: implicit self labels answer hub-to-leaf queries") {
    Labeling p3 = chl_oracle(test::p3(), test::p3_ranking());
    CHECK(ppsd_query(p3, test::B, test::C).dist == 1);
    CHECK(ppsd_query(p3, test::C, test::B).dist == 1);
    CHECK(ppsd_query(p3, test::B, test::B).dist == 0);
}

TEST_CASE("ppsd is symmetric on undirected labelings") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = test::random_graph(24, 40, seed, false, 9);
        Labeling l = chl_oracle(g, rank_by_degree(g));
        for (Vertex u = 0; u < g.num_vertices(); ++u)
            for (Vertex v = u; v < g.num_vertices(); ++v) {
                auto a = ppsd_query(l, u, v);
                auto b = ppsd_query(l, v, u);
                CHECK(a.dist == b.dist);
                CHECK(a.hub == b.hub);  // tie rule: higher ranked hub wins
            }
    }
}

TEST_CASE("distance query: empty sets, P3 trace, threshold edge") {
    RootIndex idx(test::B);
    idx.add({test::A, 0});  // as if hashing L_a during SPT_a
    CHECK_FALSE(distance_query(2, idx, LabelSet{}));

    // Building SPT_a after SPT_b on P3: v = c, delta = 2.
    RootIndex root_a(test::A);
    root_a.add({test::B, 1});
    LabelSet lc{{test::B, 1}};
    CHECK(distance_query(2, root_a, lc));
    CHECK_FALSE(distance_query(1, root_a, lc));
}

TEST_CASE("cleaning query: P3 keep, spurious delete, self label") {
    Ranking r = test::p3_ranking();
    Labeling chl = chl_oracle(test::p3(), r);

    // (b,1) in L_a: the only qualifying common hub is b itself -> kept.
    CHECK_FALSE(cleaning_query(test::A, test::B, 1, chl.outbound(test::B), chl.outbound(test::A), r));

    // Spurious (a,2) in L_c is dominated by b.
    LabelSet lc{{test::B, 1}, {test::A, 2}};
    CHECK(cleaning_query(test::C, test::A, 2, chl.outbound(test::A), lc, r));

    // Self label is never redundant.
    CHECK_FALSE(cleaning_query(test::B, test::B, 0, chl.outbound(test::B), chl.outbound(test::B), r));
}

TEST_CASE("cleaning query matches the rank-of-shortest-path oracle") {
    // On a labeling that respects the ranking, a label is redundant exactly
    // when its hub is not the top-ranked vertex on the v-h shortest path.
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = test::random_graph(16, 30, seed, false, 5);
        Ranking r = rank_by_degree(g);
        Labeling chl = chl_oracle(g, r);
        // Inflate: add every (hub, vertex) pair at exact distance where hub
        // outranks vertex; the result still respects R.
        Labeling fat = chl;
        std::vector<std::vector<Dist>> all(g.num_vertices());
        for (Vertex v = 0; v < g.num_vertices(); ++v) all[v] = dijkstra_oracle(g, v);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            for (Vertex h = 0; h < g.num_vertices(); ++h) {
                if (h == v || all[v][h] == kInfDist || r.rank(h) < r.rank(v)) continue;
                HubLabel lab{h, all[v][h]};
                auto& set = fat.outbound(v);
                if (std::find(set.begin(), set.end(), lab) == set.end()) set.push_back(lab);
            }
            std::sort(fat.outbound(v).begin(), fat.outbound(v).end(),
                      [&](const HubLabel& a, const HubLabel& b) { return r.rank(a.hub) > r.rank(b.hub); });
        }
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            for (const HubLabel& lab : fat.outbound(v)) {
                const bool redundant =
                    cleaning_query(v, lab.hub, lab.dist, fat.outbound(lab.hub), fat.outbound(v), r);
                const Vertex hm = max_rank_on_shortest_path(r, all[v], all[lab.hub], v, lab.hub);
                CHECK(redundant == (hm != lab.hub));
            }
        }
    }
}

TEST_CASE("commit superstep: masks, ordering, contract violation") {
    Ranking r = test::p3_ranking();
    GlobalLocalTable t(3, false);
    t.append_local(kOutbound, test::A, {test::B, 1});
    t.append_local(kOutbound, test::C, {test::B, 1});
    t.add_local_count(2);
    CHECK(t.local_count() == 2);

    CHECK_THROWS_AS(t.commit_superstep(r, {1}), ContractViolation);

    SUBCASE("all-true mask grows global") {
        t.commit_superstep(r, {1, 1});
        CHECK(t.local_count() == 0);
        CHECK(t.global(kOutbound, test::A).size() == 1);
    }
    SUBCASE("all-false mask leaves global unchanged") {
        t.commit_superstep(r, {0, 0});
        CHECK(t.global(kOutbound, test::A).empty());
        CHECK(t.local_count() == 0);
    }
}

TEST_CASE("committed sets iterate in strictly descending rank") {
    Graph g = test::random_graph(24, 60, 11, false, 9);
    Ranking r = rank_by_degree(g);
    GlobalLocalTable t(g.num_vertices(), false);
    // Append in two supersteps with shuffled order, then verify sort.
    Labeling chl = chl_oracle(g, r);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const auto& set = chl.outbound(v);
        for (std::size_t i = 0; i < set.size(); ++i)
            if (i % 2 == 0) t.append_local(kOutbound, v, set[set.size() - 1 - i]);
    }
    t.sort_local(r, 1);
    t.commit_all(r);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const auto& set = chl.outbound(v);
        for (std::size_t i = 0; i < set.size(); ++i)
            if (i % 2 == 1) t.append_local(kOutbound, v, set[set.size() - 1 - i]);
    }
    t.sort_local(r, 1);
    t.commit_all(r);
    Labeling merged = t.to_labeling();
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const auto& set = merged.outbound(v);
        for (std::size_t i = 1; i < set.size(); ++i)
            CHECK(r.rank(set[i - 1].hub) > r.rank(set[i].hub));
        CHECK(set == chl.outbound(v));
    }
}

TEST_CASE("common label table: P3 prefix, self lookup, absent, contract") {
    Ranking r = test::p3_ranking();
    Labeling chl = chl_oracle(test::p3(), r);
    CommonLabelTable t = common_table_from_labeling(chl, r, 1);
    CHECK(t.eta() == 1);
    CHECK(common_lookup(t, test::B, test::A) == Dist{1});
    CHECK(common_lookup(t, test::B, test::B) == Dist{0});
    CHECK_THROWS_AS(common_lookup(t, test::A, test::C), ContractViolation);

    Graph disc = Graph::build_undirected(3, {{0, 1, 1}});
    Ranking rd = rank_by_degree(disc);
    CommonLabelTable td = common_table_from_labeling(chl_oracle(disc, rd), rd, 1);
    CHECK_FALSE(common_lookup(td, rd.order()[0], 2).has_value());
}

TEST_CASE("binary serialization round-trips and text output is stable") {
    Graph g = test::random_graph(17, 30, 5, true, 7);
    Labeling l = chl_oracle(g, rank_by_degree(g));
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    save_labeling(l, buf);
    Labeling back = load_labeling(buf);
    CHECK(back == l);

    std::stringstream buf2(std::ios::in | std::ios::out | std::ios::binary);
    save_labeling(back, buf2);
    CHECK(buf.str() == buf2.str());

    std::ostringstream text;
    write_labeling_text(chl_oracle(test::p3(), test::p3_ranking()), text);
    CHECK(text.str() == "0 1 1\n2 1 1\n");

    // Text round-trips losslessly given the shape, for both directions.
    std::stringstream tl;
    write_labeling_text(l, tl);
    CHECK(read_labeling_text(tl, l.num_vertices(), l.directed()) == l);
    Labeling undirected = chl_oracle(test::diamond(), test::diamond_ranking());
    std::stringstream tu;
    write_labeling_text(undirected, tu);
    CHECK(read_labeling_text(tu, 4, false) == undirected);
}

TEST_CASE("serialization rejects bad magic and version") {
    std::stringstream bad(std::ios::in | std::ios::out | std::ios::binary);
    bad << "NOPE";
    CHECK_THROWS_AS(load_labeling(bad), ParseError);
}
