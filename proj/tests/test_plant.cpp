#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "hublab/builders.hpp"
#include "hublab/oracle.hpp"
#include "hublab/plant.hpp"

using namespace hublab;

namespace {

// Maximum rank over every shortest root->v path (endpoints included),
// by dynamic programming over the shortest-path DAG in distance order.
std::vector<Vertex> brute_max_ancestor(const Graph& g, const Ranking& r, Vertex root) {
    const Vertex n = g.num_vertices();
    const auto dist = dijkstra_oracle(g, root);
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n; ++v)
        if (dist[v] != kInfDist) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
    std::vector<Vertex> best(n, kNoVertex);
    best[root] = root;
    for (Vertex v : order) {
        if (v == root) continue;
        Vertex m = kNoVertex;
        for (const Arc& a : g.in(v)) {
            const Vertex u = a.to;
            if (dist[u] == kInfDist || dist[u] + a.weight != dist[v]) continue;
            if (m == kNoVertex || r.rank(best[u]) > r.rank(m)) m = best[u];
        }
        if (m != kNoVertex && r.rank(v) > r.rank(m)) m = v;
        best[v] = m;
    }
    return best;
}

}  // namespace

TEST_CASE("plant tree: P3 hand traces") {
    Graph g = test::p3();
    Ranking r = test::p3_ranking();
    DijkstraScratch ws(3);

    PlantTreeResult top = plant_dijkstra(g, r, test::B, ws);
    CHECK(top.explored == 3);
    CHECK(top.labels.size() == 2);
    CHECK(top.psi() == doctest::Approx(1.5));

    PlantTreeResult mid = plant_dijkstra(g, r, test::A, ws);
    CHECK(mid.explored == 1);  // early termination right after the root pop
    CHECK(mid.labels.empty());
}

TEST_CASE("plant tree: diamond equal-distance rule steals the ancestor") {
    Graph g = test::diamond();
    Ranking r = test::diamond_ranking();
    DijkstraScratch ws(4);
    PlantTreeResult res = plant_dijkstra(g, r, test::DIA_R, ws);
    // (r,2) for t must not be emitted: x wins the ancestor on a tie.
    for (const auto& [v, d] : res.labels) CHECK(v != test::DIA_T);
    Labeling all = plant_all(g, r);
    CHECK(all == chl_oracle(g, r));
}

TEST_CASE("plant ancestor values match the brute-force path maximum") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = test::random_graph(20, 45, seed, seed % 2 == 1, 5);
        Ranking r = rank_by_degree(g);
        for (Vertex root = 0; root < g.num_vertices(); ++root) {
            const auto expect = brute_max_ancestor(g, r, root);
            DijkstraScratch ws(g.num_vertices());
            // With early termination off every reachable vertex pops, and a
            // label appears exactly when the path maximum is the root.
            PlantTreeResult res = plant_dijkstra(g, r, root, ws, false);
            std::vector<bool> labeled(g.num_vertices(), false);
            for (const auto& [v, d] : res.labels) labeled[v] = true;
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                if (expect[v] == kNoVertex || v == root) continue;
                CHECK(labeled[v] == (expect[v] == root));
            }
        }
    }
}

TEST_CASE("plant_all equals seq_pll and the oracle") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const bool directed = seed % 2 == 1;
        Graph g = test::random_graph(28, 64, seed + 7, directed, 9);
        Ranking r = rank_by_degree(g);
        Labeling planted = plant_all(g, r, nullptr, true, 4);
        CHECK(planted == chl_oracle(g, r));
        CHECK(planted == seq_pll(g, r));
        for (const PsiSample& s : psi_trace(g, r)) CHECK(s.labels <= s.explored);
    }
}

TEST_CASE("early termination and common-table pruning do not change labels") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = test::random_graph(24, 55, seed + 19, false, 9);
        Ranking r = rank_by_degree(g);
        Labeling base = plant_all(g, r, nullptr, false);
        CHECK(plant_all(g, r, nullptr, true) == base);
        for (std::uint32_t eta : {1u, 4u, 16u}) {
            CommonLabelTable table = build_common_table(g, r, eta);
            CHECK(plant_all(g, r, &table, true) == base);
            CHECK(plant_all(g, r, &table, false) == base);
        }
    }
}

TEST_CASE("a planted tree emits exactly the canonical labels of its root") {
    Graph g = test::random_graph(20, 40, 23, false, 7);
    Ranking r = rank_by_degree(g);
    Labeling chl = chl_oracle(g, r);
    DijkstraScratch ws(g.num_vertices());
    for (Vertex root = 0; root < g.num_vertices(); ++root) {
        PlantTreeResult res = plant_dijkstra(g, r, root, ws);
        std::set<std::pair<Vertex, Dist>> emitted(res.labels.begin(), res.labels.end());
        std::set<std::pair<Vertex, Dist>> expected;
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            for (const HubLabel& lab : chl.outbound(v))
                if (lab.hub == root) expected.emplace(v, lab.dist);
        CHECK(emitted == expected);
    }
}

TEST_CASE("psi trace: P3 and star hand values") {
    auto p3 = psi_trace(test::p3(), test::p3_ranking());
    REQUIRE(p3.size() == 3);
    CHECK(p3[0].root == test::B);
    CHECK(p3[0].explored == 3);
    CHECK(p3[0].labels == 2);
    CHECK(p3[0].psi == doctest::Approx(1.5));
    CHECK(p3[1].labels == 0);
    CHECK(p3[1].psi == doctest::Approx(double(p3[1].explored)));  // zero-label flag

    Graph star = Graph::build_undirected(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    Ranking rs = rank_by_degree(star);
    auto t = psi_trace(star, rs);
    CHECK(t[0].root == 0);
    CHECK(t[0].explored == 4);
    CHECK(t[0].labels == 3);
    CHECK(t[0].psi == doctest::Approx(4.0 / 3.0));

    const std::string csv = psi_trace_csv(p3);
    CHECK(csv.substr(0, csv.find('\n')) == "tree_index,root,rank,explored,labels,psi");
}
