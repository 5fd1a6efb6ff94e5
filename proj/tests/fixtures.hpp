#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "hublab/graph.hpp"
#include "hublab/labeling.hpp"
#include "hublab/oracle.hpp"
#include "hublab/ranking.hpp"
#include "hublab/rng.hpp"

namespace hublab::test {

// Path a-b-c with unit weights; degree ranking puts b on top, then a by
// id tie-break. CHL: L_a = {(b,1)}, L_b = {}, L_c = {(b,1)}.
inline constexpr Vertex A = 0, B = 1, C = 2;

inline Graph p3() {
    return Graph::build_undirected(3, {{0, 1, 1}, {1, 2, 1}});
}

inline Ranking p3_ranking() { return Ranking::from_order({B, A, C}); }

// Single edge (a, b) of weight 5 with rank(a) > rank(b).
inline Graph k2() { return Graph::build_undirected(2, {{0, 1, 5}}); }

inline Ranking k2_ranking() { return Ranking::from_order({0, 1}); }

// Diamond r-x-t / r-y-t with unit weights, ranks x=3, r=2, y=1, t=0.
inline constexpr Vertex DIA_R = 0, DIA_X = 1, DIA_Y = 2, DIA_T = 3;

inline Graph diamond() {
    return Graph::build_undirected(4, {{DIA_R, DIA_X, 1}, {DIA_X, DIA_T, 1}, {DIA_R, DIA_Y, 1}, {DIA_Y, DIA_T, 1}});
}

inline Ranking diamond_ranking() { return Ranking::from_order({DIA_X, DIA_R, DIA_Y, DIA_T}); }

// Seeded random graph: optional random spanning tree for connectivity plus
// uniform random extra edges, weights uniform in [1, max_weight].
inline Graph random_graph(Vertex n, std::size_t extra_edges, std::uint64_t seed, bool directed,
                          Weight max_weight, bool spanning_tree = true) {
    auto rng = make_rng(seed, "test-graph");
    std::uniform_int_distribution<Weight> weight(1, max_weight);
    std::vector<std::tuple<Vertex, Vertex, Weight>> edges;
    if (spanning_tree)
        for (Vertex v = 1; v < n; ++v) {
            std::uniform_int_distribution<Vertex> parent(0, v - 1);
            const Vertex p = parent(rng);
            if (directed && rng() % 2)
                edges.emplace_back(v, p, weight(rng));
            else
                edges.emplace_back(p, v, weight(rng));
        }
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    for (std::size_t i = 0; i < extra_edges; ++i) {
        const Vertex u = pick(rng);
        const Vertex v = pick(rng);
        if (u == v) continue;
        edges.emplace_back(u, v, weight(rng));
    }
    return directed ? Graph::build_directed(n, std::move(edges))
                    : Graph::build_undirected(n, std::move(edges));
}

// All-pairs agreement between hub-label queries and the Dijkstra oracle.
inline bool covers_all_pairs(const Graph& g, const Labeling& l) {
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        const auto dist = dijkstra_oracle(g, u);
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (ppsd_query(l, u, v).dist != dist[v]) return false;
    }
    return true;
}

}  // namespace hublab::test
