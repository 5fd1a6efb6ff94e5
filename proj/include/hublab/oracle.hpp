#pragma once

#include <vector>

#include "hublab/graph.hpp"
#include "hublab/labeling.hpp"
#include "hublab/ranking.hpp"
#include "hublab/types.hpp"

namespace hublab {

// Exact single-source distances over forward (or reverse) adjacency;
// kInfDist marks unreachable vertices. Reference oracle for all tests.
std::vector<Dist> dijkstra_oracle(const Graph& g, Vertex source, bool reversed = false);

// Brute-force canonical hub labeling via all-pairs distances: every
// connected ordered pair (u, v) is labeled by the maximum-rank vertex on
// any shortest u-v path. Self labels stay implicit. Test scale only.
Labeling chl_oracle(const Graph& g, const Ranking& r);

// Maximum-rank vertex on any shortest u-v path given the all-pairs rows
// from u (forward) and into v (reverse); kNoVertex when disconnected.
Vertex max_rank_on_shortest_path(const Ranking& r, const std::vector<Dist>& dist_from_u,
                                 const std::vector<Dist>& dist_into_v, Vertex u, Vertex v);

}  // namespace hublab
