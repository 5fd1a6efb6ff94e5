#pragma once

#include <span>
#include <vector>

#include "hublab/graph.hpp"
#include "hublab/types.hpp"

namespace hublab {

// Total order on vertices: rank in [0, n), higher value = more important.
// position(v) = n-1-rank(v) is the index into the descending order list,
// so position 0 is the most important vertex.
class Ranking {
public:
    Ranking() = default;

    // order[0] is the highest ranked vertex.
    static Ranking from_order(std::vector<Vertex> order);

    Vertex num_vertices() const { return static_cast<Vertex>(order_.size()); }
    Vertex rank(Vertex v) const { return rank_[v]; }
    Vertex position(Vertex v) const { return num_vertices() - 1 - rank_[v]; }
    std::span<const Vertex> order() const { return order_; }

    bool is_permutation() const;
    std::uint64_t digest() const;

private:
    std::vector<Vertex> rank_;
    std::vector<Vertex> order_;
};

// Descending (out+in) degree, ties by ascending vertex id.
Ranking rank_by_degree(const Graph& g);

// Builds `samples` full Dijkstra trees from seeded random roots (distinct
// roots; all vertices when samples >= n) and scores each vertex by the
// number of strict tree descendants summed over trees. Descending score,
// ties by ascending vertex id.
Ranking rank_by_approx_betweenness(const Graph& g, std::uint32_t samples, std::uint64_t seed);

}  // namespace hublab
