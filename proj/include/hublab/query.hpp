#pragma once

#include <string>
#include <vector>

#include "hublab/cluster.hpp"
#include "hublab/labeling.hpp"
#include "hublab/types.hpp"

namespace hublab {

struct QueryBatch {
    std::vector<std::pair<Vertex, Vertex>> pairs;
};

// Seeded uniform random (source, target) pairs.
QueryBatch random_queries(Vertex n, std::size_t count, std::uint64_t seed);
QueryBatch read_queries(std::istream& is);

// Largest partition count whose pair table fits q nodes:
// zeta = floor((1 + sqrt(1 + 8q)) / 2), so C(zeta, 2) <= q.
std::uint32_t compute_zeta(std::uint32_t q);

// Overlapping-partition layout: zeta near-equal contiguous vertex ranges;
// each unordered partition pair lives on one node (lexicographic order).
struct QdolLayout {
    std::uint32_t zeta = 2;
    Vertex n = 0;

    static QdolLayout make(Vertex n, std::uint32_t q);

    std::uint32_t nodes_used() const { return zeta * (zeta - 1) / 2; }
    std::uint32_t partition_of(Vertex v) const;
    std::uint32_t node_of_pair(std::uint32_t pi, std::uint32_t pj) const;
    // Same-partition queries go to the lowest-indexed node holding it.
    std::uint32_t node_for_query(Vertex u, Vertex v) const;
};

// Replicated labels, answered locally with no communication.
std::vector<Dist> qlsn(const QueryBatch& batch, const Labeling& l);

struct DistributedQueryResult {
    std::vector<Dist> dists;
    std::vector<TrafficEvent> traffic;
};

// Hub-disjoint shards: every query is broadcast, each node answers the
// partial minimum over its own hubs, partials reduce by minimum.
DistributedQueryResult qfdl(const QueryBatch& batch, const std::vector<Labeling>& shards);

// Overlapping partitions: queries are routed point-to-point to the single
// node holding both endpoint partitions and answered there.
DistributedQueryResult qdol(const QueryBatch& batch, const Labeling& full, std::uint32_t q);

// Distances file: one line per query, "INF" when unreachable.
void write_distances(const std::vector<Dist>& dists, std::ostream& os);

struct QueryStats {
    std::string mode;
    std::size_t queries = 0;
    double seconds = 0;
    double queries_per_s = 0;
    double mean_us = 0;
};
std::string query_stats_csv(const QueryStats& stats);

}  // namespace hublab
