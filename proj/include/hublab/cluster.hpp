#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hublab/graph.hpp"
#include "hublab/labeling.hpp"
#include "hublab/plant.hpp"
#include "hublab/ranking.hpp"
#include "hublab/types.hpp"

namespace hublab {

struct ClusterConfig {
    std::uint32_t q = 1;            // node count
    std::uint32_t sync_count = 0;   // supersteps; 0 = ceil(log8 n)
    std::uint32_t beta = 8;         // superstep growth factor
    double psi_threshold = 100.0;   // hybrid switch; 500 suits road networks
    std::uint32_t eta = 16;         // common-table prefix size
    std::uint32_t workers_per_node = 1;
    bool early_termination = true;
    std::uint64_t seed = 0;

    void validate() const {
        if (q < 1) throw ContractViolation("q must be >= 1");
        if (beta < 2) throw ContractViolation("beta must be > 1");
    }
};

enum class BusOp { kBroadcast, kPointToPoint, kAllReduce };

struct TrafficEvent {
    std::uint32_t superstep;
    std::uint32_t node;
    BusOp op;
    std::uint64_t bytes;
};

// In-process message bus: the only channel between simulated nodes.
// Staged sends become visible after the barrier, in sender order, so a run
// is deterministic. Every operation is metered.
class MessageBus {
public:
    explicit MessageBus(std::uint32_t q);

    std::uint32_t nodes() const { return q_; }
    void begin_superstep(std::uint32_t index);

    // Staged operations; each node writes only its own slot, so node
    // phases may run on concurrent threads without locks.
    void broadcast(std::uint32_t from, std::vector<std::uint8_t> payload);
    void send(std::uint32_t from, std::uint32_t to, std::vector<std::uint8_t> payload);
    void contribute_or(std::uint32_t from, const std::vector<std::uint8_t>& bits);
    void contribute_and(std::uint32_t from, const std::vector<std::uint8_t>& bits);
    void contribute_min(std::uint32_t from, const std::vector<Dist>& values);
    void contribute_sum(std::uint32_t from, const std::vector<double>& values);

    // Delivers staged messages and folds reductions, in node order.
    void barrier();

    struct Delivery {
        std::uint32_t from;
        std::vector<std::uint8_t> payload;
    };
    // Broadcasts of the last superstep, identical view on every node.
    const std::vector<Delivery>& broadcasts() const { return delivered_broadcasts_; }
    const std::vector<Delivery>& inbox(std::uint32_t node) const { return inboxes_[node]; }
    const std::vector<std::uint8_t>& or_result() const { return or_result_; }
    const std::vector<std::uint8_t>& and_result() const { return and_result_; }
    const std::vector<Dist>& min_result() const { return min_result_; }
    const std::vector<double>& sum_result() const { return sum_result_; }

    const std::vector<TrafficEvent>& traffic() const { return traffic_; }

private:
    struct Slot {
        std::vector<Delivery> broadcasts;
        std::vector<std::pair<std::uint32_t, Delivery>> sends;
        std::vector<std::uint8_t> or_bits;
        std::vector<std::uint8_t> and_bits;
        bool has_and = false;
        std::vector<Dist> min_values;
        std::vector<double> sum_values;
        std::vector<TrafficEvent> events;
    };
    std::uint32_t q_;
    std::uint32_t superstep_ = 0;
    std::vector<Slot> slots_;
    std::vector<Delivery> delivered_broadcasts_;
    std::vector<std::vector<Delivery>> inboxes_;
    std::vector<std::uint8_t> or_result_;
    std::vector<std::uint8_t> and_result_;
    std::vector<Dist> min_result_;
    std::vector<double> sum_result_;
    std::vector<TrafficEvent> traffic_;
};

// Result of a distributed build: hub-disjoint shards (shard i holds labels
// whose hub sits at rank position ≡ i mod q) plus metered traffic.
struct ClusterRun {
    std::string algorithm;
    std::uint32_t q = 1;
    std::uint32_t eta = 0;
    std::uint32_t switch_superstep = kNoSwitch;  // hybrid: first DGLL superstep
    std::vector<Labeling> shards;
    std::vector<TrafficEvent> traffic;
    std::vector<PsiSample> psi;

    static constexpr std::uint32_t kNoSwitch = 0xffffffffu;

    Labeling merged(const Ranking& r) const;
    std::uint64_t bytes(BusOp op) const;
};

// Task shards in rank-circular order: TQ_i holds the vertices whose rank
// position ≡ i (mod q), each shard ordered by descending rank.
std::vector<std::vector<Vertex>> partition_tasks(const Ranking& r, std::uint32_t q);

// Geometric superstep sizes x, beta*x, beta^2*x, ... where x is the
// smallest positive integer whose geometric sum reaches n; truncated so
// the sizes sum to exactly n.
std::vector<Vertex> sync_schedule(Vertex n, const ClusterConfig& cfg);

ClusterRun dgll_run(const Graph& g, const Ranking& r, const ClusterConfig& cfg);
ClusterRun plant_run(const Graph& g, const Ranking& r, const ClusterConfig& cfg);
ClusterRun hybrid_run(const Graph& g, const Ranking& r, const ClusterConfig& cfg);

// "superstep,node,op,bytes" rows aggregated per (superstep, node, op).
std::string traffic_csv(const std::vector<TrafficEvent>& events);

// Shard directory: one binary label file per node plus manifest.json
// {q, eta, ranking digest, ...}.
void save_shards(const ClusterRun& run, std::uint64_t ranking_digest, const std::string& dir);

struct ShardSet {
    std::uint32_t q = 1;
    std::uint32_t eta = 0;
    std::uint64_t ranking_digest = 0;
    std::string algorithm;
    std::vector<Labeling> shards;
};
ShardSet load_shards(const std::string& dir);

}  // namespace hublab
