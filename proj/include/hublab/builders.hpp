#pragma once

#include <queue>
#include <vector>

#include "hublab/graph.hpp"
#include "hublab/labeling.hpp"
#include "hublab/ranking.hpp"
#include "hublab/tables.hpp"
#include "hublab/types.hpp"

namespace hublab {

struct BuildConfig {
    unsigned workers = 0;  // 0 = hardware concurrency
    double alpha = 4.0;    // superstep threshold multiplier, must be > 1
    std::uint64_t seed = 0;

    void validate() const {
        if (alpha <= 1.0) throw ContractViolation("alpha must be > 1");
    }
};

// Reusable per-worker Dijkstra state. Runs only touch entries modified by
// the previous run, so resets are proportional to the tree size.
class DijkstraScratch {
public:
    explicit DijkstraScratch(Vertex n);

    std::vector<Dist> dist;
    std::vector<std::uint8_t> settled;
    std::vector<Vertex> ancestor;  // used by PLaNT trees
    std::vector<Vertex> touched;
    using QueueEntry = std::pair<Dist, Vertex>;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> queue;

    void touch(Vertex v) { touched.push_back(v); }
    void reset();
};

// Pruned Dijkstra with rank and distance queries (one tree per direction
// for directed graphs). New labels go to the local tier of `tables`; the
// common table, when given, adds prefix-hub distance-query pruning.
void prune_dij_rq(const Graph& g, const Ranking& r, Vertex root, GlobalLocalTable& tables,
                  DijkstraScratch& scratch, const CommonLabelTable* common = nullptr);

// Sequential pruned labeling: one tree per vertex in descending rank,
// committing after every tree. Output is the canonical labeling.
Labeling seq_pll(const Graph& g, const Ranking& r);

// Construct-then-clean: workers pop roots from a shared rank-ordered
// cursor, then one cleaning pass deletes every redundant label.
Labeling lcc(const Graph& g, const Ranking& r, const BuildConfig& cfg);

// Construction phase only (sorted, uncleaned); covers every pair and
// respects the ranking but may hold redundant labels.
Labeling lcc_construct(const Graph& g, const Ranking& r, const BuildConfig& cfg);

// Interleaved construction and cleaning: supersteps end once the local
// tier exceeds alpha * n fresh labels; cleaning then runs on the local
// labels only and survivors are committed to the global tier.
Labeling gll(const Graph& g, const Ranking& r, const BuildConfig& cfg);

// Keep mask over tables.enumerate_local() order: false = redundant.
// Cleaning consults global ∪ local of both endpoints. Callers must be
// quiescent and locals sorted.
std::vector<std::uint8_t> clean_keep_mask(const GlobalLocalTable& tables, const Ranking& r,
                                          unsigned workers);

}  // namespace hublab
