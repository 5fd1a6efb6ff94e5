#pragma once

#include <string>
#include <vector>

#include "hublab/builders.hpp"
#include "hublab/graph.hpp"
#include "hublab/labeling.hpp"
#include "hublab/ranking.hpp"
#include "hublab/tables.hpp"
#include "hublab/types.hpp"

namespace hublab {

// Emissions of one planted tree: every (vertex, dist) pair labeled with the
// tree's root as hub. psi = explored / max(1, labels emitted).
struct PlantTreeResult {
    std::vector<std::pair<Vertex, Dist>> labels;
    std::uint64_t explored = 0;
    double psi() const { return double(explored) / double(std::max<std::size_t>(1, labels.size())); }
};

// Unpruned Dijkstra that propagates the maximum-rank ancestor along
// selected shortest paths and emits a label exactly when the root is the
// highest ranked vertex on every shortest path to the popped vertex.
// Early termination stops once no queued vertex can still emit. A common
// table prunes subtrees certified by a higher ranked prefix hub.
PlantTreeResult plant_dijkstra(const Graph& g, const Ranking& r, Vertex root,
                               DijkstraScratch& scratch, bool early_termination = true,
                               const CommonLabelTable* common = nullptr, bool reversed = false);

// Forward + reverse emissions of one root (reverse only for directed
// graphs) with the combined explored/emitted accounting.
struct PlantRootResult {
    std::vector<std::pair<Vertex, Dist>> in_labels;   // from the forward tree
    std::vector<std::pair<Vertex, Dist>> out_labels;  // from the reverse tree
    std::uint64_t explored = 0;
    std::uint64_t emitted = 0;
    double psi() const { return double(explored) / double(std::max<std::uint64_t>(1, emitted)); }
};

PlantRootResult plant_root(const Graph& g, const Ranking& r, Vertex root, DijkstraScratch& scratch,
                           bool early_termination = true, const CommonLabelTable* common = nullptr);

// Plants every root; the union of emissions is the canonical labeling with
// no cleaning phase. Trees share nothing mutable and may run in parallel.
Labeling plant_all(const Graph& g, const Ranking& r, const CommonLabelTable* common = nullptr,
                   bool early_termination = true, unsigned workers = 0);

struct PsiSample {
    std::uint32_t tree_index;  // position in rank order
    Vertex root;
    Vertex rank;
    std::uint64_t explored;
    std::uint64_t labels;
    double psi;
};

// Plants all roots in rank order and records per-tree exploration cost.
std::vector<PsiSample> psi_trace(const Graph& g, const Ranking& r);
std::string psi_trace_csv(const std::vector<PsiSample>& samples);

// Bootstraps a rank-prefix-complete table by planting the eta top roots.
CommonLabelTable build_common_table(const Graph& g, const Ranking& r, std::uint32_t eta);

}  // namespace hublab
