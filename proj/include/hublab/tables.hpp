#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hublab/labeling.hpp"
#include "hublab/ranking.hpp"
#include "hublab/types.hpp"

namespace hublab {

// Label set side. Undirected graphs only use kOutbound.
enum LabelSide : int { kOutbound = 0, kInbound = 1 };

// Identifies one local (uncommitted) label; the enumeration order of
// enumerate_local() defines keep-mask order.
struct LocalLabel {
    int side;
    Vertex vertex;
    HubLabel label;
};

// Two-tier label store of one construction run (or one cluster node's
// shard). The global tier is immutable while construction workers run and
// is read lock-free; the local tier takes concurrent appends under a
// per-vertex spinlock. Readers of the local tier may observe any prefix of
// the appends: a missed fresh label only weakens pruning.
class GlobalLocalTable {
public:
    GlobalLocalTable(Vertex n, bool directed);
    GlobalLocalTable(GlobalLocalTable&& other) noexcept
        : n_(other.n_), directed_(other.directed_), local_count_(other.local_count_.load()) {
        side_[0] = std::move(other.side_[0]);
        side_[1] = std::move(other.side_[1]);
    }

    Vertex num_vertices() const { return n_; }
    bool directed() const { return directed_; }
    int sides() const { return directed_ ? 2 : 1; }

    std::span<const HubLabel> global(int side, Vertex v) const {
        const auto& s = side_[side].global[v];
        return {s.data(), s.size()};
    }

    void append_local(int side, Vertex v, HubLabel l);

    // Appends do not touch the shared counter; tree builders report their
    // emission count once per tree to keep the threshold check cheap.
    void add_local_count(std::uint64_t k) { local_count_.fetch_add(k, std::memory_order_relaxed); }

    // Copies the current local labels of v into out (appended).
    void snapshot_local(int side, Vertex v, std::vector<HubLabel>& out) const;

    // Distance query against the local tier only, probed in place under
    // the vertex lock.
    bool local_covered(int side, Vertex v, Dist delta, const RootIndex& root_labels) const;

    // Unsynchronized view; only valid while no worker is appending.
    std::span<const HubLabel> local_quiescent(int side, Vertex v) const {
        const auto& s = side_[side].local[v];
        return {s.data(), s.size()};
    }

    std::uint64_t local_count() const { return local_count_.load(std::memory_order_relaxed); }

    // Superstep boundary: sort each vertex's local labels by descending
    // hub rank. Callers must be quiescent.
    void sort_local(const Ranking& r, unsigned workers);

    // Deterministic order defining the keep mask: side-major, then vertex,
    // then position.
    std::vector<LocalLabel> enumerate_local() const;

    // Merges surviving local labels into the global tier preserving the
    // descending-rank sort, empties the local tier and resets the counter.
    // The mask must cover exactly the local labels.
    void commit_superstep(const Ranking& r, const std::vector<std::uint8_t>& keep_mask);

    void commit_all(const Ranking& r);

    Labeling to_labeling() const;  // global ∪ local

private:
    // One lock per cache line; adjacent vertices must not false-share.
    struct alignas(64) VertexLock {
        std::atomic_flag flag;
    };
    struct Side {
        std::vector<LabelSet> global;
        std::vector<LabelSet> local;
        std::unique_ptr<VertexLock[]> locks;
    };
    Vertex n_ = 0;
    bool directed_ = false;
    alignas(64) std::atomic<std::uint64_t> local_count_{0};
    Side side_[2];
};

// Replicated labels of the eta top-ranked hubs. Rank-prefix complete by
// construction: a hub only becomes usable for pruning once sealed, and
// hubs seal in rank order. Write-once then read-only.
class CommonLabelTable {
public:
    CommonLabelTable() = default;
    CommonLabelTable(const Ranking& r, std::uint32_t eta, bool directed);

    std::uint32_t eta() const { return static_cast<std::uint32_t>(hubs_.size()); }
    std::span<const Vertex> hubs() const { return hubs_; }
    bool directed() const { return directed_; }

    bool is_prefix_hub(Vertex hub) const { return slot_of(hub) >= 0; }

    // d(v -> hub) / d(hub -> v); the hub's own entry is the implicit 0.
    void insert_to_hub(Vertex hub, Vertex v, Dist d);
    void insert_from_hub(Vertex hub, Vertex v, Dist d);
    std::optional<Dist> lookup_to(Vertex hub, Vertex v) const;
    std::optional<Dist> lookup_from(Vertex hub, Vertex v) const;

    // Marks the hub's label set complete. Sealing must follow rank order.
    void seal(Vertex hub);
    std::uint32_t sealed_prefix() const { return sealed_; }

    // True iff a sealed prefix hub ranked above `root` certifies
    // d(root, c) + d(c, v) <= delta in the direction of the tree
    // (reversed = tree over reverse adjacency).
    bool prunes(const Ranking& r, Vertex root, Vertex v, Dist delta, bool reversed) const;

private:
    int slot_of(Vertex hub) const;
    bool directed_ = false;
    std::vector<Vertex> hubs_;  // order[0..eta)
    std::uint32_t sealed_ = 0;
    std::vector<std::unordered_map<Vertex, Dist>> to_hub_;
    std::vector<std::unordered_map<Vertex, Dist>> from_hub_;  // aliases to_hub_ when undirected
};

// Convenience lookup: d(v, hub) for undirected tables, d(v -> hub) for
// directed ones. Throws ContractViolation when hub is outside the prefix.
std::optional<Dist> common_lookup(const CommonLabelTable& t, Vertex hub, Vertex v);

// Inserts every label of `l` whose hub is a prefix hub, then seals all
// prefix hubs. Used to build a table from a complete labeling.
CommonLabelTable common_table_from_labeling(const Labeling& l, const Ranking& r, std::uint32_t eta);

}  // namespace hublab
