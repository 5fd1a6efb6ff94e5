#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hublab/ranking.hpp"
#include "hublab/types.hpp"

namespace hublab {

struct HubLabel {
    Vertex hub;
    Dist dist;
    friend bool operator==(const HubLabel&, const HubLabel&) = default;
};

// Sorted by descending hub rank. The self label (v, 0) is implicit: it is
// never stored and never counted, but every query primitive behaves as if
// it were present.
using LabelSet = std::vector<HubLabel>;

// Per-vertex label sets. Directed graphs keep an outbound set (hubs
// reachable from v) and an inbound set (hubs that reach v); undirected
// graphs share one set for both views.
class Labeling {
public:
    Labeling() = default;
    Labeling(Vertex n, bool directed) : n_(n), directed_(directed), out_(n), in_(directed ? n : 0) {}

    Vertex num_vertices() const { return n_; }
    bool directed() const { return directed_; }

    LabelSet& outbound(Vertex v) { return out_[v]; }
    const LabelSet& outbound(Vertex v) const { return out_[v]; }
    LabelSet& inbound(Vertex v) { return directed_ ? in_[v] : out_[v]; }
    const LabelSet& inbound(Vertex v) const { return directed_ ? in_[v] : out_[v]; }

    // Stored labels only; self labels excluded by construction.
    std::uint64_t total_labels() const;
    double avg_label_size() const { return n_ ? double(total_labels()) / double(n_) : 0.0; }

    friend bool operator==(const Labeling&, const Labeling&) = default;

private:
    Vertex n_ = 0;
    bool directed_ = false;
    std::vector<LabelSet> out_;
    std::vector<LabelSet> in_;
};

struct QueryResult {
    Dist dist = kInfDist;
    Vertex hub = kNoVertex;  // witness; ties go to the higher ranked hub
    friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// Point-to-point shortest distance over one labeling: minimum of
// d(u,h) + d(h,v) over common hubs of u's outbound and v's inbound set,
// implicit self labels included. Works on any sets ordered by a shared
// descending-rank order; no ranking needed at query time.
QueryResult ppsd_query(const LabelSet& lu_out, const LabelSet& lv_in, Vertex u, Vertex v);
QueryResult ppsd_query(const Labeling& l, Vertex u, Vertex v);

// Constant-time lookup over a root's labels, used by the construction-time
// distance query. Includes the root's implicit self label.
class RootIndex {
public:
    RootIndex() = default;
    explicit RootIndex(Vertex root) { map_.emplace(root, 0); }
    void add(const HubLabel& l) { map_.emplace(l.hub, l.dist); }
    const Dist* find(Vertex hub) const {
        auto it = map_.find(hub);
        return it == map_.end() ? nullptr : &it->second;
    }

private:
    std::unordered_map<Vertex, Dist> map_;
};

// Construction-time distance query: true iff some hub common to `labels`
// and the root's index certifies d(v,h') + d(root,h') <= delta, meaning the
// tree can be pruned at v.
bool distance_query(Dist delta, const RootIndex& root_labels, std::span<const HubLabel> labels);

// Merged read-only view over up to two descending-rank sorted label arrays
// plus the owner's implicit self label.
class LabelView {
public:
    LabelView(std::span<const HubLabel> a, std::span<const HubLabel> b, Vertex owner,
              const Ranking& r)
        : a_(a), b_(b), owner_(owner), r_(&r) {}
    LabelView(const LabelSet& a, Vertex owner, const Ranking& r) : a_(a), owner_(owner), r_(&r) {}

    // Yields labels in strictly descending hub rank; returns false when done.
    bool next(HubLabel& out);

private:
    std::span<const HubLabel> a_;
    std::span<const HubLabel> b_;
    Vertex owner_;
    const Ranking* r_;
    std::size_t ia_ = 0, ib_ = 0;
    bool self_done_ = false;
};

// Cleaning query over the sorted label sets of v and h: linear merge in
// descending rank; the label (h, delta) in L_v is redundant iff the first
// common hub u with d(u,v) + d(u,h) <= delta outranks h.
bool cleaning_query(Vertex v, Vertex h, Dist delta, LabelView lh, LabelView lv, const Ranking& r);
bool cleaning_query(Vertex v, Vertex h, Dist delta, const LabelSet& lh, const LabelSet& lv,
                    const Ranking& r);

// Binary serialization: header {magic "CHLB", version, n, directed}, then
// per vertex a count and (hub u32, dist u64) pairs in descending-rank
// order (outbound then inbound for directed graphs). Little endian.
void save_labeling(const Labeling& l, std::ostream& os);
Labeling load_labeling(std::istream& is);
void save_labeling_file(const Labeling& l, const std::string& path);
Labeling load_labeling_file(const std::string& path);

// Text form for diffing: one "v h d" line per label ("v h d out|in" for
// directed graphs). The reader needs the shape (n, directed) since the
// text carries labels only; with it the round-trip is lossless.
void write_labeling_text(const Labeling& l, std::ostream& os);
Labeling read_labeling_text(std::istream& is, Vertex n, bool directed);

std::uint64_t labeling_digest(const Labeling& l);

}  // namespace hublab
