#include "hublab/tables.hpp"

#include <algorithm>

#include "hublab/parallel.hpp"

namespace hublab {

namespace {

class SpinGuard {
public:
    explicit SpinGuard(std::atomic_flag& f) : f_(f) {
        while (f_.test_and_set(std::memory_order_acquire)) {
        }
    }
    ~SpinGuard() { f_.clear(std::memory_order_release); }

private:
    std::atomic_flag& f_;
};

}  // namespace

GlobalLocalTable::GlobalLocalTable(Vertex n, bool directed) : n_(n), directed_(directed) {
    for (int s = 0; s < sides(); ++s) {
        side_[s].global.resize(n);
        side_[s].local.resize(n);
        side_[s].locks = std::make_unique<VertexLock[]>(n);
        for (Vertex v = 0; v < n; ++v) side_[s].locks[v].flag.clear();
    }
}

void GlobalLocalTable::append_local(int side, Vertex v, HubLabel l) {
    SpinGuard guard(side_[side].locks[v].flag);
    side_[side].local[v].push_back(l);
}

void GlobalLocalTable::snapshot_local(int side, Vertex v, std::vector<HubLabel>& out) const {
    auto& self = const_cast<GlobalLocalTable&>(*this);
    SpinGuard guard(self.side_[side].locks[v].flag);
    const auto& s = side_[side].local[v];
    out.insert(out.end(), s.begin(), s.end());
}

bool GlobalLocalTable::local_covered(int side, Vertex v, Dist delta,
                                     const RootIndex& root_labels) const {
    auto& self = const_cast<GlobalLocalTable&>(*this);
    SpinGuard guard(self.side_[side].locks[v].flag);
    const auto& s = side_[side].local[v];
    return distance_query(delta, root_labels, {s.data(), s.size()});
}

void GlobalLocalTable::sort_local(const Ranking& r, unsigned workers) {
    for (int s = 0; s < sides(); ++s) {
        auto& local = side_[s].local;
        parallel_for(n_, workers, [&](std::uint64_t v) {
            std::sort(local[v].begin(), local[v].end(), [&](const HubLabel& a, const HubLabel& b) {
                return r.rank(a.hub) > r.rank(b.hub);
            });
        });
    }
}

std::vector<LocalLabel> GlobalLocalTable::enumerate_local() const {
    std::vector<LocalLabel> out;
    out.reserve(local_count());
    for (int s = 0; s < sides(); ++s)
        for (Vertex v = 0; v < n_; ++v)
            for (const HubLabel& l : side_[s].local[v]) out.push_back({s, v, l});
    return out;
}

void GlobalLocalTable::commit_superstep(const Ranking& r, const std::vector<std::uint8_t>& keep_mask) {
    std::uint64_t total = 0;
    for (int s = 0; s < sides(); ++s)
        for (Vertex v = 0; v < n_; ++v) total += side_[s].local[v].size();
    if (keep_mask.size() != total)
        throw ContractViolation("keep mask covers " + std::to_string(keep_mask.size()) +
                                " labels, local table holds " + std::to_string(total));
    std::size_t idx = 0;
    for (int s = 0; s < sides(); ++s) {
        for (Vertex v = 0; v < n_; ++v) {
            auto& local = side_[s].local[v];
            auto& global = side_[s].global[v];
            const std::size_t old_size = global.size();
            for (const HubLabel& l : local)
                if (keep_mask[idx++]) global.push_back(l);
            std::inplace_merge(global.begin(),
                               global.begin() + static_cast<std::ptrdiff_t>(old_size), global.end(),
                               [&](const HubLabel& a, const HubLabel& b) {
                                   return r.rank(a.hub) > r.rank(b.hub);
                               });
            local.clear();
        }
    }
    local_count_.store(0, std::memory_order_relaxed);
}

void GlobalLocalTable::commit_all(const Ranking& r) {
    std::uint64_t total = 0;
    for (int s = 0; s < sides(); ++s)
        for (Vertex v = 0; v < n_; ++v) total += side_[s].local[v].size();
    commit_superstep(r, std::vector<std::uint8_t>(total, 1));
}

Labeling GlobalLocalTable::to_labeling() const {
    Labeling l(n_, directed_);
    for (Vertex v = 0; v < n_; ++v) {
        l.outbound(v) = side_[kOutbound].global[v];
        auto& out_local = side_[kOutbound].local[v];
        l.outbound(v).insert(l.outbound(v).end(), out_local.begin(), out_local.end());
        if (directed_) {
            l.inbound(v) = side_[kInbound].global[v];
            auto& in_local = side_[kInbound].local[v];
            l.inbound(v).insert(l.inbound(v).end(), in_local.begin(), in_local.end());
        }
    }
    return l;
}

CommonLabelTable::CommonLabelTable(const Ranking& r, std::uint32_t eta, bool directed)
    : directed_(directed) {
    const std::uint32_t count = std::min<std::uint32_t>(eta, r.num_vertices());
    hubs_.assign(r.order().begin(), r.order().begin() + count);
    to_hub_.resize(count);
    if (directed_) from_hub_.resize(count);
}

int CommonLabelTable::slot_of(Vertex hub) const {
    for (std::size_t i = 0; i < hubs_.size(); ++i)
        if (hubs_[i] == hub) return static_cast<int>(i);
    return -1;
}

void CommonLabelTable::insert_to_hub(Vertex hub, Vertex v, Dist d) {
    const int slot = slot_of(hub);
    if (slot < 0) throw ContractViolation("hub outside common-table prefix");
    to_hub_[slot][v] = d;
}

void CommonLabelTable::insert_from_hub(Vertex hub, Vertex v, Dist d) {
    const int slot = slot_of(hub);
    if (slot < 0) throw ContractViolation("hub outside common-table prefix");
    (directed_ ? from_hub_ : to_hub_)[slot][v] = d;
}

std::optional<Dist> CommonLabelTable::lookup_to(Vertex hub, Vertex v) const {
    const int slot = slot_of(hub);
    if (slot < 0) throw ContractViolation("hub outside common-table prefix");
    if (v == hub) return 0;
    auto it = to_hub_[slot].find(v);
    if (it == to_hub_[slot].end()) return std::nullopt;
    return it->second;
}

std::optional<Dist> CommonLabelTable::lookup_from(Vertex hub, Vertex v) const {
    const int slot = slot_of(hub);
    if (slot < 0) throw ContractViolation("hub outside common-table prefix");
    if (v == hub) return 0;
    const auto& maps = directed_ ? from_hub_ : to_hub_;
    auto it = maps[slot].find(v);
    if (it == maps[slot].end()) return std::nullopt;
    return it->second;
}

void CommonLabelTable::seal(Vertex hub) {
    const int slot = slot_of(hub);
    if (slot < 0) throw ContractViolation("hub outside common-table prefix");
    if (static_cast<std::uint32_t>(slot) == sealed_) ++sealed_;
}

bool CommonLabelTable::prunes(const Ranking& r, Vertex root, Vertex v, Dist delta,
                              bool reversed) const {
    const Vertex root_rank = r.rank(root);
    for (std::uint32_t i = 0; i < sealed_; ++i) {
        const Vertex c = hubs_[i];
        if (r.rank(c) <= root_rank) break;  // prefix is rank ordered
        // Forward tree: d(root->c) + d(c->v); reverse tree mirrors it.
        const auto a = reversed ? lookup_to(c, v) : lookup_to(c, root);
        if (!a) continue;
        const auto b = reversed ? lookup_from(c, root) : lookup_from(c, v);
        if (!b) continue;
        if (*a + *b <= delta) return true;
    }
    return false;
}

std::optional<Dist> common_lookup(const CommonLabelTable& t, Vertex hub, Vertex v) {
    return t.lookup_to(hub, v);
}

CommonLabelTable common_table_from_labeling(const Labeling& l, const Ranking& r, std::uint32_t eta) {
    CommonLabelTable t(r, eta, l.directed());
    for (Vertex v = 0; v < l.num_vertices(); ++v) {
        for (const HubLabel& lab : l.outbound(v))
            if (t.is_prefix_hub(lab.hub)) t.insert_to_hub(lab.hub, v, lab.dist);
        if (l.directed())
            for (const HubLabel& lab : l.inbound(v))
                if (t.is_prefix_hub(lab.hub)) t.insert_from_hub(lab.hub, v, lab.dist);
    }
    for (Vertex hub : t.hubs()) t.seal(hub);
    return t;
}

}  // namespace hublab
