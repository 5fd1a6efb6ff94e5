#include "hublab/query.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "hublab/rng.hpp"

namespace hublab {

QueryBatch random_queries(Vertex n, std::size_t count, std::uint64_t seed) {
    QueryBatch batch;
    if (n == 0) return batch;
    auto rng = make_rng(seed, "queries");
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    batch.pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Vertex u = pick(rng);
        const Vertex v = pick(rng);
        batch.pairs.emplace_back(u, v);
    }
    return batch;
}

QueryBatch read_queries(std::istream& is) {
    QueryBatch batch;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u)) continue;
        if (!(ss >> v) || u < 0 || v < 0)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
        batch.pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return batch;
}

std::uint32_t compute_zeta(std::uint32_t q) {
    if (q < 1) throw ContractViolation("q must be >= 1");
    auto pairs = [](std::uint64_t z) { return z * (z - 1) / 2; };
    std::uint32_t zeta = static_cast<std::uint32_t>((1.0 + std::sqrt(1.0 + 8.0 * double(q))) / 2.0);
    while (pairs(zeta) > q) --zeta;
    while (pairs(zeta + 1) <= q) ++zeta;
    return std::max<std::uint32_t>(zeta, 2);
}

QdolLayout QdolLayout::make(Vertex n, std::uint32_t q) {
    QdolLayout layout;
    layout.zeta = compute_zeta(q);
    layout.n = n;
    return layout;
}

std::uint32_t QdolLayout::partition_of(Vertex v) const {
    // Contiguous near-equal ranges; the first n % zeta ranges get one extra.
    const Vertex base = n / zeta;
    const Vertex extra = n % zeta;
    const Vertex boundary = extra * (base + 1);
    if (v < boundary) return v / (base + 1);
    return extra + (v - boundary) / std::max<Vertex>(base, 1);
}

std::uint32_t QdolLayout::node_of_pair(std::uint32_t pi, std::uint32_t pj) const {
    if (pi > pj) std::swap(pi, pj);
    if (pi == pj || pj >= zeta) throw ContractViolation("bad partition pair");
    // Lexicographic enumeration of pairs (i, j), i < j.
    return pi * zeta - pi * (pi + 1) / 2 + (pj - pi - 1);
}

std::uint32_t QdolLayout::node_for_query(Vertex u, Vertex v) const {
    std::uint32_t pu = partition_of(u);
    std::uint32_t pv = partition_of(v);
    if (pu == pv) return pu == 0 ? node_of_pair(0, 1) : node_of_pair(0, pu);
    return node_of_pair(pu, pv);
}

namespace {

[[noreturn]] void bad_query(std::size_t index, Vertex u, Vertex v) {
    throw ContractViolation("query " + std::to_string(index) + " (" + std::to_string(u) + ", " +
                            std::to_string(v) + "): vertex id out of range");
}

}  // namespace

std::vector<Dist> qlsn(const QueryBatch& batch, const Labeling& l) {
    std::vector<Dist> out;
    out.reserve(batch.pairs.size());
    const Vertex n = l.num_vertices();
    for (std::size_t i = 0; i < batch.pairs.size(); ++i) {
        const auto& [u, v] = batch.pairs[i];
        if (u >= n || v >= n) bad_query(i, u, v);
        out.push_back(ppsd_query(l, u, v).dist);
    }
    return out;
}

namespace {

// Partial PPSD over one node's shard: both stored sets are restricted to
// the shard's hubs, and a self hub counts on the node that owns it (its
// stored twin lives in the same shard).
Dist shard_partial(const Labeling& shard, Vertex u, Vertex v) {
    if (u == v) return 0;
    Dist best = kInfDist;
    const LabelSet& lu = shard.outbound(u);
    const LabelSet& lv = shard.inbound(v);
    std::unordered_map<Vertex, Dist> index;
    index.reserve(lu.size());
    for (const HubLabel& l : lu) index.emplace(l.hub, l.dist);
    for (const HubLabel& l : lv) {
        if (l.hub == u) best = std::min(best, l.dist);  // implicit self of u
        auto it = index.find(l.hub);
        if (it != index.end()) best = std::min(best, it->second + l.dist);
    }
    auto it = index.find(v);  // implicit self of v
    if (it != index.end()) best = std::min(best, it->second);
    return best;
}

void push_u32v(std::vector<std::uint8_t>& buf, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}

}  // namespace

DistributedQueryResult qfdl(const QueryBatch& batch, const std::vector<Labeling>& shards) {
    const auto q = static_cast<std::uint32_t>(shards.size());
    if (q == 0) throw ContractViolation("qfdl needs at least one shard");
    const Vertex n = shards[0].num_vertices();
    MessageBus bus(q);
    bus.begin_superstep(0);
    // The querying node broadcasts the batch; every node answers partial
    // minima which reduce by minimum (unreachable is the identity).
    std::vector<std::uint8_t> payload;
    payload.reserve(batch.pairs.size() * 8);
    for (std::size_t i = 0; i < batch.pairs.size(); ++i) {
        const auto& [u, v] = batch.pairs[i];
        if (u >= n || v >= n) bad_query(i, u, v);
        push_u32v(payload, u);
        push_u32v(payload, v);
    }
    bus.broadcast(0, std::move(payload));
    bus.barrier();
    bus.begin_superstep(1);
    for (std::uint32_t node = 0; node < q; ++node) {
        std::vector<Dist> partial;
        partial.reserve(batch.pairs.size());
        for (const auto& [u, v] : batch.pairs) partial.push_back(shard_partial(shards[node], u, v));
        bus.contribute_min(node, partial);
    }
    bus.barrier();
    return {bus.min_result(), bus.traffic()};
}

DistributedQueryResult qdol(const QueryBatch& batch, const Labeling& full, std::uint32_t q) {
    const QdolLayout layout = QdolLayout::make(full.num_vertices(), q);
    const Vertex n = full.num_vertices();
    MessageBus bus(layout.nodes_used());
    bus.begin_superstep(0);
    // Queries sorted by destination node, sent point-to-point, answered by
    // the node holding both partitions, then rearranged to original order.
    std::vector<std::size_t> by_node(batch.pairs.size());
    std::iota(by_node.begin(), by_node.end(), 0);
    std::vector<std::uint32_t> dest(batch.pairs.size());
    for (std::size_t i = 0; i < batch.pairs.size(); ++i) {
        const auto& [u, v] = batch.pairs[i];
        if (u >= n || v >= n) bad_query(i, u, v);
        dest[i] = layout.node_for_query(u, v);
    }
    std::stable_sort(by_node.begin(), by_node.end(),
                     [&](std::size_t a, std::size_t b) { return dest[a] < dest[b]; });
    for (std::size_t i : by_node) {
        std::vector<std::uint8_t> msg;
        push_u32v(msg, batch.pairs[i].first);
        push_u32v(msg, batch.pairs[i].second);
        bus.send(0, dest[i], std::move(msg));
    }
    bus.barrier();
    bus.begin_superstep(1);
    // Each pair node answers its inbox with full local label sets.
    std::vector<std::vector<Dist>> answers(layout.nodes_used());
    for (std::uint32_t node = 0; node < layout.nodes_used(); ++node) {
        for (const auto& msg : bus.inbox(node)) {
            std::size_t at = 0;
            const Vertex u = msg.payload[at] | msg.payload[at + 1] << 8 | msg.payload[at + 2] << 16 |
                             std::uint32_t(msg.payload[at + 3]) << 24;
            at += 4;
            const Vertex v = msg.payload[at] | msg.payload[at + 1] << 8 | msg.payload[at + 2] << 16 |
                             std::uint32_t(msg.payload[at + 3]) << 24;
            answers[node].push_back(ppsd_query(full, u, v).dist);
            std::vector<std::uint8_t> reply(8);
            const Dist d = answers[node].back();
            for (int b = 0; b < 8; ++b) reply[b] = static_cast<std::uint8_t>(d >> (8 * b));
            bus.send(node, 0, std::move(reply));
        }
    }
    bus.barrier();
    // Replies arrive in node-major order matching the sorted sends.
    std::vector<Dist> dists(batch.pairs.size(), kInfDist);
    std::size_t reply_idx = 0;
    const auto& inbox = bus.inbox(0);
    for (std::size_t i : by_node) {
        const auto& msg = inbox[reply_idx++].payload;
        Dist d = 0;
        for (int b = 7; b >= 0; --b) d = (d << 8) | msg[b];
        dists[i] = d;
    }
    return {std::move(dists), bus.traffic()};
}

void write_distances(const std::vector<Dist>& dists, std::ostream& os) {
    for (Dist d : dists) {
        if (d == kInfDist)
            os << "INF\n";
        else
            os << d << '\n';
    }
}

std::string query_stats_csv(const QueryStats& s) {
    std::ostringstream os;
    os << "mode,queries,seconds,queries_per_s,mean_us\n";
    os << s.mode << ',' << s.queries << ',' << s.seconds << ',' << s.queries_per_s << ',' << s.mean_us
       << '\n';
    return os.str();
}

}  // namespace hublab
