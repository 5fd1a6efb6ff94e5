#include "hublab/cluster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hublab/parallel.hpp"
#include "hublab/rng.hpp"
#include "hublab/tables.hpp"

namespace hublab {

MessageBus::MessageBus(std::uint32_t q) : q_(q), slots_(q), inboxes_(q) {}

void MessageBus::begin_superstep(std::uint32_t index) { superstep_ = index; }

void MessageBus::broadcast(std::uint32_t from, std::vector<std::uint8_t> payload) {
    auto& slot = slots_[from];
    slot.events.push_back({superstep_, from, BusOp::kBroadcast, payload.size()});
    slot.broadcasts.push_back({from, std::move(payload)});
}

void MessageBus::send(std::uint32_t from, std::uint32_t to, std::vector<std::uint8_t> payload) {
    auto& slot = slots_[from];
    slot.events.push_back({superstep_, from, BusOp::kPointToPoint, payload.size()});
    slot.sends.emplace_back(to, Delivery{from, std::move(payload)});
}

void MessageBus::contribute_or(std::uint32_t from, const std::vector<std::uint8_t>& bits) {
    auto& slot = slots_[from];
    // Metered as the bitvector it models.
    slot.events.push_back({superstep_, from, BusOp::kAllReduce, (bits.size() + 7) / 8});
    slot.or_bits = bits;
}

void MessageBus::contribute_and(std::uint32_t from, const std::vector<std::uint8_t>& bits) {
    auto& slot = slots_[from];
    slot.events.push_back({superstep_, from, BusOp::kAllReduce, (bits.size() + 7) / 8});
    slot.and_bits = bits;
    slot.has_and = true;
}

void MessageBus::contribute_min(std::uint32_t from, const std::vector<Dist>& values) {
    auto& slot = slots_[from];
    slot.events.push_back({superstep_, from, BusOp::kAllReduce, values.size() * sizeof(Dist)});
    slot.min_values = values;
}

void MessageBus::contribute_sum(std::uint32_t from, const std::vector<double>& values) {
    auto& slot = slots_[from];
    slot.events.push_back({superstep_, from, BusOp::kAllReduce, values.size() * sizeof(double)});
    slot.sum_values = values;
}

void MessageBus::barrier() {
    delivered_broadcasts_.clear();
    for (auto& inbox : inboxes_) inbox.clear();
    or_result_.clear();
    and_result_.clear();
    min_result_.clear();
    sum_result_.clear();
    for (std::uint32_t i = 0; i < q_; ++i) {
        auto& slot = slots_[i];
        for (auto& b : slot.broadcasts) delivered_broadcasts_.push_back(std::move(b));
        slot.broadcasts.clear();
        for (auto& [to, msg] : slot.sends) inboxes_[to].push_back(std::move(msg));
        slot.sends.clear();
        if (!slot.or_bits.empty()) {
            if (or_result_.empty()) or_result_.assign(slot.or_bits.size(), 0);
            for (std::size_t j = 0; j < slot.or_bits.size(); ++j) or_result_[j] |= slot.or_bits[j];
            slot.or_bits.clear();
        }
        if (slot.has_and) {
            if (and_result_.empty()) and_result_.assign(slot.and_bits.size(), 1);
            for (std::size_t j = 0; j < slot.and_bits.size(); ++j)
                and_result_[j] = and_result_[j] & slot.and_bits[j];
            slot.and_bits.clear();
            slot.has_and = false;
        }
        if (!slot.min_values.empty()) {
            if (min_result_.empty()) min_result_.assign(slot.min_values.size(), kInfDist);
            for (std::size_t j = 0; j < slot.min_values.size(); ++j)
                min_result_[j] = std::min(min_result_[j], slot.min_values[j]);
            slot.min_values.clear();
        }
        if (!slot.sum_values.empty()) {
            if (sum_result_.empty()) sum_result_.assign(slot.sum_values.size(), 0.0);
            for (std::size_t j = 0; j < slot.sum_values.size(); ++j) sum_result_[j] += slot.sum_values[j];
            slot.sum_values.clear();
        }
        for (const auto& e : slot.events) traffic_.push_back(e);
        slot.events.clear();
    }
}

Labeling ClusterRun::merged(const Ranking& r) const {
    if (shards.empty()) return {};
    const Vertex n = shards[0].num_vertices();
    const bool directed = shards[0].directed();
    Labeling out(n, directed);
    auto by_rank = [&](const HubLabel& a, const HubLabel& b) { return r.rank(a.hub) > r.rank(b.hub); };
    for (Vertex v = 0; v < n; ++v) {
        for (const auto& shard : shards) {
            const auto& s = shard.outbound(v);
            out.outbound(v).insert(out.outbound(v).end(), s.begin(), s.end());
            if (directed) {
                const auto& si = shard.inbound(v);
                out.inbound(v).insert(out.inbound(v).end(), si.begin(), si.end());
            }
        }
        std::sort(out.outbound(v).begin(), out.outbound(v).end(), by_rank);
        if (directed) std::sort(out.inbound(v).begin(), out.inbound(v).end(), by_rank);
    }
    return out;
}

std::uint64_t ClusterRun::bytes(BusOp op) const {
    std::uint64_t total = 0;
    for (const auto& e : traffic)
        if (e.op == op) total += e.bytes;
    return total;
}

std::vector<std::vector<Vertex>> partition_tasks(const Ranking& r, std::uint32_t q) {
    if (q < 1) throw ContractViolation("q must be >= 1");
    std::vector<std::vector<Vertex>> shards(q);
    const auto order = r.order();
    for (std::size_t pos = 0; pos < order.size(); ++pos) shards[pos % q].push_back(order[pos]);
    return shards;
}

std::vector<Vertex> sync_schedule(Vertex n, const ClusterConfig& cfg) {
    if (n == 0) return {};
    std::uint32_t syncs = cfg.sync_count;
    if (syncs == 0) {
        syncs = static_cast<std::uint32_t>(std::ceil(std::log(double(n)) / std::log(8.0)));
        syncs = std::max<std::uint32_t>(1, syncs);
    }
    // Smallest x with x * (1 + beta + ... + beta^(syncs-1)) >= n.
    long double weight = 0;
    long double term = 1;
    for (std::uint32_t i = 0; i < syncs; ++i, term *= cfg.beta) weight += term;
    Vertex x = static_cast<Vertex>(std::ceil(static_cast<long double>(n) / weight));
    x = std::max<Vertex>(1, x);
    std::vector<Vertex> sizes;
    Vertex remaining = n;
    std::uint64_t step = x;
    for (std::uint32_t i = 0; i < syncs && remaining > 0; ++i) {
        const Vertex s = static_cast<Vertex>(std::min<std::uint64_t>(step, remaining));
        sizes.push_back(s);
        remaining -= s;
        step = std::min<std::uint64_t>(step, n) * cfg.beta;  // keep the growth overflow-free
    }
    if (remaining > 0) sizes.back() += remaining;  // guard against rounding
    return sizes;
}

namespace {

void push_u32(std::vector<std::uint8_t>& buf, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}

void push_u64(std::vector<std::uint8_t>& buf, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}

std::uint32_t read_u32(const std::vector<std::uint8_t>& buf, std::size_t& at) {
    std::uint32_t x = 0;
    for (int i = 3; i >= 0; --i) x = (x << 8) | buf[at + i];
    at += 4;
    return x;
}

std::uint64_t read_u64(const std::vector<std::uint8_t>& buf, std::size_t& at) {
    std::uint64_t x = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | buf[at + i];
    at += 8;
    return x;
}

struct NewLabel {
    int side;
    Vertex vertex;
    Vertex hub;
    Dist dist;
};

std::vector<std::uint8_t> encode_labels(const std::vector<NewLabel>& labels) {
    std::uint32_t out_count = 0;
    for (const auto& l : labels) out_count += (l.side == kOutbound);
    std::vector<std::uint8_t> buf;
    buf.reserve(8 + labels.size() * 16);
    push_u32(buf, out_count);
    push_u32(buf, static_cast<std::uint32_t>(labels.size()) - out_count);
    for (int side : {kOutbound, kInbound})
        for (const auto& l : labels)
            if (l.side == side) {
                push_u32(buf, l.vertex);
                push_u32(buf, l.hub);
                push_u64(buf, l.dist);
            }
    return buf;
}

void decode_labels(const std::vector<std::uint8_t>& buf, std::vector<NewLabel>& out) {
    std::size_t at = 0;
    const std::uint32_t out_count = read_u32(buf, at);
    const std::uint32_t in_count = read_u32(buf, at);
    for (std::uint32_t i = 0; i < out_count + in_count; ++i) {
        NewLabel l;
        l.side = i < out_count ? kOutbound : kInbound;
        l.vertex = read_u32(buf, at);
        l.hub = read_u32(buf, at);
        l.dist = read_u64(buf, at);
        out.push_back(l);
    }
}

struct Node {
    Node(std::uint32_t id, Vertex n, bool directed, const Ranking& r, std::uint32_t eta)
        : id(id), table(n, directed), common(r, eta, directed) {}

    std::uint32_t id;
    GlobalLocalTable table;
    CommonLabelTable common;
    std::vector<Vertex> tasks;     // TQ_id in rank order
    std::size_t next_task = 0;     // first task not yet processed
    std::vector<NewLabel> decoded; // per-superstep scratch
    std::size_t batch_offset = 0;  // my labels' start in the decoded list
    std::vector<PsiSample> psi;
};

// Tasks of this node inside the global position window [begin, end).
std::vector<Vertex> window_tasks(const Node& node, const Ranking& r, Vertex begin, Vertex end,
                                 std::size_t& cursor) {
    std::vector<Vertex> roots;
    while (cursor < node.tasks.size()) {
        const Vertex pos = r.position(node.tasks[cursor]);
        if (pos >= end) break;
        if (pos >= begin) roots.push_back(node.tasks[cursor]);
        ++cursor;
    }
    return roots;
}

void seal_window(std::vector<Node>& nodes, const Ranking& r, std::uint32_t eta, Vertex begin,
                 Vertex end) {
    const Vertex top = std::min<Vertex>(end, std::min<Vertex>(eta, r.num_vertices()));
    for (Vertex pos = begin; pos < top; ++pos)
        for (auto& node : nodes) node.common.seal(r.order()[pos]);
}

// One DGLL superstep over the position window: local pruned construction,
// label broadcast, distributed cleaning with an OR all-reduce, commit of
// survivors and common-table replication of top-eta labels.
void dgll_superstep(const Graph& g, const Ranking& r, const ClusterConfig& cfg,
                    std::vector<Node>& nodes, MessageBus& bus, Vertex begin, Vertex end) {
    const std::uint32_t q = cfg.q;
    run_workers(q, [&](unsigned ni) {
        Node& node = nodes[ni];
        const auto roots = window_tasks(node, r, begin, end, node.next_task);
        std::atomic<std::size_t> cursor{0};
        run_workers(cfg.workers_per_node, [&](unsigned) {
            DijkstraScratch ws(g.num_vertices());
            while (true) {
                const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
                if (i >= roots.size()) break;
                prune_dij_rq(g, r, roots[i], node.table, ws, &node.common);
            }
        });
        node.table.sort_local(r, cfg.workers_per_node);
        std::vector<NewLabel> fresh;
        for (const LocalLabel& l : node.table.enumerate_local())
            fresh.push_back({l.side, l.vertex, l.label.hub, l.label.dist});
        if (!fresh.empty()) bus.broadcast(ni, encode_labels(fresh));
    });
    bus.barrier();

    // Every node sees the identical new-label sequence (sender order) and
    // judges redundancy against its own shard.
    run_workers(q, [&](unsigned ni) {
        Node& node = nodes[ni];
        node.decoded.clear();
        node.batch_offset = 0;
        for (const auto& d : bus.broadcasts()) {
            if (d.from == ni) node.batch_offset = node.decoded.size();
            decode_labels(d.payload, node.decoded);
        }
        std::vector<std::uint8_t> bits(node.decoded.size(), 0);
        for (std::size_t j = 0; j < node.decoded.size(); ++j) {
            const NewLabel& l = node.decoded[j];
            const int hub_side =
                node.table.directed() ? (l.side == kOutbound ? kInbound : kOutbound) : kOutbound;
            LabelView lh(node.table.global(hub_side, l.hub),
                         node.table.local_quiescent(hub_side, l.hub), l.hub, r);
            LabelView lv(node.table.global(l.side, l.vertex),
                         node.table.local_quiescent(l.side, l.vertex), l.vertex, r);
            if (cleaning_query(l.vertex, l.hub, l.dist, lh, lv, r)) bits[j] = 1;
        }
        bus.contribute_or(ni, bits);
    });
    bus.barrier();

    run_workers(q, [&](unsigned ni) {
        Node& node = nodes[ni];
        const auto& redundant = bus.or_result();
        const std::uint64_t mine = node.table.enumerate_local().size();
        std::vector<std::uint8_t> keep(mine, 1);
        for (std::uint64_t j = 0; j < mine; ++j)
            if (!redundant.empty() && redundant[node.batch_offset + j]) keep[j] = 0;
        node.table.commit_superstep(r, keep);
        // Survivors of top-eta hubs replicate into every common table.
        for (std::size_t j = 0; j < node.decoded.size(); ++j) {
            if (!redundant.empty() && redundant[j]) continue;
            const NewLabel& l = node.decoded[j];
            if (r.position(l.hub) >= node.common.eta()) continue;
            if (l.side == kOutbound)
                node.common.insert_to_hub(l.hub, l.vertex, l.dist);
            else
                node.common.insert_from_hub(l.hub, l.vertex, l.dist);
        }
    });
    seal_window(nodes, r, cfg.eta, begin, end);
}

std::vector<Node> make_nodes(const Graph& g, const Ranking& r, const ClusterConfig& cfg) {
    std::vector<Node> nodes;
    nodes.reserve(cfg.q);
    for (std::uint32_t i = 0; i < cfg.q; ++i)
        nodes.emplace_back(i, g.num_vertices(), g.directed(), r, cfg.eta);
    auto shards = partition_tasks(r, cfg.q);
    for (std::uint32_t i = 0; i < cfg.q; ++i) nodes[i].tasks = std::move(shards[i]);
    return nodes;
}

ClusterRun finish_run(std::string algorithm, const ClusterConfig& cfg, std::vector<Node>& nodes,
                      MessageBus& bus) {
    ClusterRun run;
    run.algorithm = std::move(algorithm);
    run.q = cfg.q;
    run.eta = cfg.eta;
    run.traffic = bus.traffic();
    for (auto& node : nodes) {
        run.shards.push_back(node.table.to_labeling());
        run.psi.insert(run.psi.end(), node.psi.begin(), node.psi.end());
    }
    std::sort(run.psi.begin(), run.psi.end(),
              [](const PsiSample& a, const PsiSample& b) { return a.tree_index < b.tree_index; });
    return run;
}

// Plants this node's tasks in [begin, end); emissions go straight to the
// shard (they are canonical) and top-eta trees are staged for broadcast.
void plant_window(const Graph& g, const Ranking& r, const ClusterConfig& cfg, Node& node,
                  Vertex begin, Vertex end, std::vector<NewLabel>& staged) {
    const auto roots = window_tasks(node, r, begin, end, node.next_task);
    std::vector<PlantRootResult> results(roots.size());
    std::atomic<std::size_t> cursor{0};
    run_workers(cfg.workers_per_node, [&](unsigned) {
        DijkstraScratch ws(g.num_vertices());
        while (true) {
            const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= roots.size()) break;
            results[i] = plant_root(g, r, roots[i], ws, cfg.early_termination, &node.common);
        }
    });
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Vertex root = roots[i];
        const PlantRootResult& res = results[i];
        node.psi.push_back({r.position(root), root, r.rank(root), res.explored, res.emitted,
                            res.psi()});
        const bool replicate = r.position(root) < cfg.eta;
        for (const auto& [v, d] : res.in_labels) {
            const int side = g.directed() ? kInbound : kOutbound;
            node.table.append_local(side, v, {root, d});
            if (replicate) staged.push_back({side, v, root, d});
        }
        if (g.directed())
            for (const auto& [v, d] : res.out_labels) {
                node.table.append_local(kOutbound, v, {root, d});
                if (replicate) staged.push_back({kOutbound, v, root, d});
            }
    }
    node.table.commit_all(r);
}

void replicate_common(Node& node, const MessageBus& bus) {
    node.decoded.clear();
    for (const auto& d : bus.broadcasts()) decode_labels(d.payload, node.decoded);
    for (const NewLabel& l : node.decoded) {
        if (l.side == kOutbound)
            node.common.insert_to_hub(l.hub, l.vertex, l.dist);
        else
            node.common.insert_from_hub(l.hub, l.vertex, l.dist);
    }
}

}  // namespace

ClusterRun dgll_run(const Graph& g, const Ranking& r, const ClusterConfig& cfg) {
    cfg.validate();
    auto nodes = make_nodes(g, r, cfg);
    MessageBus bus(cfg.q);
    const auto sizes = sync_schedule(g.num_vertices(), cfg);
    Vertex begin = 0;
    for (std::uint32_t step = 0; step < sizes.size(); ++step) {
        bus.begin_superstep(step);
        dgll_superstep(g, r, cfg, nodes, bus, begin, begin + sizes[step]);
        begin += sizes[step];
    }
    return finish_run("dgll", cfg, nodes, bus);
}

ClusterRun plant_run(const Graph& g, const Ranking& r, const ClusterConfig& cfg) {
    cfg.validate();
    auto nodes = make_nodes(g, r, cfg);
    MessageBus bus(cfg.q);
    const Vertex n = g.num_vertices();
    Vertex begin = 0;
    std::uint32_t step = 0;
    if (cfg.eta > 0 && n > 0) {
        // Pre-broadcast phase: plant the prefix roots and replicate their
        // labels so later trees can prune on them.
        const Vertex top = std::min<Vertex>(n, cfg.eta);
        bus.begin_superstep(step++);
        run_workers(cfg.q, [&](unsigned ni) {
            std::vector<NewLabel> staged;
            plant_window(g, r, cfg, nodes[ni], 0, top, staged);
            if (!staged.empty()) bus.broadcast(ni, encode_labels(staged));
        });
        bus.barrier();
        run_workers(cfg.q, [&](unsigned ni) { replicate_common(nodes[ni], bus); });
        seal_window(nodes, r, cfg.eta, 0, top);
        begin = top;
    }
    if (begin < n) {
        bus.begin_superstep(step);
        run_workers(cfg.q, [&](unsigned ni) {
            std::vector<NewLabel> staged;
            plant_window(g, r, cfg, nodes[ni], begin, n, staged);
        });
        bus.barrier();
    }
    return finish_run("plant", cfg, nodes, bus);
}

ClusterRun hybrid_run(const Graph& g, const Ranking& r, const ClusterConfig& cfg) {
    cfg.validate();
    auto nodes = make_nodes(g, r, cfg);
    MessageBus bus(cfg.q);
    const auto sizes = sync_schedule(g.num_vertices(), cfg);
    Vertex begin = 0;
    bool planting = true;
    std::uint32_t switch_step = ClusterRun::kNoSwitch;
    for (std::uint32_t step = 0; step < sizes.size(); ++step) {
        bus.begin_superstep(step);
        const Vertex end = begin + sizes[step];
        if (planting) {
            run_workers(cfg.q, [&](unsigned ni) {
                Node& node = nodes[ni];
                const std::size_t first_tree = node.psi.size();
                std::vector<NewLabel> staged;
                plant_window(g, r, cfg, node, begin, end, staged);
                if (!staged.empty()) bus.broadcast(ni, encode_labels(staged));
                double psi_sum = 0;
                for (std::size_t i = first_tree; i < node.psi.size(); ++i)
                    psi_sum += node.psi[i].psi;
                bus.contribute_sum(ni, {psi_sum, double(node.psi.size() - first_tree)});
            });
            bus.barrier();
            run_workers(cfg.q, [&](unsigned ni) { replicate_common(nodes[ni], bus); });
            seal_window(nodes, r, cfg.eta, begin, end);
            // Windowed mean over the superstep just finished; the switch is
            // global and permanent.
            const auto& sums = bus.sum_result();
            const double mean = sums[1] > 0 ? sums[0] / sums[1] : 0.0;
            if (mean > cfg.psi_threshold) {
                planting = false;
                switch_step = step + 1;
            }
        } else {
            dgll_superstep(g, r, cfg, nodes, bus, begin, end);
        }
        begin = end;
    }
    auto run = finish_run("hybrid", cfg, nodes, bus);
    run.switch_superstep = switch_step;
    return run;
}

std::string traffic_csv(const std::vector<TrafficEvent>& events) {
    std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::uint64_t> agg;
    for (const auto& e : events) agg[{e.superstep, e.node, int(e.op)}] += e.bytes;
    std::ostringstream os;
    os << "superstep,node,op,bytes\n";
    static const char* names[] = {"broadcast", "p2p", "allreduce"};
    for (const auto& [key, bytes] : agg) {
        const auto& [step, node, op] = key;
        os << step << ',' << node << ',' << names[op] << ',' << bytes << '\n';
    }
    return os.str();
}

void save_shards(const ClusterRun& run, std::uint64_t ranking_digest, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir);
    nlohmann::json manifest;
    manifest["format"] = "chl-shards";
    manifest["algorithm"] = run.algorithm;
    manifest["q"] = run.q;
    manifest["eta"] = run.eta;
    manifest["ranking_digest"] = ranking_digest;
    std::vector<std::string> files;
    for (std::uint32_t i = 0; i < run.shards.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "node_%03u.labels", i);
        save_labeling_file(run.shards[i], (fs::path(dir) / name).string());
        files.emplace_back(name);
    }
    manifest["files"] = files;
    std::ofstream f(fs::path(dir) / "manifest.json");
    if (!f) throw IoError("cannot write shard manifest in " + dir);
    f << manifest.dump(2) << '\n';
}

ShardSet load_shards(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream f(fs::path(dir) / "manifest.json");
    if (!f) throw IoError("cannot open shard manifest in " + dir);
    nlohmann::json manifest;
    try {
        f >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad shard manifest: ") + e.what());
    }
    if (manifest.value("format", "") != "chl-shards")
        throw ParseError("not a shard directory: " + dir);
    ShardSet set;
    set.q = manifest.at("q").get<std::uint32_t>();
    set.eta = manifest.value("eta", 0u);
    set.ranking_digest = manifest.value("ranking_digest", std::uint64_t(0));
    set.algorithm = manifest.value("algorithm", "");
    for (const auto& name : manifest.at("files"))
        set.shards.push_back(load_labeling_file((fs::path(dir) / name.get<std::string>()).string()));
    return set;
}

}  // namespace hublab
