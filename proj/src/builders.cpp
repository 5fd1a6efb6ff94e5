#include "hublab/builders.hpp"

#include <algorithm>
#include <atomic>

#include "hublab/parallel.hpp"

namespace hublab {

DijkstraScratch::DijkstraScratch(Vertex n)
    : dist(n, kInfDist), settled(n, 0), ancestor(n) {
    for (Vertex v = 0; v < n; ++v) ancestor[v] = v;
}

void DijkstraScratch::reset() {
    for (Vertex v : touched) {
        dist[v] = kInfDist;
        settled[v] = 0;
        ancestor[v] = v;
    }
    touched.clear();
    while (!queue.empty()) queue.pop();
}

namespace {

// One pruned tree. reversed trees run over reverse adjacency and write
// outbound labels; forward trees write inbound labels.
void pruned_tree(const Graph& g, const Ranking& r, Vertex root, bool reversed,
                 GlobalLocalTable& tables, DijkstraScratch& ws, const CommonLabelTable* common) {
    const int label_side = tables.directed() ? (reversed ? kOutbound : kInbound) : kOutbound;
    const int root_side = tables.directed() ? (reversed ? kInbound : kOutbound) : kOutbound;

    RootIndex idx(root);
    for (const HubLabel& l : tables.global(root_side, root)) idx.add(l);
    {
        std::vector<HubLabel> fresh;
        tables.snapshot_local(root_side, root, fresh);
        for (const HubLabel& l : fresh) idx.add(l);
    }

    const Vertex root_rank = r.rank(root);
    ws.dist[root] = 0;
    ws.touch(root);
    ws.queue.emplace(0, root);
    std::uint64_t emitted = 0;
    while (!ws.queue.empty()) {
        const auto [d, v] = ws.queue.top();
        ws.queue.pop();
        if (ws.settled[v]) continue;
        ws.settled[v] = 1;
        if (r.rank(v) > root_rank) continue;  // Rank-Query
        if (common && common->prunes(r, root, v, d, reversed)) continue;
        if (v != root) {
            if (distance_query(d, idx, tables.global(label_side, v))) continue;  // Distance-Query
            if (tables.local_covered(label_side, v, d, idx)) continue;
            tables.append_local(label_side, v, {root, d});
            ++emitted;
        }
        for (const Arc& a : reversed ? g.in(v) : g.out(v)) {
            const Dist nd = d + a.weight;
            if (nd < ws.dist[a.to]) {
                if (ws.dist[a.to] == kInfDist) ws.touch(a.to);
                ws.dist[a.to] = nd;
                ws.queue.emplace(nd, a.to);
            }
        }
    }
    tables.add_local_count(emitted);
    ws.reset();
}

}  // namespace

void prune_dij_rq(const Graph& g, const Ranking& r, Vertex root, GlobalLocalTable& tables,
                  DijkstraScratch& scratch, const CommonLabelTable* common) {
    pruned_tree(g, r, root, false, tables, scratch, common);
    if (g.directed()) pruned_tree(g, r, root, true, tables, scratch, common);
}

std::vector<std::uint8_t> clean_keep_mask(const GlobalLocalTable& tables, const Ranking& r,
                                          unsigned workers) {
    const auto locals = tables.enumerate_local();
    std::vector<std::uint8_t> keep(locals.size(), 1);
    parallel_for(locals.size(), workers, [&](std::uint64_t i) {
        const auto& [side, v, label] = locals[i];
        // Mirror of the query direction: an outbound label of v is tested
        // against the hub's inbound set, and vice versa.
        const int hub_side = tables.directed() ? (side == kOutbound ? kInbound : kOutbound) : kOutbound;
        const Vertex h = label.hub;
        LabelView lh(tables.global(hub_side, h), tables.local_quiescent(hub_side, h), h, r);
        LabelView lv(tables.global(side, v), tables.local_quiescent(side, v), v, r);
        if (cleaning_query(v, h, label.dist, lh, lv, r)) keep[i] = 0;
    });
    return keep;
}

Labeling seq_pll(const Graph& g, const Ranking& r) {
    GlobalLocalTable tables(g.num_vertices(), g.directed());
    DijkstraScratch ws(g.num_vertices());
    for (Vertex root : r.order()) {
        prune_dij_rq(g, r, root, tables, ws);
        tables.commit_all(r);
    }
    return tables.to_labeling();
}

namespace {

// Shared construction burst: workers pop the highest ranked remaining root
// until the cursor (or the local-label budget) is exhausted.
void construction_burst(const Graph& g, const Ranking& r, GlobalLocalTable& tables,
                        std::atomic<Vertex>& cursor, unsigned workers, double label_budget) {
    const auto order = r.order();
    run_workers(workers, [&](unsigned) {
        DijkstraScratch ws(g.num_vertices());
        while (true) {
            if (label_budget > 0 && double(tables.local_count()) > label_budget) break;
            const Vertex i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= order.size()) break;
            prune_dij_rq(g, r, order[i], tables, ws);
        }
    });
}

}  // namespace

Labeling lcc_construct(const Graph& g, const Ranking& r, const BuildConfig& cfg) {
    cfg.validate();
    GlobalLocalTable tables(g.num_vertices(), g.directed());
    std::atomic<Vertex> cursor{0};
    construction_burst(g, r, tables, cursor, cfg.workers, 0.0);
    tables.sort_local(r, cfg.workers);
    return tables.to_labeling();
}

Labeling lcc(const Graph& g, const Ranking& r, const BuildConfig& cfg) {
    cfg.validate();
    GlobalLocalTable tables(g.num_vertices(), g.directed());
    std::atomic<Vertex> cursor{0};
    construction_burst(g, r, tables, cursor, cfg.workers, 0.0);
    tables.sort_local(r, cfg.workers);
    tables.commit_superstep(r, clean_keep_mask(tables, r, cfg.workers));
    return tables.to_labeling();
}

Labeling gll(const Graph& g, const Ranking& r, const BuildConfig& cfg) {
    cfg.validate();
    const Vertex n = g.num_vertices();
    GlobalLocalTable tables(n, g.directed());
    std::atomic<Vertex> cursor{0};
    const double budget = cfg.alpha * double(n);
    do {
        construction_burst(g, r, tables, cursor, cfg.workers, budget);
        tables.sort_local(r, cfg.workers);
        tables.commit_superstep(r, clean_keep_mask(tables, r, cfg.workers));
    } while (cursor.load() < n);
    return tables.to_labeling();
}

}  // namespace hublab
