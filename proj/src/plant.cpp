#include "hublab/plant.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "hublab/parallel.hpp"

namespace hublab {

PlantTreeResult plant_dijkstra(const Graph& g, const Ranking& r, Vertex root,
                               DijkstraScratch& ws, bool early_termination,
                               const CommonLabelTable* common, bool reversed) {
    PlantTreeResult res;
    const Vertex root_rank = r.rank(root);
    ws.dist[root] = 0;
    ws.touch(root);
    ws.queue.emplace(0, root);
    // Queued/active vertices whose selected path has no vertex ranked above
    // the root; once it drains, nothing reachable can emit anymore.
    std::uint64_t cnt = 1;
    while (!ws.queue.empty()) {
        if (early_termination && cnt == 0) break;
        const auto [d, v] = ws.queue.top();
        ws.queue.pop();
        if (ws.settled[v]) continue;
        ws.settled[v] = 1;
        ++res.explored;
        if (ws.ancestor[v] == root) --cnt;
        const Vertex nA = r.rank(v) > r.rank(ws.ancestor[v]) ? v : ws.ancestor[v];
        if (common && common->prunes(r, root, v, d, reversed)) continue;
        if (r.rank(nA) <= root_rank && v != root) res.labels.emplace_back(v, d);
        for (const Arc& a : reversed ? g.in(v) : g.out(v)) {
            const Vertex u = a.to;
            const Dist nd = d + a.weight;
            if (nd > ws.dist[u]) continue;
            const Vertex pA = ws.ancestor[u];
            if (nd < ws.dist[u]) {
                if (ws.dist[u] == kInfDist) ws.touch(u);
                // New selected path through v: its maximum-rank vertex plus
                // u itself.
                ws.ancestor[u] = r.rank(nA) > r.rank(u) ? nA : u;
                ws.dist[u] = nd;
                ws.queue.emplace(nd, u);
            } else {
                // Equal-length path: keep the higher ranked ancestor.
                ws.ancestor[u] = r.rank(nA) > r.rank(pA) ? nA : pA;
            }
            if (ws.ancestor[u] == root && pA != root)
                ++cnt;
            else if (ws.ancestor[u] != root && pA == root)
                --cnt;
        }
    }
    ws.reset();
    return res;
}

PlantRootResult plant_root(const Graph& g, const Ranking& r, Vertex root, DijkstraScratch& ws,
                           bool early_termination, const CommonLabelTable* common) {
    PlantRootResult res;
    PlantTreeResult fwd = plant_dijkstra(g, r, root, ws, early_termination, common, false);
    res.explored = fwd.explored;
    res.emitted = fwd.labels.size();
    res.in_labels = std::move(fwd.labels);
    if (g.directed()) {
        PlantTreeResult rev = plant_dijkstra(g, r, root, ws, early_termination, common, true);
        res.explored += rev.explored;
        res.emitted += rev.labels.size();
        res.out_labels = std::move(rev.labels);
    }
    return res;
}

namespace {

void append_root_emissions(Labeling& l, Vertex root, const PlantRootResult& res, bool directed) {
    for (const auto& [v, d] : res.in_labels) l.inbound(v).push_back({root, d});
    if (directed)
        for (const auto& [v, d] : res.out_labels) l.outbound(v).push_back({root, d});
}

}  // namespace

Labeling plant_all(const Graph& g, const Ranking& r, const CommonLabelTable* common,
                   bool early_termination, unsigned workers) {
    const Vertex n = g.num_vertices();
    const auto order = r.order();
    std::vector<PlantRootResult> results(n);
    std::atomic<Vertex> cursor{0};
    run_workers(workers, [&](unsigned) {
        DijkstraScratch ws(n);
        while (true) {
            const Vertex i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) break;
            results[i] = plant_root(g, r, order[i], ws, early_termination, common);
        }
    });
    // Roots in descending rank: per-vertex sets come out rank sorted.
    Labeling l(n, g.directed());
    for (Vertex i = 0; i < n; ++i) append_root_emissions(l, order[i], results[i], g.directed());
    return l;
}

std::vector<PsiSample> psi_trace(const Graph& g, const Ranking& r) {
    const Vertex n = g.num_vertices();
    std::vector<PsiSample> samples;
    samples.reserve(n);
    DijkstraScratch ws(n);
    for (Vertex i = 0; i < n; ++i) {
        const Vertex root = r.order()[i];
        PlantRootResult res = plant_root(g, r, root, ws);
        samples.push_back({i, root, r.rank(root), res.explored, res.emitted, res.psi()});
    }
    return samples;
}

std::string psi_trace_csv(const std::vector<PsiSample>& samples) {
    std::ostringstream os;
    os << "tree_index,root,rank,explored,labels,psi\n";
    for (const auto& s : samples)
        os << s.tree_index << ',' << s.root << ',' << s.rank << ',' << s.explored << ',' << s.labels
           << ',' << s.psi << '\n';
    return os.str();
}

CommonLabelTable build_common_table(const Graph& g, const Ranking& r, std::uint32_t eta) {
    CommonLabelTable table(r, eta, g.directed());
    DijkstraScratch ws(g.num_vertices());
    for (Vertex hub : table.hubs()) {
        PlantRootResult res = plant_root(g, r, hub, ws);
        for (const auto& [v, d] : res.in_labels) table.insert_from_hub(hub, v, d);
        if (g.directed())
            for (const auto& [v, d] : res.out_labels) table.insert_to_hub(hub, v, d);
        table.seal(hub);
    }
    return table;
}

}  // namespace hublab
