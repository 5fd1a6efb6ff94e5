#include "hublab/oracle.hpp"

#include <algorithm>
#include <queue>

namespace hublab {

std::vector<Dist> dijkstra_oracle(const Graph& g, Vertex source, bool reversed) {
    const Vertex n = g.num_vertices();
    std::vector<Dist> dist(n, kInfDist);
    using QE = std::pair<Dist, Vertex>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[source] = 0;
    pq.emplace(0, source);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        for (const Arc& a : reversed ? g.in(v) : g.out(v)) {
            const Dist nd = d + a.weight;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                pq.emplace(nd, a.to);
            }
        }
    }
    return dist;
}

Vertex max_rank_on_shortest_path(const Ranking& r, const std::vector<Dist>& dist_from_u,
                                 const std::vector<Dist>& dist_into_v, Vertex, Vertex v) {
    const Dist duv = dist_from_u[v];
    if (duv == kInfDist) return kNoVertex;
    Vertex best = kNoVertex;
    for (Vertex x = 0; x < static_cast<Vertex>(dist_from_u.size()); ++x) {
        if (dist_from_u[x] == kInfDist || dist_into_v[x] == kInfDist) continue;
        if (dist_from_u[x] + dist_into_v[x] != duv) continue;
        if (best == kNoVertex || r.rank(x) > r.rank(best)) best = x;
    }
    return best;
}

Labeling chl_oracle(const Graph& g, const Ranking& r) {
    const Vertex n = g.num_vertices();
    std::vector<std::vector<Dist>> from(n), into(n);
    for (Vertex v = 0; v < n; ++v) {
        from[v] = dijkstra_oracle(g, v, false);
        into[v] = g.directed() ? dijkstra_oracle(g, v, true) : from[v];
    }
    Labeling l(n, g.directed());
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            if (u == v || from[u][v] == kInfDist) continue;
            const Vertex hm = max_rank_on_shortest_path(r, from[u], into[v], u, v);
            if (hm != u) {
                auto& s = l.outbound(u);
                const HubLabel lab{hm, from[u][hm]};
                if (std::find(s.begin(), s.end(), lab) == s.end()) s.push_back(lab);
            }
            if (hm != v) {
                auto& s = l.inbound(v);
                const HubLabel lab{hm, into[v][hm]};
                if (std::find(s.begin(), s.end(), lab) == s.end()) s.push_back(lab);
            }
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        auto by_rank = [&](const HubLabel& a, const HubLabel& b) { return r.rank(a.hub) > r.rank(b.hub); };
        std::sort(l.outbound(v).begin(), l.outbound(v).end(), by_rank);
        if (g.directed()) std::sort(l.inbound(v).begin(), l.inbound(v).end(), by_rank);
    }
    return l;
}

}  // namespace hublab
