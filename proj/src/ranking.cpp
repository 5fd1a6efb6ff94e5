#include "hublab/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "hublab/rng.hpp"

namespace hublab {

Ranking Ranking::from_order(std::vector<Vertex> order) {
    Ranking r;
    const Vertex n = static_cast<Vertex>(order.size());
    r.order_ = std::move(order);
    r.rank_.assign(n, 0);
    for (Vertex i = 0; i < n; ++i) r.rank_[r.order_[i]] = n - 1 - i;
    return r;
}

bool Ranking::is_permutation() const {
    const Vertex n = num_vertices();
    std::vector<bool> seen(n, false);
    for (Vertex v : order_) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    for (Vertex v = 0; v < n; ++v)
        if (order_[position(v)] != v) return false;
    return true;
}

std::uint64_t Ranking::digest() const {
    std::uint64_t h = fnv1a64("hublab-ranking");
    for (Vertex v : order_) h = fnv1a64_mix(h, v);
    return h;
}

namespace {

Ranking order_by_score(Vertex n, const std::vector<std::uint64_t>& score) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    return Ranking::from_order(std::move(order));
}

}  // namespace

Ranking rank_by_degree(const Graph& g) {
    const Vertex n = g.num_vertices();
    std::vector<std::uint64_t> score(n);
    for (Vertex v = 0; v < n; ++v) score[v] = g.degree(v);
    return order_by_score(n, score);
}

Ranking rank_by_approx_betweenness(const Graph& g, std::uint32_t samples, std::uint64_t seed) {
    const Vertex n = g.num_vertices();
    std::vector<std::uint64_t> score(n, 0);
    if (n == 0) return Ranking::from_order({});

    std::vector<Vertex> roots(n);
    std::iota(roots.begin(), roots.end(), 0);
    if (samples < n) {
        auto rng = make_rng(seed, "betweenness-roots");
        for (std::uint32_t i = 0; i < samples; ++i) {
            std::uniform_int_distribution<Vertex> pick(i, n - 1);
            std::swap(roots[i], roots[pick(rng)]);
        }
        roots.resize(samples);
    }

    std::vector<Dist> dist(n);
    std::vector<Vertex> parent(n);
    std::vector<Vertex> settle_order;
    settle_order.reserve(n);
    std::vector<std::uint32_t> subtree(n);
    using QE = std::pair<Dist, Vertex>;
    for (Vertex root : roots) {
        std::fill(dist.begin(), dist.end(), kInfDist);
        std::fill(parent.begin(), parent.end(), kNoVertex);
        settle_order.clear();
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        dist[root] = 0;
        pq.emplace(0, root);
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d != dist[v]) continue;
            settle_order.push_back(v);
            for (const Arc& a : g.out(v)) {
                const Dist nd = d + a.weight;
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    parent[a.to] = v;
                    pq.emplace(nd, a.to);
                }
            }
        }
        // Strict descendant counts: walk the tree bottom-up in reverse
        // settle order.
        for (Vertex v : settle_order) subtree[v] = 1;
        for (auto it = settle_order.rbegin(); it != settle_order.rend(); ++it) {
            const Vertex v = *it;
            if (parent[v] != kNoVertex) subtree[parent[v]] += subtree[v];
        }
        for (Vertex v : settle_order)
            if (v != root) score[v] += subtree[v] - 1;
    }
    return order_by_score(n, score);
}

}  // namespace hublab
