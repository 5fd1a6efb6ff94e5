#include "hublab/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hublab/oracle.hpp"
#include "hublab/rng.hpp"

namespace hublab {

namespace {

std::vector<Vertex> sample_vertices(Vertex n, Vertex count, std::mt19937_64& rng) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (count >= n) return all;
    for (Vertex i = 0; i < count; ++i) {
        std::uniform_int_distribution<Vertex> pick(i, n - 1);
        std::swap(all[i], all[pick(rng)]);
    }
    all.resize(count);
    return all;
}

bool has_label(const LabelSet& s, const HubLabel& l) {
    return std::find(s.begin(), s.end(), l) != s.end();
}

}  // namespace

VerifyReport verify_labeling(const Graph& g, const Ranking& r, const Labeling& l,
                             Vertex pair_limit, std::uint64_t seed) {
    VerifyReport rep;
    std::ostringstream out;
    const Vertex n = g.num_vertices();
    auto rng = make_rng(seed, "verify-pairs");
    const bool exhaustive = n <= pair_limit;
    const Vertex sample = std::min<Vertex>(n, 64);
    const std::vector<Vertex> sources = exhaustive ? sample_vertices(n, n, rng)
                                                   : sample_vertices(n, sample, rng);
    // Undirected checks reuse the forward rows, so targets must be sources.
    const std::vector<Vertex> targets =
        (exhaustive || !g.directed()) ? sources : sample_vertices(n, sample, rng);

    std::vector<std::vector<Dist>> from(n), into;
    for (Vertex u : sources) from[u] = dijkstra_oracle(g, u, false);
    if (g.directed()) {
        into.resize(n);
        for (Vertex v : targets) into[v] = dijkstra_oracle(g, v, true);
    }
    auto dist_into = [&](Vertex v) -> const std::vector<Dist>& {
        return g.directed() ? into[v] : from[v];
    };

    // 1. cover property: label queries equal oracle distances
    rep.cover_ok = true;
    for (Vertex u : sources) {
        for (Vertex v : targets) {
            const Dist expect = from[u][v];
            const Dist got = ppsd_query(l, u, v).dist;
            if (got != expect) {
                rep.cover_ok = false;
                out << "cover: FAIL pair (" << u << ", " << v << ") labels give "
                    << (got == kInfDist ? std::string("INF") : std::to_string(got)) << " oracle "
                    << (expect == kInfDist ? std::string("INF") : std::to_string(expect)) << "\n";
            }
        }
        if (!rep.cover_ok) break;
    }
    if (rep.cover_ok) out << "cover: PASS (" << sources.size() << "x" << targets.size() << " pairs)\n";

    // 2. respects the ranking: the top-ranked shortest-path vertex of every
    // checked pair is a common hub at exact distances
    rep.respects_ok = true;
    for (Vertex u : sources) {
        for (Vertex v : targets) {
            if (u == v || from[u][v] == kInfDist) continue;
            // For sampled directed checks we need the reverse row of v.
            if (g.directed() && into[v].empty()) continue;
            const Vertex hm = max_rank_on_shortest_path(r, from[u], dist_into(v), u, v);
            const bool u_side = hm == u || has_label(l.outbound(u), {hm, from[u][hm]});
            const bool v_side = hm == v || has_label(l.inbound(v), {hm, dist_into(v)[hm]});
            if (!u_side || !v_side) {
                rep.respects_ok = false;
                out << "respects-rank: FAIL pair (" << u << ", " << v << ") misses hub " << hm << "\n";
                break;
            }
        }
        if (!rep.respects_ok) break;
    }
    if (rep.respects_ok) out << "respects-rank: PASS\n";

    // 3. minimality: the cleaning query keeps every stored label
    rep.minimal_ok = true;
    for (Vertex v = 0; v < n && rep.minimal_ok; ++v) {
        for (int side = 0; side < (l.directed() ? 2 : 1); ++side) {
            const LabelSet& set = side == 0 ? l.outbound(v) : l.inbound(v);
            for (const HubLabel& lab : set) {
                const LabelSet& hub_set = l.directed()
                                              ? (side == 0 ? l.inbound(lab.hub) : l.outbound(lab.hub))
                                              : l.outbound(lab.hub);
                if (cleaning_query(v, lab.hub, lab.dist, hub_set, set, r)) {
                    rep.minimal_ok = false;
                    out << "minimality: FAIL redundant label (v=" << v << ", hub=" << lab.hub
                        << ", dist=" << lab.dist << ")\n";
                    break;
                }
            }
            if (!rep.minimal_ok) break;
        }
    }
    if (rep.minimal_ok) out << "minimality: PASS (" << l.total_labels() << " labels)\n";

    rep.text = out.str();
    return rep;
}

}  // namespace hublab
