#include "hublab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "hublab/rng.hpp"

namespace hublab {

namespace {

using ArcTriple = std::tuple<Vertex, Vertex, Weight>;

// Sort, drop self loops, keep the minimum-weight parallel arc.
void normalize_arcs(std::vector<ArcTriple>& arcs) {
    std::sort(arcs.begin(), arcs.end());
    std::vector<ArcTriple> kept;
    kept.reserve(arcs.size());
    for (const auto& a : arcs) {
        auto [u, v, w] = a;
        if (u == v) continue;
        if (!kept.empty() && std::get<0>(kept.back()) == u && std::get<1>(kept.back()) == v) continue;
        kept.push_back(a);
    }
    arcs = std::move(kept);
}

void build_csr(Vertex n, const std::vector<ArcTriple>& arcs, std::vector<std::size_t>& off,
               std::vector<Arc>& out) {
    off.assign(n + 1, 0);
    for (const auto& [u, v, w] : arcs) off[u + 1]++;
    for (Vertex i = 0; i < n; ++i) off[i + 1] += off[i];
    out.resize(arcs.size());
    std::vector<std::size_t> cursor(off.begin(), off.end() - 1);
    for (const auto& [u, v, w] : arcs) out[cursor[u]++] = Arc{v, w};
}

}  // namespace

Graph Graph::build_directed(Vertex n, std::vector<ArcTriple> arcs) {
    normalize_arcs(arcs);
    Graph g;
    g.n_ = n;
    g.directed_ = true;
    g.m_ = arcs.size();
    build_csr(n, arcs, g.fwd_off_, g.fwd_arcs_);
    std::vector<ArcTriple> rev;
    rev.reserve(arcs.size());
    for (const auto& [u, v, w] : arcs) rev.emplace_back(v, u, w);
    std::sort(rev.begin(), rev.end());
    build_csr(n, rev, g.rev_off_, g.rev_arcs_);
    for (const auto& [u, v, w] : arcs) g.max_weight_ = std::max(g.max_weight_, w);
    return g;
}

Graph Graph::build_undirected(Vertex n, std::vector<ArcTriple> edges) {
    for (auto& [u, v, w] : edges)
        if (u > v) std::swap(u, v);
    normalize_arcs(edges);
    std::vector<ArcTriple> arcs;
    arcs.reserve(edges.size() * 2);
    for (const auto& [u, v, w] : edges) {
        arcs.emplace_back(u, v, w);
        arcs.emplace_back(v, u, w);
    }
    std::sort(arcs.begin(), arcs.end());
    Graph g;
    g.n_ = n;
    g.directed_ = false;
    g.m_ = edges.size();
    build_csr(n, arcs, g.fwd_off_, g.fwd_arcs_);
    for (const auto& [u, v, w] : edges) g.max_weight_ = std::max(g.max_weight_, w);
    return g;
}

std::vector<std::tuple<Vertex, Vertex, Weight>> Graph::canonical_edges() const {
    std::vector<ArcTriple> edges;
    edges.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (const Arc& a : out(u))
            if (directed_ || u < a.to) edges.emplace_back(u, a.to, a.weight);
    return edges;  // already sorted by construction
}

std::uint64_t Graph::digest() const {
    std::uint64_t h = fnv1a64("hublab-graph");
    h = fnv1a64_mix(h, n_);
    h = fnv1a64_mix(h, directed_ ? 1 : 0);
    for (const auto& [u, v, w] : canonical_edges()) {
        h = fnv1a64_mix(h, u);
        h = fnv1a64_mix(h, v);
        h = fnv1a64_mix(h, w);
    }
    return h;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph load_dimacs_gr(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    Vertex n = 0;
    std::uint64_t declared_m = 0;
    std::vector<ArcTriple> arcs;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        char tag = 0;
        ss >> tag;
        if (tag == 'p') {
            std::string kind;
            long long pn = -1, pm = -1;
            if (!(ss >> kind >> pn >> pm) || kind != "sp" || pn < 0 || pm < 0)
                parse_fail(line_no, "expected 'p sp <n> <m>'");
            if (have_header) parse_fail(line_no, "duplicate problem line");
            have_header = true;
            n = static_cast<Vertex>(pn);
            declared_m = static_cast<std::uint64_t>(pm);
            arcs.reserve(declared_m);
        } else if (tag == 'a') {
            if (!have_header) parse_fail(line_no, "arc before problem line");
            long long u = 0, v = 0, w = 0;
            if (!(ss >> u >> v >> w)) parse_fail(line_no, "expected 'a <u> <v> <w>'");
            if (u < 1 || v < 1 || u > static_cast<long long>(n) || v > static_cast<long long>(n))
                parse_fail(line_no, "vertex id out of range");
            if (w <= 0)
                throw DomainError("line " + std::to_string(line_no) + ": non-positive weight " +
                                  std::to_string(w));
            arcs.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1),
                              static_cast<Weight>(w));
        } else {
            parse_fail(line_no, std::string("unknown line type '") + tag + "'");
        }
    }
    if (!have_header) throw ParseError("missing 'p sp' problem line");

    normalize_arcs(arcs);
    // Undirected iff every arc has an exact equal-weight twin. Ambiguous
    // inputs stay directed; we never silently symmetrize.
    bool symmetric = true;
    for (const auto& [u, v, w] : arcs) {
        if (!std::binary_search(arcs.begin(), arcs.end(), ArcTriple{v, u, w})) {
            symmetric = false;
            break;
        }
    }
    if (symmetric && !arcs.empty()) {
        std::vector<ArcTriple> edges;
        for (const auto& [u, v, w] : arcs)
            if (u < v) edges.emplace_back(u, v, w);
        return Graph::build_undirected(n, std::move(edges));
    }
    if (arcs.empty()) return Graph::build_undirected(n, {});
    return Graph::build_directed(n, std::move(arcs));
}

Graph load_edge_list(std::istream& is, bool directed, bool weighted) {
    std::string line;
    std::size_t line_no = 0;
    Vertex n = 0;
    std::vector<ArcTriple> triples;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ss(line);
        long long u = 0, v = 0;
        if (!(ss >> u)) continue;  // blank line
        if (!(ss >> v)) parse_fail(line_no, "expected 'u v" + std::string(weighted ? " w'" : "'"));
        long long w = 1;
        if (weighted && !(ss >> w)) parse_fail(line_no, "missing weight");
        std::string rest;
        if (ss >> rest) parse_fail(line_no, "trailing token '" + rest + "'");
        if (u < 0 || v < 0) parse_fail(line_no, "negative vertex id");
        if (w <= 0)
            throw DomainError("line " + std::to_string(line_no) + ": non-positive weight " +
                              std::to_string(w));
        n = std::max(n, static_cast<Vertex>(std::max(u, v) + 1));
        triples.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Weight>(w));
    }
    return directed ? Graph::build_directed(n, std::move(triples))
                    : Graph::build_undirected(n, std::move(triples));
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    return f;
}

}  // namespace

Graph load_dimacs_gr_file(const std::string& path) {
    auto f = open_or_throw(path);
    return load_dimacs_gr(f);
}

Graph load_edge_list_file(const std::string& path, bool directed, bool weighted) {
    auto f = open_or_throw(path);
    return load_edge_list(f, directed, weighted);
}

Graph assign_random_weights(const Graph& g, std::uint64_t seed) {
    const Vertex n = g.num_vertices();
    const Weight upper = std::max<Weight>(2, static_cast<Weight>(std::ceil(std::sqrt(double(n)))));
    auto rng = make_rng(seed, "weights");
    std::uniform_int_distribution<Weight> dist(1, upper - 1);
    auto edges = g.canonical_edges();
    for (auto& [u, v, w] : edges) w = dist(rng);
    return g.directed() ? Graph::build_directed(n, std::move(edges))
                        : Graph::build_undirected(n, std::move(edges));
}

}  // namespace hublab
