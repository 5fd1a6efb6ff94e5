#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "hublab/types.hpp"

namespace hublab {

struct Arc {
    Vertex to;
    Weight weight;
};

// Immutable weighted graph with forward and reverse adjacency in CSR form.
// Vertex ids are dense in [0, n); all weights are strictly positive.
// For undirected graphs the forward adjacency already contains both arc
// directions and the reverse adjacency aliases it.
class Graph {
public:
    Graph() = default;

    // arcs are directed (u, v, w) triples; parallel arcs keep the minimum
    // weight, self loops are dropped.
    static Graph build_directed(Vertex n, std::vector<std::tuple<Vertex, Vertex, Weight>> arcs);

    // edges are undirected (u, v, w) triples, one per edge.
    static Graph build_undirected(Vertex n, std::vector<std::tuple<Vertex, Vertex, Weight>> edges);

    Vertex num_vertices() const { return n_; }
    // Undirected edges for undirected graphs, arcs otherwise.
    std::uint64_t num_edges() const { return m_; }
    bool directed() const { return directed_; }

    std::span<const Arc> out(Vertex v) const {
        return {fwd_arcs_.data() + fwd_off_[v], fwd_off_[v + 1] - fwd_off_[v]};
    }
    std::span<const Arc> in(Vertex v) const {
        if (!directed_) return out(v);
        return {rev_arcs_.data() + rev_off_[v], rev_off_[v + 1] - rev_off_[v]};
    }

    // out-degree + in-degree for directed graphs, plain degree otherwise.
    std::uint64_t degree(Vertex v) const {
        return directed_ ? out(v).size() + in(v).size() : out(v).size();
    }

    Weight max_weight() const { return max_weight_; }

    // Canonical (u, v, w) list: one triple per undirected edge with u < v,
    // or one per arc. Sorted; used for weight assignment and the digest.
    std::vector<std::tuple<Vertex, Vertex, Weight>> canonical_edges() const;

    std::uint64_t digest() const;

private:
    Vertex n_ = 0;
    std::uint64_t m_ = 0;
    bool directed_ = false;
    Weight max_weight_ = 0;
    std::vector<std::size_t> fwd_off_{0};
    std::vector<Arc> fwd_arcs_;
    std::vector<std::size_t> rev_off_;
    std::vector<Arc> rev_arcs_;
};

// DIMACS .gr reader: 'c' comments, one 'p sp n m' line, 'a u v w' arcs with
// 1-based ids. If every arc has an equal-weight reverse twin the graph is
// marked undirected, otherwise it stays directed.
Graph load_dimacs_gr(std::istream& is);
Graph load_dimacs_gr_file(const std::string& path);

// Whitespace separated "u v [w]" lines with 0-based ids. Unweighted input
// gets placeholder weight 1.
Graph load_edge_list(std::istream& is, bool directed, bool weighted);
Graph load_edge_list_file(const std::string& path, bool directed, bool weighted);

// Replaces every weight with an integer drawn uniformly from
// [1, max(2, ceil(sqrt(n)))). Undirected twins receive equal weight.
// Pure function of (graph, seed).
Graph assign_random_weights(const Graph& g, std::uint64_t seed);

}  // namespace hublab
