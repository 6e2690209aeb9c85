#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rigidity {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Immutable simple graph. Edges are stored canonically (u < v) in the order
// given at construction; adjacency is a CSR built once. Loops and duplicate
// edges are construction errors.
class SimpleGraph {
public:
    SimpleGraph() : n_(0) {}
    SimpleGraph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges);

    Vertex n() const { return n_; }
    std::size_t m() const { return edges_.size(); }

    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    std::pair<Vertex, Vertex> edge(EdgeId e) const { return edges_[e]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + adj_off_[v], adj_.data() + adj_off_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return adj_off_[v + 1] - adj_off_[v]; }
    bool has_edge(Vertex u, Vertex v) const;

    // Subgraph induced by `keep` (ids are remapped to 0..keep.size()-1,
    // preserving the sorted order of `keep`).
    SimpleGraph induced(const std::vector<Vertex>& keep) const;

private:
    Vertex n_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<std::size_t> adj_off_;
    std::vector<Vertex> adj_;
};

// Multigraph with loops and parallel edges. Edge ids are stable: removal
// marks an edge dead but never renumbers, so orientation records and FR
// splice bookkeeping stay valid across replacements.
class MultiGraph {
public:
    struct Edge {
        Vertex u, v;
        bool alive;
    };

    MultiGraph() : n_(0), alive_(0) {}
    explicit MultiGraph(Vertex n) : n_(n), alive_(0) {}
    MultiGraph(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges);
    static MultiGraph from_simple(const SimpleGraph& g);

    Vertex n() const { return n_; }
    std::size_t edge_slots() const { return edges_.size(); }
    std::size_t m() const { return alive_; }

    Vertex add_vertex() { return n_++; }

    EdgeId add_edge(Vertex u, Vertex v);
    void remove_edge(EdgeId e);

    bool alive(EdgeId e) const { return edges_[e].alive; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    bool is_loop(EdgeId e) const { return edges_[e].u == edges_[e].v; }

    // Degrees over alive edges; a loop contributes 2 to its vertex.
    std::vector<std::uint32_t> degrees() const;

private:
    Vertex n_;
    std::size_t alive_;
    std::vector<Edge> edges_;
};

// Partial orientation of a graph's edge set, keyed by edge id. Works for
// both SimpleGraph (id = index into edges()) and MultiGraph (stable id).
// A loop oriented at v contributes exactly 1 to v's out-degree.
class Orientation {
public:
    Orientation() = default;
    Orientation(Vertex n_vertices, std::size_t n_edges)
        : tail_(n_edges, kUnoriented), outdeg_(n_vertices, 0) {}

    void ensure_size(Vertex n_vertices, std::size_t n_edges) {
        if (tail_.size() < n_edges) tail_.resize(n_edges, kUnoriented);
        if (outdeg_.size() < n_vertices) outdeg_.resize(n_vertices, 0);
    }

    bool oriented(EdgeId e) const { return tail_[e] != kUnoriented; }
    Vertex tail(EdgeId e) const { return tail_[e]; }

    void orient(EdgeId e, Vertex tail_vertex);
    void clear(EdgeId e);

    std::uint32_t out_degree(Vertex v) const { return outdeg_[v]; }
    std::size_t n_vertices() const { return outdeg_.size(); }
    std::size_t n_edges() const { return tail_.size(); }

private:
    static constexpr Vertex kUnoriented = ~Vertex{0};
    std::vector<Vertex> tail_;
    std::vector<std::uint32_t> outdeg_;
};

} // namespace rigidity
