#pragma once

#include <cstdint>
#include <vector>

#include "rigidity/graph.hpp"

namespace rigidity {

// (k, l)-sparsity parameters. Supported range 0 <= l < 2k; the toolkit
// exercises (2,3) for Laman sparsity and (2,0) for 2-orientability.
struct SparsityParams {
    std::uint32_t k;
    std::uint32_t l;
};

enum class SparsityVerdict { sparse, tight, neither };

struct SparsityResult {
    SparsityVerdict verdict;
    std::vector<EdgeId> basis; // accepted edges, a max-cardinality sparse subset
};

struct TwoOrientationResult {
    bool ok = false;
    Orientation orientation;     // valid iff ok; every out-degree <= 2
    std::vector<Vertex> witness; // on failure: sorted V' inducing > 2|V'| edges
};

struct ComponentDecomposition {
    // Sorted vertex lists, ordered lexicographically. Size-1 entries are
    // isolated vertices; every other entry induces a Laman-spanning subgraph.
    std::vector<std::vector<Vertex>> components;
    // edge id -> index into components (each edge lies in exactly one).
    std::vector<std::uint32_t> edge_component;
};

// Incremental (k, l)-pebble game. Each vertex starts with k pebbles and the
// invariant pebbles(v) + out_degree(v) = k is maintained; an edge insertion
// must gather l+1 pebbles on its endpoints, moving pebbles by reversing
// directed paths found by depth-first search (neighbors scanned in
// ascending vertex order, so certificates are deterministic).
class PebbleGame {
public:
    struct GameEdge {
        Vertex u, v;
        Vertex tail;
        EdgeId external; // caller's edge id
    };

    PebbleGame(Vertex n, SparsityParams params);

    // Attempt to insert edge (u, v); u == v inserts a loop. Returns true if
    // the edge is independent and was added to the basis.
    bool try_insert(Vertex u, Vertex v, EdgeId external_id);

    // After a failed try_insert: the reachability region of the rejected
    // edge (sorted). Accepted edges induced by it number k|V'| - P with
    // P <= l, so together with the rejected edge it certifies density.
    const std::vector<Vertex>& last_rejection_region() const { return rejection_region_; }

    // Maximal tight set containing accepted edge (u, v): saturate pebbles on
    // {u, v}, then discard every vertex that can reach a free pebble.
    // Requires l >= 1 (used with (2,3); for (2,0) tight regions are not
    // unique in the same sense).
    std::vector<Vertex> tight_region(Vertex u, Vertex v);

    std::uint32_t pebbles(Vertex v) const { return peb_[v]; }
    std::uint32_t out_degree(Vertex v) const { return params_.k - peb_[v]; }
    const std::vector<GameEdge>& game_edges() const { return edges_; }
    std::size_t accepted() const { return edges_.size(); }
    Vertex n() const { return n_; }
    SparsityParams params() const { return params_; }

private:
    struct Incidence {
        Vertex other;
        std::uint32_t idx; // into edges_
    };

    bool search_and_grab(Vertex root, Vertex ex1, Vertex ex2);
    void collect_reach(Vertex u, Vertex v, std::vector<Vertex>& out);
    void add_incidence(Vertex at, Vertex other, std::uint32_t idx);
    std::uint32_t fresh_epoch();

    Vertex n_;
    SparsityParams params_;
    std::vector<std::uint32_t> peb_;
    std::vector<GameEdge> edges_;
    std::vector<std::vector<Incidence>> incident_;
    std::vector<Vertex> rejection_region_;

    // epoch-stamped DFS scratch
    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> visited_;
    std::vector<std::uint32_t> parent_edge_;
    std::vector<std::uint32_t> cursor_;
    std::vector<Vertex> stack_;
};

SparsityResult is_sparse(const SimpleGraph& g, SparsityParams params);
SparsityResult is_sparse(const MultiGraph& g, SparsityParams params);

// Orient every edge of g with all out-degrees <= 2, or produce a density
// witness. Success is equivalent to (2,0)-sparsity of g.
TwoOrientationResult two_orientation(const MultiGraph& g);

// Decompose g into rigid components: inclusion-maximal vertex sets inducing
// Laman-spanning subgraphs, plus size-1 sets for isolated vertices. Any two
// components share at most one vertex, and each edge lies in exactly one.
ComponentDecomposition rigid_components(const SimpleGraph& g);

// Henneberg extension moves on an oriented multigraph. Both add a new
// vertex v of out-degree exactly 2 and leave every other out-degree
// unchanged. Move I adds edges v->i and v->j (i == j doubles the edge).
// Move II splits an oriented edge i->j into i->v, v->j and adds v->k;
// k == g.n() before the call refers to v itself (loop). Splitting an
// unoriented edge is a precondition error.
Vertex henneberg_one(MultiGraph& g, Orientation& o, Vertex i, Vertex j);
Vertex henneberg_two(MultiGraph& g, Orientation& o, EdgeId split, Vertex k);

} // namespace rigidity
