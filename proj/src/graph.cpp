#include "rigidity/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace rigidity {

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

} // namespace

SimpleGraph::SimpleGraph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges)
    : n_(n), edges_(std::move(edges)) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (auto& [u, v] : edges_) {
        if (u >= n_ || v >= n_)
            throw std::invalid_argument("SimpleGraph: endpoint " +
                                        std::to_string(std::max(u, v)) + " out of range");
        if (u == v)
            throw std::invalid_argument("SimpleGraph: loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert(pair_key(u, v)).second)
            throw std::invalid_argument("SimpleGraph: duplicate edge " +
                                        std::to_string(u) + " " + std::to_string(v));
    }
    adj_off_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++adj_off_[u + 1];
        ++adj_off_[v + 1];
    }
    for (std::size_t i = 1; i < adj_off_.size(); ++i) adj_off_[i] += adj_off_[i - 1];
    adj_.resize(edges_.size() * 2);
    std::vector<std::size_t> pos(adj_off_.begin(), adj_off_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adj_[pos[u]++] = v;
        adj_[pos[v]++] = u;
    }
    for (Vertex v = 0; v < n_; ++v)
        std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(adj_off_[v]),
                  adj_.begin() + static_cast<std::ptrdiff_t>(adj_off_[v + 1]));
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

SimpleGraph SimpleGraph::induced(const std::vector<Vertex>& keep) const {
    std::vector<Vertex> map(n_, ~Vertex{0});
    std::vector<Vertex> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) map[sorted[i]] = static_cast<Vertex>(i);
    std::vector<std::pair<Vertex, Vertex>> sub;
    for (const auto& [u, v] : edges_)
        if (map[u] != ~Vertex{0} && map[v] != ~Vertex{0})
            sub.emplace_back(map[u], map[v]);
    return SimpleGraph(static_cast<Vertex>(sorted.size()), std::move(sub));
}

MultiGraph::MultiGraph(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges)
    : n_(n), alive_(0) {
    edges_.reserve(edges.size());
    for (const auto& [u, v] : edges) add_edge(u, v);
}

MultiGraph MultiGraph::from_simple(const SimpleGraph& g) {
    return MultiGraph(g.n(), g.edges());
}

EdgeId MultiGraph::add_edge(Vertex u, Vertex v) {
    if (u >= n_ || v >= n_)
        throw std::invalid_argument("MultiGraph: endpoint out of range");
    edges_.push_back({u, v, true});
    ++alive_;
    return static_cast<EdgeId>(edges_.size() - 1);
}

void MultiGraph::remove_edge(EdgeId e) {
    if (e >= edges_.size() || !edges_[e].alive)
        throw std::invalid_argument("MultiGraph: remove of dead or unknown edge");
    edges_[e].alive = false;
    --alive_;
}

std::vector<std::uint32_t> MultiGraph::degrees() const {
    std::vector<std::uint32_t> deg(n_, 0);
    for (const auto& e : edges_) {
        if (!e.alive) continue;
        deg[e.u] += 1;
        deg[e.v] += 1; // loop counted twice by falling through both lines
    }
    return deg;
}

void Orientation::orient(EdgeId e, Vertex tail_vertex) {
    if (tail_[e] != kUnoriented)
        throw std::logic_error("Orientation: edge already oriented");
    tail_[e] = tail_vertex;
    ++outdeg_[tail_vertex];
}

void Orientation::clear(EdgeId e) {
    if (tail_[e] == kUnoriented) return;
    --outdeg_[tail_[e]];
    tail_[e] = kUnoriented;
}

} // namespace rigidity
