#include "rigidity/fixtures.hpp"

#include "rigidity/pebble.hpp"
#include "rigidity/rng.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rigidity {

SimpleGraph complete_graph(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return SimpleGraph(n, edges);
}

SimpleGraph cycle_graph(Vertex n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return SimpleGraph(n, edges);
}

SimpleGraph k33_minus_edge() {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < 3; ++u)
    for (Vertex v = 3; v < 6; ++v)
      if (!(u == 2 && v == 5)) edges.emplace_back(u, v);
  return SimpleGraph(6, edges);
}

namespace {

bool small_components_only(Vertex n,
                           const std::vector<std::pair<Vertex, Vertex>>& edges) {
  SimpleGraph g(n, edges);
  auto decomp = rigid_components(g);
  for (const auto& comp : decomp.components)
    if (comp.size() > 2) return false;
  return true;
}

} // namespace

SimpleGraph streinu_family(Vertex n, std::uint64_t seed) {
  if (n < 6 || n % 2 != 0)
    throw std::invalid_argument("streinu_family: need even n >= 6");

  SimpleGraph base = k33_minus_edge();
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (EdgeId e = 0; e < base.m(); ++e) edges.push_back(base.edge(e));

  std::set<std::pair<Vertex, Vertex>> present(edges.begin(), edges.end());
  auto adjacent = [&](Vertex a, Vertex b) {
    return present.count({std::min(a, b), std::max(a, b)}) != 0;
  };

  RngStream rng(seed, 0);
  for (Vertex cur = 6; cur < n; ++cur) {
    const Vertex v = cur; // the vertex added by this split
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      // Candidate = (split edge index, third neighbour). Prefer candidates
      // where the third neighbour is adjacent to neither endpoint, so no
      // triangle appears at the new vertex.
      std::vector<std::pair<std::size_t, Vertex>> preferred, any;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [i, j] = edges[e];
        for (Vertex k = 0; k < cur; ++k) {
          if (k == i || k == j) continue;
          any.emplace_back(e, k);
          if (!adjacent(i, k) && !adjacent(j, k)) preferred.emplace_back(e, k);
        }
      }
      auto& pool = preferred.empty() ? any : preferred;
      auto [e, k] = pool[rng.uniform_below(pool.size())];
      auto [i, j] = edges[e];

      std::vector<std::pair<Vertex, Vertex>> next = edges;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(e));
      for (Vertex w : {i, j, k})
        next.emplace_back(std::min(w, v), std::max(w, v));

      if (small_components_only(cur + 1, next)) {
        auto [a, b] = edges[e];
        present.erase({std::min(a, b), std::max(a, b)});
        for (Vertex w : {i, j, k})
          present.insert({std::min(w, v), std::max(w, v)});
        edges = std::move(next);
        placed = true;
      }
    }
    if (!placed)
      throw std::runtime_error(
          "streinu_family: no admissible split found after 100 attempts");
  }
  return SimpleGraph(n, edges);
}

} // namespace rigidity
