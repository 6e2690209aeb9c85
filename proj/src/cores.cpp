#include "rigidity/cores.hpp"

#include <cassert>
#include <queue>

namespace rigidity {

CoreResult k_core(const SimpleGraph& g, std::uint32_t k) {
  const Vertex n = g.n();
  std::vector<std::uint32_t> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<std::uint32_t>(g.degree(v));

  using Entry = std::pair<std::uint32_t, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (Vertex v = 0; v < n; ++v) heap.push({deg[v], v});

  CoreResult res;
  std::vector<bool> removed(n, false);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (removed[v] || d != deg[v]) continue; // stale entry
    if (d >= k) break;                       // everything left is in the core
    removed[v] = true;
    res.peel_order.push_back(v);
    for (Vertex w : g.neighbors(v))
      if (!removed[w]) heap.push({--deg[w], w});
  }
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) res.members.push_back(v);
  return res;
}

CoreResult three_plus_two_core(const SimpleGraph& g) {
  const Vertex n = g.n();
  CoreResult base = k_core(g, 3);
  std::vector<bool> inside(n, false);
  for (Vertex v : base.members) inside[v] = true;

  CoreResult res;
  std::vector<std::uint32_t> in_deg(n, 0);
  std::queue<Vertex> work;
  auto bump = [&](Vertex w) {
    if (inside[w]) return;
    if (++in_deg[w] == 2) work.push(w);
  };
  for (Vertex v : base.members)
    for (Vertex w : g.neighbors(v)) bump(w);

  while (!work.empty()) {
    Vertex v = work.front();
    work.pop();
    if (inside[v]) continue;
    inside[v] = true;
    Vertex att[2];
    int found = 0;
    for (Vertex w : g.neighbors(v)) {
      if (found < 2 && inside[w]) att[found++] = w;
      bump(w);
    }
    assert(found == 2);
    res.accretion.push_back({v, att[0], att[1]});
  }
  for (Vertex v = 0; v < n; ++v)
    if (inside[v]) res.members.push_back(v);
  return res;
}

} // namespace rigidity
