#pragma once

#include "rigidity/graph.hpp"

namespace rigidity {

SimpleGraph complete_graph(Vertex n);
SimpleGraph cycle_graph(Vertex n);

// K_{3,3} with one edge removed: 6 vertices, 8 = 2*6-4 edges, and every
// rigid component is a single edge.
SimpleGraph k33_minus_edge();

// Flexibility-extremal family: starting from k33_minus_edge, repeatedly
// apply edge-split extensions (Henneberg II), preferring choices that
// create no triangle, until the graph has n vertices and 2n-4 edges. After
// each split the graph is verified to have no rigid component on more than
// two vertices; a failing split is retried with fresh random choices (up
// to 100 times, then the construction errors out). Deterministic for a
// fixed (n, seed).
SimpleGraph streinu_family(Vertex n, std::uint64_t seed = 0x51E1u);

} // namespace rigidity
