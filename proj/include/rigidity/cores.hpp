#pragma once

#include "rigidity/graph.hpp"

namespace rigidity {

// One (3+2)-accretion event: v joined because a and b were already inside.
struct Attachment {
    Vertex v, a, b;
};

struct CoreResult {
    std::vector<Vertex> members;        // sorted
    std::vector<Vertex> peel_order;     // k_core: non-members in removal order
    std::vector<Attachment> accretion;  // three_plus_two_core: join order
};

// Maximal induced subgraph of minimum degree >= k. Peeling removes the
// lowest-degree vertex first, ties by ascending index, so the order is
// reproducible.
CoreResult k_core(const SimpleGraph& g, std::uint32_t k);

// 3-core plus vertices inductively accreted once they have two neighbors
// inside. The attachment pair is the two lowest-index inside neighbors at
// join time; the member set itself is order-independent.
CoreResult three_plus_two_core(const SimpleGraph& g);

} // namespace rigidity
