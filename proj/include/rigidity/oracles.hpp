#pragma once

#include "rigidity/graph.hpp"

namespace rigidity {

struct LamanVerdict {
    bool laman_sparse;
    bool laman_spanning;
};

// Definition-level reference implementations, used to validate the pebble
// game. Intentionally exhaustive: sparsity checks every vertex subset, and
// spanning searches for a sparse edge subset of size 2n-3 directly.
// Precondition: g.n() <= 12.
LamanVerdict brute_force_laman(const SimpleGraph& g);

// Hall-type check: 2-orientability is a perfect matching of edges into two
// out-slots per vertex (loops must take a slot of their own vertex).
// Precondition: g.m() <= 10000.
bool brute_force_two_orientable(const MultiGraph& g);

} // namespace rigidity
