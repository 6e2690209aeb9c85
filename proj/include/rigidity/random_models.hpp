#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigidity/graph.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

// Per-vertex copy counts; the configuration model matches these copies
// (half-edge stubs) into a multigraph.
using DegreeSequence = std::vector<std::uint32_t>;

// The multiset of unmatched vertex copies. Backed by a flat pool array with
// swap-deletion plus per-vertex position lists, so a uniform draw and the
// deletion of a named vertex's copy are both O(1).
class ConfigurationState {
public:
    explicit ConfigurationState(const DegreeSequence& degrees);

    Vertex n() const { return static_cast<Vertex>(pos_.size()); }
    std::size_t total() const { return pool_.size(); }
    std::uint32_t copies(Vertex v) const {
        return static_cast<std::uint32_t>(pos_[v].size());
    }

    // Uniform draw over all remaining copies; the drawn copy is removed.
    Vertex draw(RngStream& rng);

    // Removes one copy of v deterministically (its most recent pool slot).
    void remove_one(Vertex v);

private:
    void remove_at(std::uint32_t idx);

    std::vector<Vertex> pool_;                       // one entry per copy
    std::vector<std::uint32_t> slot_;                // pool idx -> index in pos_[vertex]
    std::vector<std::vector<std::uint32_t>> pos_;    // vertex -> pool indices
};

// G(n, c/n) by geometric skipping over the ordered pair list, so the cost is
// O(n + m) rather than O(n^2).
SimpleGraph gnp(Vertex n, double c, RngStream& rng);

// Matches every copy: repeatedly pairs the lowest-indexed vertex that still
// has copies with a uniform draw from the rest. Consumes cfg.
MultiGraph uniform_matching(ConfigurationState& cfg, RngStream& rng);

// Same pairing rule, appending the edges to an existing multigraph whose
// vertex set already covers cfg.
void uniform_matching_into(ConfigurationState& cfg, MultiGraph& g, RngStream& rng);

// FR I: consume one copy of v plus one uniform copy of the remainder;
// returns the partner (== v means a self-loop was revealed).
Vertex fr_one(ConfigurationState& cfg, Vertex v, RngStream& rng);

// A deferred FR II splice: the new vertex's identity plus the edge-id
// watermark separating the matching generated before the move from the
// matching on the remainder. Candidates for the splice are exactly the
// alive edges with id >= watermark.
struct SpliceToken {
    Vertex v;
    EdgeId watermark;
};

struct SpliceResult {
    EdgeId removed;      // the replaced pair {i, j}
    Vertex i, j;
    EdgeId first;        // new edge (i, token.v)
    EdgeId second;       // new edge (token.v, j)
};

// FR II, first half: consume two copies of v. With probability
// 1/(total - 1) the two copies close into a self-loop (returns nullopt);
// otherwise a pending token is issued for later resolution against the
// matching generated on the remainder.
std::optional<SpliceToken> fr_two_begin(ConfigurationState& cfg, Vertex v,
                                        RngStream& rng, EdgeId watermark = 0);

// Candidate-edge pool for resolving pending splices in last-issued-first
// order. Alive edge ids are gathered ascending once; because tokens arrive
// with non-increasing watermarks and every removal or insertion touches only
// ids at or above the current watermark, the tail of the array from the
// watermark boundary on is always exactly the candidate set, maintained by
// constant-time swap-removal.
class SplicePool {
public:
    explicit SplicePool(const MultiGraph& g);

    SpliceResult resolve(MultiGraph& g, const SpliceToken& token, RngStream& rng);

private:
    std::vector<EdgeId> ids_;
    std::size_t boundary_;
};

// FR II, second half, as a standalone operation: builds a one-shot pool over
// the current matching and splices the token into it.
SpliceResult fr_two_resolve(const SpliceToken& token, MultiGraph& g, RngStream& rng);

// i.i.d. Poisson(tau) conditioned on >= min_deg (3 or 4); an odd sum is
// repaired by incrementing one uniformly chosen vertex, an O(1/n) bias.
DegreeSequence truncated_poisson_sequence(Vertex n, double tau, std::uint32_t min_deg,
                                          RngStream& rng);

} // namespace rigidity
