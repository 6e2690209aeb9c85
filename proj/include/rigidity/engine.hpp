#pragma once

#include <cstdint>
#include <vector>

#include "rigidity/cores.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/random_models.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

enum class VertexLabel : std::uint8_t {
    unprocessed,
    tight,         // exactly two edges oriented out
    loose_l1,      // ran out of copies before ever being selected
    loose_l2,      // selected at degree 1
    loose_l3,      // selected at degree 2, self-loop revealed
    loose_cutoff,  // still unprocessed when the sqrt-n cutoff fired
    loose_phase4,  // phase-4 orientation left it short of out-degree 2
};

// One line of the phase-3 log: a selection (degree = copies at selection)
// or a run-out (degree 0, the L1 event for a vertex hit to zero by random
// draws before its turn).
struct EngineEvent {
    Vertex v;
    std::uint32_t degree;
    std::uint8_t loose_cause; // 0 none, else 1/2/3 for L1/L2/L3

    bool operator==(const EngineEvent&) const = default;
};

struct RoundRow {
    std::uint32_t processed = 0;
    std::uint32_t loose_l1 = 0, loose_l2 = 0, loose_l3 = 0;
};

struct RoundStats {
    std::vector<RoundRow> rounds;   // phase 3 segmented at degree-3 selections
    std::uint32_t max_round = 0;    // largest per-round processed count
    std::uint64_t processed = 0;    // phase-3 selections
    std::uint64_t loose_l1 = 0, loose_l2 = 0, loose_l3 = 0;
    std::uint64_t loose_cutoff = 0, loose_phase4 = 0;
    std::uint64_t tight = 0;
    std::uint64_t three_to_two_hits = 0; // random hits knocking a 3 down to a 2
    std::size_t phase4_size = 0;         // vertices remaining at suspension
    bool phase4_success = false;
    bool cutoff_hit = false;
    std::vector<EngineEvent> events;
};

struct EngineResult {
    MultiGraph graph;
    Orientation orientation;
    RoundStats stats;
    std::vector<VertexLabel> labels;
};

// Sentinel cutoff: resolve to ceil(sqrt(n)) remaining vertices. Passing 0
// disables the cutoff entirely (useful for exact-distribution tests).
inline constexpr std::size_t kSqrtCutoff = ~std::size_t{0};

// The 2-orientation engine over a min-degree-3 configuration. Generates the
// multigraph by FR moves while orienting: selections at degree <= 2 reveal
// edges oriented away from the vertex; degree-3 selections run FR II (the
// splice deferred via a watermark token, the self-loop canonically oriented
// at its vertex) followed by the forced degree-1 continuation. When the
// minimum degree reaches 4 the run suspends and the remainder is matched
// uniformly and oriented through a (2,0)-pebble basis; if the cutoff fires
// first, the remainder is matched unoriented and labeled loose. Pending
// splices resolve last-issued-first against the completed matching.
//
// rng is split: substream 0 drives every copy draw, substream 1 the FR II
// coin flips and splice picks, so the copy evolution coincides exactly with
// simplified_run on the same stream.
EngineResult orient_core_full(const DegreeSequence& degrees, const RngStream& rng,
                              std::size_t cutoff_remaining = kSqrtCutoff);

// Degree-only evolution: identical selection schedule and copy draws as
// orient_core_full (substream 0), no matching or orientation. Stops at
// phase-4 entry or the cutoff.
RoundStats simplified_run(const DegreeSequence& degrees, const RngStream& rng,
                          std::size_t cutoff_remaining = kSqrtCutoff);

// Segment a phase-3 log into rounds: a round opens at each degree-3
// selection and absorbs every following event until the next one; events
// before the first degree-3 selection form a leading round.
RoundStats segment_rounds(const std::vector<EngineEvent>& events);

// Extend an orientation of g's 3-core subgraph over the (3+2)-core shell:
// each accreted vertex orients its two recorded attachment edges outward,
// in accretion order. Out-degrees of already-oriented vertices are
// untouched. Edge ids refer to g.
Orientation orient_32_shell(const Orientation& core_orient, const CoreResult& accretion,
                            const SimpleGraph& g);

} // namespace rigidity
