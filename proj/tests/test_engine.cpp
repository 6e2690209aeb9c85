#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rigidity/analytics.hpp"
#include "rigidity/engine.hpp"
#include "rigidity/pebble.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

using namespace rigidity;

namespace {

using EdgeKey = std::vector<std::pair<Vertex, Vertex>>;

EdgeKey multigraph_key(const MultiGraph& g) {
    EdgeKey key;
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        if (!g.alive(e)) continue;
        const auto& ed = g.edge(e);
        key.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
    }
    std::sort(key.begin(), key.end());
    return key;
}

void enumerate_matchings(std::vector<Vertex>& labels, std::vector<bool>& used,
                         EdgeKey& partial, std::map<EdgeKey, std::uint64_t>& out) {
    std::size_t a = 0;
    while (a < used.size() && used[a]) ++a;
    if (a == used.size()) {
        EdgeKey key = partial;
        std::sort(key.begin(), key.end());
        out[key] += 1;
        return;
    }
    used[a] = true;
    for (std::size_t b = a + 1; b < used.size(); ++b) {
        if (used[b]) continue;
        used[b] = true;
        partial.emplace_back(std::min(labels[a], labels[b]),
                             std::max(labels[a], labels[b]));
        enumerate_matchings(labels, used, partial, out);
        partial.pop_back();
        used[b] = false;
    }
    used[a] = false;
}

std::map<EdgeKey, std::uint64_t> exact_classes(const DegreeSequence& degrees) {
    std::vector<Vertex> labels;
    for (Vertex v = 0; v < degrees.size(); ++v)
        for (std::uint32_t k = 0; k < degrees[v]; ++k) labels.push_back(v);
    std::vector<bool> used(labels.size(), false);
    EdgeKey partial;
    std::map<EdgeKey, std::uint64_t> out;
    enumerate_matchings(labels, used, partial, out);
    return out;
}

double class_p_value(const std::map<EdgeKey, std::uint64_t>& exact,
                     const std::map<EdgeKey, std::uint64_t>& observed,
                     std::uint64_t samples) {
    std::uint64_t total = 0;
    for (const auto& [key, cnt] : exact) total += cnt;
    for (const auto& [key, cnt] : observed) REQUIRE(exact.count(key) == 1);
    if (exact.size() == 1) return 1.0;
    double stat = 0.0;
    for (const auto& [key, cnt] : exact) {
        const double expect = static_cast<double>(samples) * cnt / total;
        const auto it = observed.find(key);
        const double obs = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        stat += (obs - expect) * (obs - expect) / expect;
    }
    return analytics::chi_square_sf(stat, static_cast<std::uint32_t>(exact.size() - 1));
}

// Recount out-degrees straight from the graph; dead edges must have been
// cleared, tails must be endpoints, and the label partition must match the
// out-degree rule.
void check_result(const EngineResult& r, const DegreeSequence& degrees) {
    const MultiGraph& g = r.graph;
    std::uint64_t sum = 0;
    for (auto d : degrees) sum += d;
    REQUIRE(g.m() == sum / 2);

    std::vector<std::uint32_t> out(g.n(), 0);
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        if (!g.alive(e)) {
            CHECK(!r.orientation.oriented(e));
            continue;
        }
        if (!r.orientation.oriented(e)) continue;
        const Vertex t = r.orientation.tail(e);
        CHECK((t == g.edge(e).u || t == g.edge(e).v));
        out[t] += 1;
    }

    std::uint64_t tallies[7] = {0, 0, 0, 0, 0, 0, 0};
    for (Vertex v = 0; v < g.n(); ++v) {
        CHECK(out[v] == r.orientation.out_degree(v));
        CHECK(out[v] <= 2);
        CHECK(r.labels[v] != VertexLabel::unprocessed);
        if (r.labels[v] == VertexLabel::tight)
            CHECK(out[v] == 2);
        else
            CHECK(out[v] < 2);
        tallies[static_cast<int>(r.labels[v])] += 1;
    }
    const RoundStats& st = r.stats;
    CHECK(tallies[1] == st.tight);
    CHECK(tallies[2] == st.loose_l1);
    CHECK(tallies[3] == st.loose_l2);
    CHECK(tallies[4] == st.loose_l3);
    CHECK(tallies[5] == st.loose_cutoff);
    CHECK(tallies[6] == st.loose_phase4);
    CHECK(st.tight + st.loose_l1 + st.loose_l2 + st.loose_l3 + st.loose_cutoff +
              st.loose_phase4 ==
          g.n());
}

} // namespace

TEST_CASE("engine conservation, labels, and orientation consistency") {
    RngStream seq_rng(301, 0);
    for (int trial = 0; trial < 40; ++trial) {
        auto degrees = truncated_poisson_sequence(250, 2.9, 3, seq_rng);
        auto r = orient_core_full(degrees, RngStream(302, trial));
        check_result(r, degrees);
    }
    // cutoff disabled variant exercises phase 4 on every run
    for (int trial = 0; trial < 20; ++trial) {
        auto degrees = truncated_poisson_sequence(150, 3.2, 3, seq_rng);
        auto r = orient_core_full(degrees, RngStream(303, trial), 0);
        check_result(r, degrees);
        CHECK(!r.stats.cutoff_hit);
    }
}

TEST_CASE("engine input validation") {
    CHECK_THROWS_AS(orient_core_full({3, 3, 3}, RngStream(1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(orient_core_full({3, 2, 3, 4}, RngStream(1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(simplified_run({3, 3, 3}, RngStream(1, 0)), std::invalid_argument);
}

TEST_CASE("full and simplified runs share the copy evolution exactly") {
    RngStream seq_rng(311, 0);
    for (int trial = 0; trial < 60; ++trial) {
        auto degrees = truncated_poisson_sequence(60, 2.75 + 0.01 * trial, 3, seq_rng);
        const std::size_t cutoff = (trial % 3 == 0) ? 0 : kSqrtCutoff;
        RngStream rng(312, trial);
        auto full = orient_core_full(degrees, rng, cutoff);
        auto simp = simplified_run(degrees, rng, cutoff);
        CHECK(full.stats.events == simp.events);
        CHECK(full.stats.loose_l1 == simp.loose_l1);
        CHECK(full.stats.loose_l2 == simp.loose_l2);
        CHECK(full.stats.loose_l3 == simp.loose_l3);
        CHECK(full.stats.loose_cutoff == simp.loose_cutoff);
        CHECK(full.stats.cutoff_hit == simp.cutoff_hit);
        CHECK(full.stats.phase4_size == simp.phase4_size);
        CHECK(full.stats.max_round == simp.max_round);
        CHECK(full.stats.three_to_two_hits == simp.three_to_two_hits);
    }
}

TEST_CASE("engine reproduces the uniform matching distribution") {
    // degrees (3,3): the FR II token path dominates; exact classes are the
    // triple edge (2/5) and loop+loop+edge (3/5).
    {
        auto exact = exact_classes({3, 3});
        std::map<EdgeKey, std::uint64_t> observed;
        const int N = 30000;
        for (int s = 0; s < N; ++s) {
            auto r = orient_core_full({3, 3}, RngStream(321, s), 0);
            observed[multigraph_key(r.graph)] += 1;
            CHECK(r.labels[0] == VertexLabel::tight);
            CHECK(r.labels[1] == VertexLabel::loose_l3);
        }
        CHECK(class_p_value(exact, observed, N) > 1e-3);
    }
    // degrees (4,4): immediate phase-4 suspension, pure uniform matching.
    {
        auto exact = exact_classes({4, 4});
        std::map<EdgeKey, std::uint64_t> observed;
        const int N = 30000;
        for (int s = 0; s < N; ++s) {
            auto r = orient_core_full({4, 4}, RngStream(322, s), 0);
            observed[multigraph_key(r.graph)] += 1;
            CHECK(r.stats.phase4_size == 2);
            CHECK(r.stats.processed == 0);
        }
        CHECK(class_p_value(exact, observed, N) > 1e-3);
    }
    // degrees (3,3,3,3): full interleaving of FR I, FR II, and suspension.
    {
        auto exact = exact_classes({3, 3, 3, 3});
        std::map<EdgeKey, std::uint64_t> observed;
        const int N = 40000;
        for (int s = 0; s < N; ++s) {
            auto r = orient_core_full({3, 3, 3, 3}, RngStream(323, s), 0);
            observed[multigraph_key(r.graph)] += 1;
        }
        CHECK(class_p_value(exact, observed, N) > 1e-3);
    }
}

TEST_CASE("K4-like configuration keeps the conservation contract") {
    for (int s = 0; s < 200; ++s) {
        auto r = orient_core_full({3, 3, 3, 3}, RngStream(331, s));
        check_result(r, {3, 3, 3, 3});
        const auto loose = 4 - r.stats.tight;
        CHECK(loose <= 4);
    }
}

TEST_CASE("phase-4 suspension orients min-degree-4 remainders") {
    int successes = 0;
    for (int s = 0; s < 100; ++s) {
        auto r = orient_core_full({4, 4, 4, 4}, RngStream(341, s), 0);
        check_result(r, {4, 4, 4, 4});
        CHECK(r.stats.phase4_size == 4);
        CHECK(r.stats.processed == 0);
        if (r.stats.phase4_success) {
            ++successes;
            for (Vertex v = 0; v < 4; ++v) CHECK(r.labels[v] == VertexLabel::tight);
        }
    }
    CHECK(successes > 0); // (2,0)-spanning configurations appear regularly
}

TEST_CASE("cutoff labels the tail of the run loose") {
    // all-3 degrees on 16 vertices; ceil(sqrt(16)) = 4
    DegreeSequence degrees(16, 3);
    bool saw_cutoff = false;
    for (int s = 0; s < 50; ++s) {
        auto r = orient_core_full(degrees, RngStream(351, s));
        check_result(r, degrees);
        if (r.stats.cutoff_hit) {
            saw_cutoff = true;
            CHECK(r.stats.loose_cutoff >= 1);
            CHECK(r.stats.loose_cutoff <= 4);
            CHECK(!r.stats.phase4_success);
            CHECK(r.stats.phase4_size == 0); // cutoff path never runs phase 4
        }
    }
    CHECK(saw_cutoff);
}

TEST_CASE("round segmentation") {
    {
        std::vector<EngineEvent> ev{{0, 3, 0}, {1, 3, 0}, {2, 3, 0}};
        auto st = segment_rounds(ev);
        REQUIRE(st.rounds.size() == 3);
        for (const auto& row : st.rounds) CHECK(row.processed == 1);
        CHECK(st.max_round == 1);
    }
    {
        std::vector<EngineEvent> ev{{0, 3, 0}, {1, 2, 0}, {2, 2, 3}, {3, 3, 0}};
        auto st = segment_rounds(ev);
        REQUIRE(st.rounds.size() == 2);
        CHECK(st.rounds[0].processed == 3);
        CHECK(st.rounds[1].processed == 1);
        CHECK(st.rounds[0].loose_l3 == 1);
        CHECK(st.max_round == 3);
    }
    {
        // leading cascade and a run-out event attach to the opening round
        std::vector<EngineEvent> ev{{5, 2, 0}, {0, 3, 0}, {1, 0, 1}, {2, 1, 2}};
        auto st = segment_rounds(ev);
        REQUIRE(st.rounds.size() == 2);
        CHECK(st.rounds[0].processed == 1);
        CHECK(st.rounds[1].processed == 2); // the degree-0 event is not a selection
        CHECK(st.rounds[1].loose_l1 == 1);
        CHECK(st.rounds[1].loose_l2 == 1);
        CHECK(st.processed == 3);
    }
    CHECK(segment_rounds({}).rounds.empty());
}

TEST_CASE("loose fraction stays small at moderate size") {
    RngStream seq_rng(361, 0);
    for (int trial = 0; trial < 3; ++trial) {
        auto degrees = truncated_poisson_sequence(10000, 2.85, 3, seq_rng);
        auto r = orient_core_full(degrees, RngStream(362, trial));
        check_result(r, degrees);
        const double loose =
            static_cast<double>(r.stats.loose_l1 + r.stats.loose_l2 + r.stats.loose_l3 +
                                r.stats.loose_cutoff + r.stats.loose_phase4);
        CHECK(loose / 10000.0 < 0.05);
        CHECK(r.stats.phase4_size > 100); // suspension, not cutoff, ends the run
    }
}

TEST_CASE("engine determinism") {
    RngStream seq_rng(371, 0);
    auto degrees = truncated_poisson_sequence(200, 2.9, 3, seq_rng);
    auto a = orient_core_full(degrees, RngStream(372, 5));
    auto b = orient_core_full(degrees, RngStream(372, 5));
    auto c = orient_core_full(degrees, RngStream(372, 6));
    CHECK(a.stats.events == b.stats.events);
    CHECK(multigraph_key(a.graph) == multigraph_key(b.graph));
    CHECK(a.stats.events != c.stats.events);
    for (EdgeId e = 0; e < a.graph.edge_slots(); ++e) {
        CHECK(a.orientation.oriented(e) == b.orientation.oriented(e));
        if (a.orientation.oriented(e)) CHECK(a.orientation.tail(e) == b.orientation.tail(e));
    }
}

TEST_CASE("shell orientation over the accretion order") {
    // K4 plus a two-edge vertex 4, plus vertex 5 attached to {0, 4}
    SimpleGraph g(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                      {0, 4}, {1, 4}, {0, 5}, {4, 5}});
    auto core = three_plus_two_core(g);
    REQUIRE(core.members == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
    REQUIRE(core.accretion.size() == 2);
    CHECK(core.accretion[0].v == 4);
    CHECK(core.accretion[1].v == 5);

    Orientation base(g.n(), g.m());
    base.orient(0, 0); // 0 -> 1
    base.orient(1, 0); // 0 -> 2
    base.orient(3, 1); // 1 -> 2
    base.orient(4, 1); // 1 -> 3
    base.orient(5, 2); // 2 -> 3
    base.orient(2, 3); // 3 -> 0

    auto o = orient_32_shell(base, core, g);
    CHECK(o.out_degree(4) == 2);
    CHECK(o.out_degree(5) == 2);
    CHECK(o.out_degree(0) == 2);
    CHECK(o.out_degree(1) == 2);
    CHECK(o.out_degree(2) == 1);
    CHECK(o.out_degree(3) == 1);

    // empty accretion is the identity
    CoreResult none;
    auto same = orient_32_shell(base, none, g);
    for (Vertex v = 0; v < g.n(); ++v) CHECK(same.out_degree(v) == base.out_degree(v));

    // attachment edge not present in the graph
    CoreResult bogus;
    bogus.accretion.push_back({5, 2, 3});
    CHECK_THROWS_AS(orient_32_shell(base, bogus, g), std::invalid_argument);
}
