#include "rigidity/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "rigidity/pebble.hpp"

namespace rigidity {

namespace {

enum class ExitMode { exhausted, cutoff, phase4 };

std::size_t resolve_cutoff(std::size_t requested, Vertex n) {
    if (requested != kSqrtCutoff) return requested;
    return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

std::uint64_t validate_degrees(const DegreeSequence& degrees) {
    std::uint64_t sum = 0;
    for (auto d : degrees) {
        if (d < 3) throw std::invalid_argument("orientation engine: degrees must be >= 3");
        sum += d;
    }
    if (sum % 2 != 0) throw std::invalid_argument("orientation engine: degree sum is odd");
    return sum;
}

// Phase 3 selection loop, shared verbatim by the full and the simplified
// run so both consume the copy stream identically. The sink sees the
// graph-building side effects; the driver owns selection, labeling and the
// event log.
template <typename Sink>
ExitMode phase3_driver(ConfigurationState& cfg, const DegreeSequence& degrees,
                       RngStream& copy_rng, std::size_t cutoff, Sink& sink,
                       std::vector<VertexLabel>& label, RoundStats& st) {
    const Vertex n = static_cast<Vertex>(degrees.size());
    using Entry = std::pair<std::uint32_t, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (Vertex v = 0; v < n; ++v) heap.push({degrees[v], v});

    std::size_t remaining = n;

    auto note_draw = [&](Vertex w) {
        const std::uint32_t c = cfg.copies(w);
        if (c == 0) {
            --remaining;
            label[w] = VertexLabel::loose_l1;
            ++st.loose_l1;
            st.events.push_back({w, 0, 1});
        } else {
            if (c == 2) ++st.three_to_two_hits;
            heap.push({c, w});
        }
    };

    while (true) {
        if (remaining == 0) return ExitMode::exhausted;
        if (remaining <= cutoff) return ExitMode::cutoff;

        std::uint32_t d;
        Vertex v;
        for (;;) {
            assert(!heap.empty());
            auto [dd, vv] = heap.top();
            if (cfg.copies(vv) != dd) { // stale: consumed further since pushed
                heap.pop();
                continue;
            }
            d = dd;
            v = vv;
            break;
        }
        if (d >= 4) return ExitMode::phase4;
        heap.pop();

        const std::size_t ev = st.events.size();
        st.events.push_back({v, d, 0});

        if (d == 3) {
            sink.fr_two(cfg, v);
            const Vertex w = fr_one(cfg, v, copy_rng);
            assert(w != v);
            sink.oriented_edge(v, w);
            note_draw(w);
        } else {
            bool loop_hit = false;
            while (cfg.copies(v) > 0) {
                const Vertex w = fr_one(cfg, v, copy_rng);
                sink.oriented_edge(v, w);
                if (w == v)
                    loop_hit = true;
                else
                    note_draw(w);
            }
            if (d == 1) {
                label[v] = VertexLabel::loose_l2;
                ++st.loose_l2;
                st.events[ev].loose_cause = 2;
            } else if (loop_hit) {
                label[v] = VertexLabel::loose_l3;
                ++st.loose_l3;
                st.events[ev].loose_cause = 3;
            }
        }
        assert(cfg.copies(v) == 0);
        --remaining;
    }
}

struct FullSink {
    MultiGraph& g;
    Orientation& o;
    std::vector<SpliceToken>& pending;
    RngStream& aux;

    void orient_checked(EdgeId e, Vertex tail) {
        o.ensure_size(g.n(), g.edge_slots());
        o.orient(e, tail);
        assert(o.out_degree(tail) <= 2);
    }

    void fr_two(ConfigurationState& cfg, Vertex v) {
        auto token = fr_two_begin(cfg, v, aux, static_cast<EdgeId>(g.edge_slots()));
        if (token) {
            pending.push_back(*token);
        } else {
            orient_checked(g.add_edge(v, v), v);
        }
    }

    void oriented_edge(Vertex v, Vertex w) { orient_checked(g.add_edge(v, w), v); }
};

struct DegreesOnlySink {
    void fr_two(ConfigurationState& cfg, Vertex v) {
        cfg.remove_one(v);
        cfg.remove_one(v);
    }
    void oriented_edge(Vertex, Vertex) {}
};

void fold_rounds(RoundStats& st) {
    RoundStats seg = segment_rounds(st.events);
    st.rounds = std::move(seg.rounds);
    st.max_round = seg.max_round;
    st.processed = seg.processed;
    assert(seg.loose_l1 == st.loose_l1);
    assert(seg.loose_l2 == st.loose_l2);
    assert(seg.loose_l3 == st.loose_l3);
}

} // namespace

RoundStats segment_rounds(const std::vector<EngineEvent>& events) {
    RoundStats st;
    for (const auto& ev : events) {
        if (ev.degree == 3 || st.rounds.empty()) st.rounds.push_back({});
        RoundRow& row = st.rounds.back();
        if (ev.degree >= 1) {
            ++row.processed;
            ++st.processed;
        }
        switch (ev.loose_cause) {
            case 1: ++row.loose_l1; ++st.loose_l1; break;
            case 2: ++row.loose_l2; ++st.loose_l2; break;
            case 3: ++row.loose_l3; ++st.loose_l3; break;
            default: break;
        }
    }
    for (const auto& row : st.rounds) st.max_round = std::max(st.max_round, row.processed);
    return st;
}

EngineResult orient_core_full(const DegreeSequence& degrees, const RngStream& rng,
                              std::size_t cutoff_remaining) {
    const std::uint64_t copy_sum = validate_degrees(degrees);
    const Vertex n = static_cast<Vertex>(degrees.size());
    const std::size_t cutoff = resolve_cutoff(cutoff_remaining, n);

    RngStream copy_rng = rng.substream(0);
    RngStream aux = rng.substream(1);

    ConfigurationState cfg(degrees);
    EngineResult out{MultiGraph(n), Orientation(n, 0), RoundStats{},
                     std::vector<VertexLabel>(n, VertexLabel::unprocessed)};
    MultiGraph& g = out.graph;
    Orientation& o = out.orientation;
    RoundStats& st = out.stats;

    std::vector<SpliceToken> pending;
    FullSink sink{g, o, pending, aux};
    const ExitMode mode = phase3_driver(cfg, degrees, copy_rng, cutoff, sink, out.labels, st);

    if (mode == ExitMode::cutoff) {
        st.cutoff_hit = true;
        for (Vertex v = 0; v < n; ++v) {
            if (cfg.copies(v) > 0) {
                out.labels[v] = VertexLabel::loose_cutoff;
                ++st.loose_cutoff;
            }
        }
        uniform_matching_into(cfg, g, copy_rng); // completes the matching, unoriented
    } else if (mode == ExitMode::phase4) {
        std::vector<Vertex> suspended;
        for (Vertex v = 0; v < n; ++v)
            if (cfg.copies(v) > 0) suspended.push_back(v);
        st.phase4_size = suspended.size();

        const EdgeId first_new = static_cast<EdgeId>(g.edge_slots());
        uniform_matching_into(cfg, g, copy_rng);

        PebbleGame game(n, {2, 0});
        for (EdgeId e = first_new; e < g.edge_slots(); ++e)
            game.try_insert(g.edge(e).u, g.edge(e).v, e);
        o.ensure_size(n, g.edge_slots());
        for (const auto& ge : game.game_edges()) {
            o.orient(ge.external, ge.tail);
            assert(o.out_degree(ge.tail) <= 2);
        }

        st.phase4_success = true;
        for (Vertex v : suspended) {
            if (o.out_degree(v) != 2) {
                st.phase4_success = false;
                out.labels[v] = VertexLabel::loose_phase4;
                ++st.loose_phase4;
            }
        }
    } else {
        st.phase4_success = true; // nothing was suspended
    }

    // Resolve pending FR II splices, newest first, against the completed
    // matching. Splitting t -> h for owner v yields t -> v and v -> h; an
    // unoriented pair still gives the owner its v -> h edge.
    if (!pending.empty()) {
        SplicePool pool(g);
        for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
            const SpliceResult r = pool.resolve(g, *it, aux);
            o.ensure_size(n, g.edge_slots());
            if (o.oriented(r.removed)) {
                const Vertex t = o.tail(r.removed);
                o.clear(r.removed);
                if (t == r.i) {
                    o.orient(r.first, r.i);
                    o.orient(r.second, it->v);
                } else {
                    o.orient(r.second, r.j);
                    o.orient(r.first, it->v);
                }
            } else {
                o.orient(r.second, it->v);
            }
            assert(o.out_degree(it->v) <= 2);
        }
    }

    assert(g.m() == copy_sum / 2);
    o.ensure_size(n, g.edge_slots());

    for (Vertex v = 0; v < n; ++v) {
        if (out.labels[v] == VertexLabel::unprocessed) {
            assert(o.out_degree(v) == 2);
            out.labels[v] = VertexLabel::tight;
            ++st.tight;
        } else {
            assert(o.out_degree(v) < 2);
        }
    }

    fold_rounds(st);
    return out;
}

RoundStats simplified_run(const DegreeSequence& degrees, const RngStream& rng,
                          std::size_t cutoff_remaining) {
    validate_degrees(degrees);
    const Vertex n = static_cast<Vertex>(degrees.size());
    const std::size_t cutoff = resolve_cutoff(cutoff_remaining, n);

    RngStream copy_rng = rng.substream(0);
    ConfigurationState cfg(degrees);
    RoundStats st;
    std::vector<VertexLabel> label(n, VertexLabel::unprocessed);

    DegreesOnlySink sink;
    const ExitMode mode = phase3_driver(cfg, degrees, copy_rng, cutoff, sink, label, st);

    if (mode == ExitMode::cutoff) {
        st.cutoff_hit = true;
        for (Vertex v = 0; v < n; ++v)
            if (cfg.copies(v) > 0) ++st.loose_cutoff;
    } else if (mode == ExitMode::phase4) {
        for (Vertex v = 0; v < n; ++v)
            if (cfg.copies(v) > 0) ++st.phase4_size;
    }
    // Phase 4 is not simulated here; its vertices count as prospective
    // tights per the suspension argument.
    st.tight = n - st.loose_l1 - st.loose_l2 - st.loose_l3 - st.loose_cutoff;

    fold_rounds(st);
    return st;
}

Orientation orient_32_shell(const Orientation& core_orient, const CoreResult& accretion,
                            const SimpleGraph& g) {
    Orientation o = core_orient;
    o.ensure_size(g.n(), g.m());

    std::unordered_map<std::uint64_t, EdgeId> ids;
    ids.reserve(g.m() * 2);
    for (EdgeId e = 0; e < g.m(); ++e) {
        const auto [u, v] = g.edge(e);
        ids.emplace((static_cast<std::uint64_t>(u) << 32) | v, e);
    }
    auto edge_id = [&](Vertex a, Vertex b) {
        const auto [lo, hi] = std::minmax(a, b);
        const auto it = ids.find((static_cast<std::uint64_t>(lo) << 32) | hi);
        if (it == ids.end())
            throw std::invalid_argument("orient_32_shell: attachment edge missing from graph");
        return it->second;
    };

    for (const Attachment& at : accretion.accretion) {
        o.orient(edge_id(at.v, at.a), at.v);
        o.orient(edge_id(at.v, at.b), at.v);
        assert(o.out_degree(at.v) == 2);
    }
    return o;
}

} // namespace rigidity
