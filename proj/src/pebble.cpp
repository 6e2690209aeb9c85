#include "rigidity/pebble.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace rigidity {

namespace {

void validate_params(SparsityParams p) {
    if (p.k == 0 || p.l >= 2 * p.k)
        throw std::invalid_argument("SparsityParams: need k >= 1 and 0 <= l < 2k");
}

} // namespace

PebbleGame::PebbleGame(Vertex n, SparsityParams params)
    : n_(n), params_(params), peb_(n, params.k), incident_(n),
      visited_(n, 0), parent_edge_(n, 0), cursor_(n, 0) {
    validate_params(params);
}

std::uint32_t PebbleGame::fresh_epoch() {
    return ++epoch_;
}

void PebbleGame::add_incidence(Vertex at, Vertex other, std::uint32_t idx) {
    auto& list = incident_[at];
    Incidence inc{other, idx};
    auto it = std::upper_bound(list.begin(), list.end(), inc,
                               [](const Incidence& a, const Incidence& b) {
                                   return a.other < b.other ||
                                          (a.other == b.other && a.idx < b.idx);
                               });
    list.insert(it, inc);
}

// DFS from `root` along oriented edges for a pebble on a vertex outside
// {ex1, ex2}. On success the path to the pebble is reversed and the pebble
// moves to `root`.
bool PebbleGame::search_and_grab(Vertex root, Vertex ex1, Vertex ex2) {
    const std::uint32_t ep = fresh_epoch();
    visited_[root] = ep;
    cursor_[root] = 0;
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
        Vertex x = stack_.back();
        bool advanced = false;
        while (cursor_[x] < incident_[x].size()) {
            const Incidence inc = incident_[x][cursor_[x]++];
            if (edges_[inc.idx].tail != x) continue; // follow out-edges only
            const Vertex y = inc.other;
            if (y == x || visited_[y] == ep) continue;
            visited_[y] = ep;
            parent_edge_[y] = inc.idx;
            if (y != ex1 && y != ex2 && peb_[y] > 0) {
                // reverse the root -> y path
                Vertex w = y;
                while (w != root) {
                    GameEdge& e = edges_[parent_edge_[w]];
                    const Vertex p = (e.u == w) ? e.v : e.u;
                    assert(e.tail == p);
                    e.tail = w;
                    w = p;
                }
                --peb_[y];
                ++peb_[root];
                return true;
            }
            cursor_[y] = 0;
            stack_.push_back(y);
            advanced = true;
            break;
        }
        if (!advanced) stack_.pop_back();
    }
    return false;
}

void PebbleGame::collect_reach(Vertex u, Vertex v, std::vector<Vertex>& out) {
    const std::uint32_t ep = fresh_epoch();
    out.clear();
    stack_.clear();
    visited_[u] = ep;
    stack_.push_back(u);
    out.push_back(u);
    if (v != u && visited_[v] != ep) {
        visited_[v] = ep;
        stack_.push_back(v);
        out.push_back(v);
    }
    while (!stack_.empty()) {
        const Vertex x = stack_.back();
        stack_.pop_back();
        for (const Incidence& inc : incident_[x]) {
            if (edges_[inc.idx].tail != x) continue;
            const Vertex y = inc.other;
            if (y == x || visited_[y] == ep) continue;
            visited_[y] = ep;
            stack_.push_back(y);
            out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
}

bool PebbleGame::try_insert(Vertex u, Vertex v, EdgeId external_id) {
    if (u >= n_ || v >= n_)
        throw std::invalid_argument("PebbleGame: vertex out of range");
    const std::uint32_t need = params_.l + 1;
    if (u == v) {
        // a loop needs l+1 pebbles on the single vertex, impossible if l >= k
        while (peb_[u] < need) {
            if (need > params_.k || !search_and_grab(u, u, u)) {
                collect_reach(u, u, rejection_region_);
                return false;
            }
        }
        edges_.push_back({u, u, u, external_id});
        add_incidence(u, u, static_cast<std::uint32_t>(edges_.size() - 1));
        --peb_[u];
        return true;
    }
    while (peb_[u] + peb_[v] < need) {
        if (!search_and_grab(u, u, v) && !search_and_grab(v, u, v)) {
            collect_reach(u, v, rejection_region_);
            return false;
        }
    }
    const Vertex tail = peb_[u] > 0 ? u : v;
    edges_.push_back({u, v, tail, external_id});
    const auto idx = static_cast<std::uint32_t>(edges_.size() - 1);
    add_incidence(u, v, idx);
    add_incidence(v, u, idx);
    --peb_[tail];
    return true;
}

std::vector<Vertex> PebbleGame::tight_region(Vertex u, Vertex v) {
    if (params_.l == 0)
        throw std::logic_error("tight_region: not defined for l = 0 here");
    // Saturate: haul every pebble reachable from {u, v} onto the pair. For a
    // sparse accepted set this ends with exactly l pebbles on {u, v}.
    for (;;) {
        if (!search_and_grab(u, u, v) && !search_and_grab(v, u, v)) break;
    }
    assert(peb_[u] + peb_[v] == params_.l);

    // Mark everything that reaches a free pebble (reverse reachability from
    // pebbled vertices other than u, v); the unmarked set is the maximal
    // tight set containing u and v.
    const std::uint32_t ep = fresh_epoch();
    stack_.clear();
    for (Vertex w = 0; w < n_; ++w) {
        if (w == u || w == v) continue;
        if (peb_[w] > 0) {
            visited_[w] = ep;
            stack_.push_back(w);
        }
    }
    while (!stack_.empty()) {
        const Vertex x = stack_.back();
        stack_.pop_back();
        for (const Incidence& inc : incident_[x]) {
            if (edges_[inc.idx].tail == x) continue; // want edges INTO x
            const Vertex z = inc.other;
            if (z == x || visited_[z] == ep) continue;
            visited_[z] = ep;
            stack_.push_back(z);
        }
    }
    std::vector<Vertex> region;
    for (Vertex w = 0; w < n_; ++w)
        if (visited_[w] != ep) region.push_back(w);
    return region;
}

namespace {

template <typename EdgeRange>
SparsityResult run_sparsity(Vertex n, std::size_t m_total, const EdgeRange& edges,
                            SparsityParams params) {
    validate_params(params);
    PebbleGame game(n, params);
    SparsityResult res;
    bool all_accepted = true;
    for (const auto& [id, u, v] : edges) {
        if (game.try_insert(u, v, id))
            res.basis.push_back(id);
        else
            all_accepted = false;
    }
    if (!all_accepted) {
        res.verdict = SparsityVerdict::neither;
    } else {
        const long long tight_count =
            static_cast<long long>(params.k) * n - static_cast<long long>(params.l);
        res.verdict = (static_cast<long long>(m_total) == tight_count)
                          ? SparsityVerdict::tight
                          : SparsityVerdict::sparse;
    }
    return res;
}

} // namespace

SparsityResult is_sparse(const SimpleGraph& g, SparsityParams params) {
    std::vector<std::tuple<EdgeId, Vertex, Vertex>> edges;
    edges.reserve(g.m());
    for (EdgeId e = 0; e < g.m(); ++e)
        edges.emplace_back(e, g.edge(e).first, g.edge(e).second);
    return run_sparsity(g.n(), g.m(), edges, params);
}

SparsityResult is_sparse(const MultiGraph& g, SparsityParams params) {
    std::vector<std::tuple<EdgeId, Vertex, Vertex>> edges;
    edges.reserve(g.m());
    for (EdgeId e = 0; e < g.edge_slots(); ++e)
        if (g.alive(e)) edges.emplace_back(e, g.edge(e).u, g.edge(e).v);
    return run_sparsity(g.n(), g.m(), edges, params);
}

TwoOrientationResult two_orientation(const MultiGraph& g) {
    PebbleGame game(g.n(), {2, 0});
    TwoOrientationResult res;
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        if (!g.alive(e)) continue;
        const auto& ed = g.edge(e);
        if (!game.try_insert(ed.u, ed.v, e)) {
            res.ok = false;
            res.witness = game.last_rejection_region();
            return res;
        }
    }
    res.ok = true;
    res.orientation = Orientation(g.n(), g.edge_slots());
    for (const auto& ge : game.game_edges()) res.orientation.orient(ge.external, ge.tail);
    return res;
}

ComponentDecomposition rigid_components(const SimpleGraph& g) {
    PebbleGame game(g.n(), {2, 3});

    struct Comp {
        std::vector<Vertex> verts; // sorted
        bool alive = true;
    };
    std::vector<Comp> comps;
    std::vector<std::vector<std::uint32_t>> vertex_comps(g.n());
    std::vector<std::uint32_t> mark(g.n(), 0);
    std::uint32_t mark_ep = 0;
    std::vector<char> comp_seen;

    for (EdgeId e = 0; e < g.m(); ++e) {
        const auto [u, v] = g.edge(e);
        if (!game.try_insert(u, v, e)) continue; // endpoints already co-tight
        std::vector<Vertex> region = game.tight_region(u, v);

        ++mark_ep;
        for (Vertex w : region) mark[w] = mark_ep;
        comp_seen.assign(comps.size(), 0);
        for (Vertex w : region) {
            auto& list = vertex_comps[w];
            std::size_t out = 0;
            for (std::uint32_t cid : list) {
                if (!comps[cid].alive) continue; // drop stale ids lazily
                list[out++] = cid;
                if (comp_seen[cid]) continue;
                comp_seen[cid] = 1;
                // subsumed iff it shares >= 2 vertices with the new region
                int inside = 0;
                for (Vertex x : comps[cid].verts)
                    if (mark[x] == mark_ep && ++inside == 2) break;
                if (inside >= 2) comps[cid].alive = false;
            }
            list.resize(out);
        }
        const auto cid = static_cast<std::uint32_t>(comps.size());
        for (Vertex w : region) vertex_comps[w].push_back(cid);
        comps.push_back({std::move(region), true});
    }

    // Gather live components, add isolated vertices, order lexicographically.
    ComponentDecomposition dec;
    for (auto& c : comps)
        if (c.alive) dec.components.push_back(std::move(c.verts));
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) dec.components.push_back({v});
    std::sort(dec.components.begin(), dec.components.end());

    // Map each edge to the unique component holding both endpoints.
    std::vector<std::vector<std::uint32_t>> by_vertex(g.n());
    for (std::uint32_t i = 0; i < dec.components.size(); ++i)
        for (Vertex w : dec.components[i]) by_vertex[w].push_back(i);
    dec.edge_component.assign(g.m(), 0);
    for (EdgeId e = 0; e < g.m(); ++e) {
        const auto [u, v] = g.edge(e);
        bool found = false;
        for (std::uint32_t cid : by_vertex[u]) {
            const auto& cv = dec.components[cid];
            if (std::binary_search(cv.begin(), cv.end(), v)) {
                dec.edge_component[e] = cid;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("rigid_components: edge not covered");
    }
    return dec;
}

Vertex henneberg_one(MultiGraph& g, Orientation& o, Vertex i, Vertex j) {
    if (i >= g.n() || j >= g.n())
        throw std::invalid_argument("henneberg_one: neighbor out of range");
    const Vertex v = g.add_vertex();
    const EdgeId e1 = g.add_edge(v, i);
    const EdgeId e2 = g.add_edge(v, j);
    o.ensure_size(g.n(), g.edge_slots());
    o.orient(e1, v);
    o.orient(e2, v);
    return v;
}

Vertex henneberg_two(MultiGraph& g, Orientation& o, EdgeId split, Vertex k) {
    if (split >= g.edge_slots() || !g.alive(split))
        throw std::invalid_argument("henneberg_two: split edge not alive");
    if (!o.oriented(split))
        throw std::invalid_argument("henneberg_two: split edge must be oriented");
    if (k > g.n()) // k == g.n() names the new vertex, giving it a loop
        throw std::invalid_argument("henneberg_two: third neighbor out of range");
    const Vertex i = o.tail(split);
    const auto& ed = g.edge(split);
    const Vertex j = (ed.u == i) ? ed.v : ed.u;
    o.clear(split);
    g.remove_edge(split);
    const Vertex v = g.add_vertex(); // v == old g.n(), so k == v is allowed
    const EdgeId e1 = g.add_edge(i, v);
    const EdgeId e2 = g.add_edge(v, j);
    const EdgeId e3 = g.add_edge(v, k);
    o.ensure_size(g.n(), g.edge_slots());
    o.orient(e1, i);
    o.orient(e2, v);
    o.orient(e3, v);
    return v;
}

} // namespace rigidity
