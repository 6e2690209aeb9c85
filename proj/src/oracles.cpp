#include "rigidity/oracles.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rigidity {

namespace {

// Count-per-subset table for incremental Laman-sparsity checks. Index is a
// vertex bitmask; cap[S] = 2|S| - 3.
struct SubsetCounts {
    explicit SubsetCounts(unsigned n) : n_bits(n), cnt(std::size_t{1} << n, 0) {
        cap.resize(cnt.size());
        for (std::size_t s = 0; s < cnt.size(); ++s) {
            const int pc = __builtin_popcountll(s);
            cap[s] = pc >= 2 ? 2 * pc - 3 : 0;
        }
    }

    bool can_add(std::uint32_t emask) const {
        // a violation after adding e must involve a subset containing e
        const std::uint32_t all = (n_bits == 32) ? ~0u : ((1u << n_bits) - 1);
        const std::uint32_t rest = all & ~emask;
        for (std::uint32_t t = rest;; t = (t - 1) & rest) {
            const std::uint32_t s = t | emask;
            if (cnt[s] >= cap[s]) return false;
            if (t == 0) break;
        }
        return true;
    }

    void add(std::uint32_t emask, int delta) {
        const std::uint32_t all = (n_bits == 32) ? ~0u : ((1u << n_bits) - 1);
        const std::uint32_t rest = all & ~emask;
        for (std::uint32_t t = rest;; t = (t - 1) & rest) {
            cnt[t | emask] += delta;
            if (t == 0) break;
        }
    }

    unsigned n_bits;
    std::vector<int> cnt;
    std::vector<int> cap;
};

bool spanning_search(const std::vector<std::uint32_t>& emasks, SubsetCounts& tab,
                     std::size_t idx, std::size_t chosen, std::size_t target) {
    if (chosen == target) return true;
    if (emasks.size() - idx < target - chosen) return false;
    for (std::size_t e = idx; e < emasks.size(); ++e) {
        if (!tab.can_add(emasks[e])) continue;
        tab.add(emasks[e], 1);
        if (spanning_search(emasks, tab, e + 1, chosen + 1, target)) return true;
        tab.add(emasks[e], -1);
    }
    return false;
}

} // namespace

LamanVerdict brute_force_laman(const SimpleGraph& g) {
    const unsigned n = g.n();
    if (n > 12) throw std::invalid_argument("brute_force_laman: n must be <= 12");
    LamanVerdict v{true, false};
    if (n < 2) {
        v.laman_spanning = false; // no 2n-3 target below 2 vertices
        return v;
    }

    std::vector<std::uint32_t> emasks;
    emasks.reserve(g.m());
    for (const auto& [a, b] : g.edges()) emasks.push_back((1u << a) | (1u << b));

    // sparsity: every subset S with |S| >= 2 induces at most 2|S| - 3 edges
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const int pc = __builtin_popcount(s);
        if (pc < 2) continue;
        int induced = 0;
        for (auto em : emasks) induced += (em & s) == em;
        if (induced > 2 * pc - 3) {
            v.laman_sparse = false;
            break;
        }
    }

    const std::size_t target = 2 * static_cast<std::size_t>(n) - 3;
    if (g.m() >= target) {
        SubsetCounts tab(n);
        v.laman_spanning = spanning_search(emasks, tab, 0, 0, target);
    }
    return v;
}

bool brute_force_two_orientable(const MultiGraph& g) {
    if (g.m() > 10000)
        throw std::invalid_argument("brute_force_two_orientable: too many edges");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (EdgeId e = 0; e < g.edge_slots(); ++e)
        if (g.alive(e)) edges.emplace_back(g.edge(e).u, g.edge(e).v);

    // Kuhn's algorithm on the edge -> out-slot bipartite graph.
    const std::size_t slots = 2 * static_cast<std::size_t>(g.n());
    std::vector<int> slot_match(slots, -1);
    std::vector<std::uint32_t> seen(slots, 0);
    std::uint32_t epoch = 0;

    struct Frame {
        std::size_t edge;
        int cand;
    };

    auto candidates = [&](std::size_t e, int i) -> long long {
        const auto& [u, w] = edges[e];
        // loop: only its own vertex's two slots (u == w collapses the list)
        const std::size_t c[4] = {2 * std::size_t{u}, 2 * std::size_t{u} + 1,
                                  2 * std::size_t{w}, 2 * std::size_t{w} + 1};
        const int lim = (u == w) ? 2 : 4;
        return i < lim ? static_cast<long long>(c[i]) : -1;
    };

    // iterative augmenting path search from edge e
    auto try_augment = [&](std::size_t e0) -> bool {
        ++epoch;
        std::vector<Frame> stack{{e0, 0}};
        // path of (edge, slot) choices for retrace on success
        std::vector<std::pair<std::size_t, std::size_t>> path;
        while (!stack.empty()) {
            auto& fr = stack.back();
            const long long s = candidates(fr.edge, fr.cand++);
            if (s < 0) {
                stack.pop_back();
                if (!path.empty()) path.pop_back();
                continue;
            }
            const auto slot = static_cast<std::size_t>(s);
            if (seen[slot] == epoch) continue;
            seen[slot] = epoch;
            path.emplace_back(fr.edge, slot);
            if (slot_match[slot] < 0) {
                for (const auto& [pe, ps] : path) slot_match[ps] = static_cast<int>(pe);
                return true;
            }
            stack.push_back({static_cast<std::size_t>(slot_match[slot]), 0});
        }
        return false;
    };

    for (std::size_t e = 0; e < edges.size(); ++e)
        if (!try_augment(e)) return false;
    return true;
}

} // namespace rigidity
