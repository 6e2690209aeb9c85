#include "rigidity/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rigidity {

ConfigurationState::ConfigurationState(const DegreeSequence& degrees)
    : pos_(degrees.size()) {
    std::size_t total = 0;
    for (auto d : degrees) total += d;
    pool_.reserve(total);
    slot_.reserve(total);
    for (Vertex v = 0; v < degrees.size(); ++v) {
        pos_[v].reserve(degrees[v]);
        for (std::uint32_t k = 0; k < degrees[v]; ++k) {
            pos_[v].push_back(static_cast<std::uint32_t>(pool_.size()));
            slot_.push_back(k);
            pool_.push_back(v);
        }
    }
}

void ConfigurationState::remove_at(std::uint32_t idx) {
    const Vertex v = pool_[idx];
    const std::uint32_t s = slot_[idx];
    pos_[v][s] = pos_[v].back();
    slot_[pos_[v][s]] = s;
    pos_[v].pop_back();

    const std::uint32_t last = static_cast<std::uint32_t>(pool_.size() - 1);
    if (idx != last) {
        pool_[idx] = pool_[last];
        slot_[idx] = slot_[last];
        pos_[pool_[idx]][slot_[idx]] = idx;
    }
    pool_.pop_back();
    slot_.pop_back();
}

Vertex ConfigurationState::draw(RngStream& rng) {
    if (pool_.empty()) throw std::invalid_argument("draw: no copies remain");
    const auto idx = static_cast<std::uint32_t>(rng.uniform_below(pool_.size()));
    const Vertex v = pool_[idx];
    remove_at(idx);
    return v;
}

void ConfigurationState::remove_one(Vertex v) {
    if (pos_[v].empty()) throw std::invalid_argument("remove_one: vertex has no copies");
    remove_at(pos_[v].back());
}

SimpleGraph gnp(Vertex n, double c, RngStream& rng) {
    if (c < 0.0) throw std::invalid_argument("gnp: c must be >= 0");
    if (n == 0) return SimpleGraph(0, {});
    const double p = c / n;
    if (p > 1.0) throw std::invalid_argument("gnp: c/n must be <= 1");

    std::vector<std::pair<Vertex, Vertex>> edges;
    if (p >= 1.0) {
        for (Vertex v = 1; v < n; ++v)
            for (Vertex w = 0; w < v; ++w) edges.emplace_back(w, v);
        return SimpleGraph(n, std::move(edges));
    }
    if (p > 0.0) {
        // Batagelj-Brandes skipping: jump a geometric gap through the
        // lexicographic pair list per accepted edge.
        const double logq = std::log1p(-p);
        std::int64_t v = 1, w = -1;
        while (v < static_cast<std::int64_t>(n)) {
            const double u = rng.uniform01();
            w += 1 + static_cast<std::int64_t>(std::floor(std::log(1.0 - u) / logq));
            while (w >= v && v < static_cast<std::int64_t>(n)) {
                w -= v;
                ++v;
            }
            if (v < static_cast<std::int64_t>(n))
                edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
        }
    }
    return SimpleGraph(n, std::move(edges));
}

void uniform_matching_into(ConfigurationState& cfg, MultiGraph& g, RngStream& rng) {
    if (cfg.total() % 2 != 0)
        throw std::invalid_argument("uniform_matching: copy total is odd");
    Vertex cursor = 0;
    while (cfg.total() > 0) {
        while (cfg.copies(cursor) == 0) ++cursor;
        cfg.remove_one(cursor);
        const Vertex w = cfg.draw(rng);
        g.add_edge(cursor, w);
    }
}

MultiGraph uniform_matching(ConfigurationState& cfg, RngStream& rng) {
    MultiGraph g(cfg.n());
    uniform_matching_into(cfg, g, rng);
    return g;
}

Vertex fr_one(ConfigurationState& cfg, Vertex v, RngStream& rng) {
    if (cfg.total() < 2) throw std::underflow_error("fr_one: fewer than two copies");
    if (cfg.copies(v) == 0) throw std::invalid_argument("fr_one: vertex has no copies");
    cfg.remove_one(v);
    return cfg.draw(rng);
}

std::optional<SpliceToken> fr_two_begin(ConfigurationState& cfg, Vertex v,
                                        RngStream& rng, EdgeId watermark) {
    if (cfg.copies(v) < 2) throw std::invalid_argument("fr_two_begin: needs two copies of v");
    const bool self_loop = rng.bernoulli(1.0 / static_cast<double>(cfg.total() - 1));
    cfg.remove_one(v);
    cfg.remove_one(v);
    if (self_loop) return std::nullopt;
    return SpliceToken{v, watermark};
}

SplicePool::SplicePool(const MultiGraph& g) {
    ids_.reserve(g.m());
    for (EdgeId e = 0; e < g.edge_slots(); ++e)
        if (g.alive(e)) ids_.push_back(e);
    boundary_ = ids_.size();
}

SpliceResult SplicePool::resolve(MultiGraph& g, const SpliceToken& token, RngStream& rng) {
    while (boundary_ > 0 && ids_[boundary_ - 1] >= token.watermark) --boundary_;
    if (boundary_ == ids_.size())
        throw std::logic_error("splice: no candidate edges at or above the watermark");

    const std::size_t idx =
        boundary_ + rng.uniform_below(ids_.size() - boundary_);
    const EdgeId removed = ids_[idx];
    ids_[idx] = ids_.back();
    ids_.pop_back();

    const Vertex i = g.edge(removed).u;
    const Vertex j = g.edge(removed).v;
    g.remove_edge(removed);
    const EdgeId first = g.add_edge(i, token.v);
    const EdgeId second = g.add_edge(token.v, j);
    ids_.push_back(first);
    ids_.push_back(second);
    return {removed, i, j, first, second};
}

SpliceResult fr_two_resolve(const SpliceToken& token, MultiGraph& g, RngStream& rng) {
    SplicePool pool(g);
    return pool.resolve(g, token, rng);
}

DegreeSequence truncated_poisson_sequence(Vertex n, double tau, std::uint32_t min_deg,
                                          RngStream& rng) {
    if (tau <= 0.0) throw std::invalid_argument("truncated_poisson_sequence: tau must be > 0");
    if (min_deg != 3 && min_deg != 4)
        throw std::invalid_argument("truncated_poisson_sequence: min_deg must be 3 or 4");
    DegreeSequence degrees(n);
    std::uint64_t sum = 0;
    for (Vertex v = 0; v < n; ++v) {
        std::uint32_t d;
        do {
            d = rng.poisson(tau);
        } while (d < min_deg);
        degrees[v] = d;
        sum += d;
    }
    if (sum % 2 != 0) degrees[rng.uniform_below(n)] += 1;
    return degrees;
}

} // namespace rigidity
