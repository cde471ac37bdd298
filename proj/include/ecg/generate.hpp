#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ecg/graph.hpp"

namespace ecg {

// Portable 64-bit PRNG (splitmix64). State advances by the golden-gamma
// constant 0x9E3779B97F4A7C15; each output is the finalizer
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31;
// Fixed here so corpora reproduce bit-identically across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t scramble(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return scramble(state_);
    }

    // Uniform in [0, bound). Modulo reduction: the tiny bias is irrelevant
    // here, identical output everywhere is not.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below(0)");
        return next_u64() % bound;
    }

    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool() { return next_u64() & 1; }

private:
    std::uint64_t state_;
};

enum class GenKind { Random, TriangleFree, C4Free, Proper, NearThreshold };

struct GenConfig {
    std::size_t n = 0;
    double edge_probability = 0.5;
    std::size_t color_count = 1;
    std::uint64_t seed = 0;
    GenKind kind = GenKind::Random;
    std::optional<std::size_t> m;  // NearThreshold target
};

namespace detail {

inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0,1]");
}

inline std::vector<std::pair<VertexId, VertexId>> all_pairs(std::size_t n) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (VertexId u = 0; u + 1 < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    return pairs;
}

}  // namespace detail

// Each vertex pair independently with probability p, colors uniform over
// [0, color_count).
inline EdgeColoredGraph gen_random(const GenConfig& config) {
    detail::check_probability(config.edge_probability);
    if (config.color_count == 0) throw std::invalid_argument("color_count must be positive");
    SplitMix64 rng(config.seed);
    std::vector<Edge> edges;
    for (const auto& [u, v] : detail::all_pairs(config.n)) {
        if (rng.next_double() < config.edge_probability)
            edges.push_back(Edge{u, v, static_cast<ColorId>(rng.next_below(config.color_count))});
    }
    return EdgeColoredGraph(config.n, std::move(edges));
}

// Random bipartition, then random cross edges. Bipartite, hence triangle-free.
inline EdgeColoredGraph gen_triangle_free(const GenConfig& config) {
    detail::check_probability(config.edge_probability);
    if (config.color_count == 0) throw std::invalid_argument("color_count must be positive");
    SplitMix64 rng(config.seed);
    std::vector<bool> side(config.n);
    for (std::size_t v = 0; v < config.n; ++v) side[v] = rng.next_bool();
    std::vector<Edge> edges;
    for (const auto& [u, v] : detail::all_pairs(config.n)) {
        if (side[u] == side[v]) continue;
        if (rng.next_double() < config.edge_probability)
            edges.push_back(Edge{u, v, static_cast<ColorId>(rng.next_below(config.color_count))});
    }
    return EdgeColoredGraph(config.n, std::move(edges));
}

// Candidate pairs in seeded shuffled order; an edge is accepted only if no
// two vertices end up with two common neighbors.
inline EdgeColoredGraph gen_c4_free(const GenConfig& config) {
    detail::check_probability(config.edge_probability);
    if (config.color_count == 0) throw std::invalid_argument("color_count must be positive");
    SplitMix64 rng(config.seed);
    auto pairs = detail::all_pairs(config.n);
    for (std::size_t i = pairs.size(); i > 1; --i)
        std::swap(pairs[i - 1], pairs[rng.next_below(i)]);

    const std::size_t n = config.n;
    std::vector<std::vector<VertexId>> nbrs(n);
    std::vector<std::uint8_t> common(n * n, 0);
    std::vector<Edge> edges;
    for (const auto& [u, v] : pairs) {
        if (rng.next_double() >= config.edge_probability) continue;
        bool ok = true;
        for (VertexId w : nbrs[u])
            if (w != v && common[v * n + w] >= 1) { ok = false; break; }
        if (ok)
            for (VertexId w : nbrs[v])
                if (w != u && common[u * n + w] >= 1) { ok = false; break; }
        if (!ok) continue;
        for (VertexId w : nbrs[u])
            if (w != v) { ++common[v * n + w]; ++common[w * n + v]; }
        for (VertexId w : nbrs[v])
            if (w != u) { ++common[u * n + w]; ++common[w * n + u]; }
        nbrs[u].push_back(v);
        nbrs[v].push_back(u);
        edges.push_back(Edge{u, v, static_cast<ColorId>(rng.next_below(config.color_count))});
    }
    return EdgeColoredGraph(config.n, std::move(edges));
}

// Recolors g greedily in lexicographic edge order: each edge takes the
// smallest color absent at both endpoints. Proper, with at most 2*maxdeg - 1
// colors.
inline EdgeColoredGraph greedy_proper_recoloring(const EdgeColoredGraph& g) {
    std::map<VertexId, std::set<ColorId>> used;
    std::vector<Edge> recolored;
    recolored.reserve(g.num_edges());
    for (const Edge& e : g.edges()) {
        ColorId c = 0;
        while (used[e.u].count(c) || used[e.v].count(c)) ++c;
        used[e.u].insert(c);
        used[e.v].insert(c);
        recolored.push_back(Edge{e.u, e.v, c});
    }
    return EdgeColoredGraph(g.id_space(), std::move(recolored));
}

// Random graph, greedily proper-colored. config.color_count is ignored; the
// greedy coloring decides how many colors appear.
inline EdgeColoredGraph gen_proper(const GenConfig& config) {
    return greedy_proper_recoloring(gen_random(config));
}

// Seeded support graph, rainbow-colored, then color classes merged two at a
// time until the total color degree falls into [2mn, 2mn + 2n). A merge
// recolors one class to the other's color and never increases the total
// color degree; one merge drops it by at most n, so from above the window the
// descent cannot skip it. The only failure mode is a support graph too sparse
// to reach 2mn in the first place.
inline std::optional<EdgeColoredGraph> gen_near_threshold(const GenConfig& config) {
    detail::check_probability(config.edge_probability);
    if (!config.m) throw std::invalid_argument("near-threshold generation needs m");
    const std::size_t m = *config.m;
    const std::size_t n = config.n;
    SplitMix64 rng(config.seed);
    std::vector<Edge> edges;
    ColorId next_color = 0;
    for (const auto& [u, v] : detail::all_pairs(n)) {
        if (rng.next_double() < config.edge_probability)
            edges.push_back(Edge{u, v, next_color++});
    }
    const std::size_t lo = 2 * m * n;
    const std::size_t hi = lo + 2 * n;
    EdgeColoredGraph g(n, std::move(edges));
    if (g.total_color_degree() < lo) return std::nullopt;
    while (g.total_color_degree() >= hi) {
        std::vector<std::pair<std::size_t, ColorId>> by_size;
        for (ColorId c : g.colors()) by_size.emplace_back(g.class_size(c), c);
        if (by_size.size() < 2) break;
        std::sort(by_size.begin(), by_size.end());
        ColorId keep = by_size[0].second;
        ColorId absorb = by_size[1].second;
        std::vector<Edge> merged;
        merged.reserve(g.num_edges());
        for (const Edge& e : g.edges())
            merged.push_back(Edge{e.u, e.v, e.color == absorb ? keep : e.color});
        g = EdgeColoredGraph(n, std::move(merged));
    }
    if (g.total_color_degree() < lo || g.total_color_degree() >= hi) return std::nullopt;
    return g;
}

}  // namespace ecg
