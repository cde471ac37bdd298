#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecg {

using VertexId = std::uint32_t;
using ColorId = std::uint32_t;

// Undirected edge with a color. Canonical form keeps u < v.
struct Edge {
    VertexId u{};
    VertexId v{};
    ColorId color{};

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId a, VertexId b, ColorId c) {
    if (a == b) throw std::invalid_argument("self-loop edge " + std::to_string(a));
    if (a > b) std::swap(a, b);
    return Edge{a, b, c};
}

// Vertex-disjoint edge set. Rainbow-ness is a separate predicate so that
// matchings with repeated colors stay representable.
class Matching {
public:
    Matching() = default;

    explicit Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
        std::set<VertexId> seen;
        for (const Edge& e : edges_) {
            if (!seen.insert(e.u).second || !seen.insert(e.v).second)
                throw std::invalid_argument("matching edges share a vertex");
        }
        std::sort(edges_.begin(), edges_.end());
    }

    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool uses_vertex(VertexId v) const {
        return std::any_of(edges_.begin(), edges_.end(),
                           [v](const Edge& e) { return e.u == v || e.v == v; });
    }

    bool uses_color(ColorId c) const {
        return std::any_of(edges_.begin(), edges_.end(),
                           [c](const Edge& e) { return e.color == c; });
    }

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<Edge> edges_;
};

// One color class of a host graph: its edges and how many connected
// components they span.
struct ColorClassView {
    ColorId color{};
    std::vector<Edge> edges;
    std::size_t component_count = 0;
};

// Simple undirected graph with one color per edge. Values are immutable;
// deletions build new graphs. Vertex ids stay stable under deletion: a
// deleted vertex is masked out of V but keeps its id, so later peel steps
// can refer to vertices of earlier peel states.
class EdgeColoredGraph {
public:
    EdgeColoredGraph() = default;

    EdgeColoredGraph(std::size_t n_vertices, std::vector<Edge> edges)
        : id_limit_(n_vertices), active_(n_vertices, true) {
        for (Edge& e : edges) e = make_edge(e.u, e.v, e.color);
        init_edges(std::move(edges));
    }

    // Number of vertices currently in V (isolated vertices count).
    std::size_t num_vertices() const { return active_count_; }

    // Size of the vertex id space; masked ids are < id_space() but not in V.
    std::size_t id_space() const { return id_limit_; }

    bool is_active(VertexId v) const { return v < id_limit_ && active_[v]; }
    bool is_masked() const { return active_count_ != id_limit_; }

    std::vector<VertexId> vertices() const {
        std::vector<VertexId> out;
        out.reserve(active_count_);
        for (VertexId v = 0; v < id_limit_; ++v)
            if (active_[v]) out.push_back(v);
        return out;
    }

    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t num_edges() const { return edges_.size(); }

    bool has_edge(VertexId a, VertexId b) const {
        if (a > b) std::swap(a, b);
        for (const auto& [w, c] : adjacency(a))
            if (w == b) return true;
        return false;
    }

    // Color of edge {a,b}; throws if the edge is absent.
    ColorId edge_color(VertexId a, VertexId b) const {
        if (a > b) std::swap(a, b);
        for (const auto& [w, c] : adjacency(a))
            if (w == b) return c;
        throw std::invalid_argument("no edge {" + std::to_string(a) + "," +
                                    std::to_string(b) + "}");
    }

    std::size_t degree(VertexId v) const {
        check_id(v);
        return adj_[v].size();
    }

    // Number of distinct colors on edges at v.
    std::size_t color_degree(VertexId v) const {
        check_id(v);
        return color_degree_[v];
    }

    // Number of edges of the given color at v (an edge count, not 0/1).
    std::size_t restricted_color_degree(VertexId v, ColorId color) const {
        check_id(v);
        std::size_t count = 0;
        for (const auto& [w, c] : adj_[v])
            if (c == color) ++count;
        return count;
    }

    // Sum of color degrees over all vertices.
    std::size_t total_color_degree() const { return total_color_degree_; }

    std::size_t min_color_degree() const {
        if (active_count_ == 0)
            throw std::invalid_argument("min_color_degree on empty vertex set");
        std::size_t best = SIZE_MAX;
        for (VertexId v = 0; v < id_limit_; ++v)
            if (active_[v]) best = std::min(best, color_degree_[v]);
        return best;
    }

    // Colors on edges with one endpoint in X and the other in Y.
    std::set<ColorId> colors_between(const std::vector<VertexId>& xs,
                                     const std::vector<VertexId>& ys) const {
        for (VertexId v : xs) check_id(v);
        for (VertexId v : ys) check_id(v);
        std::set<VertexId> x(xs.begin(), xs.end()), y(ys.begin(), ys.end());
        std::set<ColorId> out;
        for (const Edge& e : edges_) {
            if ((x.count(e.u) && y.count(e.v)) || (x.count(e.v) && y.count(e.u)))
                out.insert(e.color);
        }
        return out;
    }

    std::size_t class_size(ColorId color) const {
        auto it = classes_.find(color);
        return it == classes_.end() ? 0 : it->second.size();
    }

    // Distinct colors present, ascending.
    std::vector<ColorId> colors() const {
        std::vector<ColorId> out;
        out.reserve(classes_.size());
        for (const auto& [c, _] : classes_) out.push_back(c);
        return out;
    }

    std::size_t num_colors() const { return classes_.size(); }

    ColorClassView color_class(ColorId color) const {
        ColorClassView view;
        view.color = color;
        auto it = classes_.find(color);
        if (it != classes_.end()) view.edges = it->second;
        view.component_count = count_components(view.edges);
        return view;
    }

    // Number of connected components spanned by the color class (0 if absent).
    std::size_t star_count(ColorId color) const {
        auto it = classes_.find(color);
        if (it == classes_.end()) return 0;
        return count_components(it->second);
    }

    // True iff every component of the color class is a star: at most one
    // vertex of degree > 1, no cycles.
    bool is_star_forest(ColorId color) const {
        auto it = classes_.find(color);
        if (it == classes_.end()) return true;
        const std::vector<Edge>& es = it->second;
        std::map<VertexId, std::size_t> deg;
        for (const Edge& e : es) {
            ++deg[e.u];
            ++deg[e.v];
        }
        // Component bookkeeping via union-find over the class support.
        std::map<VertexId, VertexId> parent;
        for (const auto& [v, _] : deg) parent[v] = v;
        auto find = [&](VertexId v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const Edge& e : es) parent[find(e.u)] = find(e.v);
        std::map<VertexId, std::size_t> branch_vertices, comp_edges, comp_vertices;
        for (const auto& [v, d] : deg) {
            VertexId root = find(v);
            ++comp_vertices[root];
            if (d > 1) ++branch_vertices[root];
        }
        for (const Edge& e : es) ++comp_edges[find(e.u)];
        for (const auto& [root, nv] : comp_vertices) {
            if (branch_vertices[root] > 1) return false;
            if (comp_edges[root] != nv - 1) return false;  // cycle
        }
        return true;
    }

    bool all_classes_star_forests() const {
        for (const auto& [c, _] : classes_)
            if (!is_star_forest(c)) return false;
        return true;
    }

    bool is_triangle_free() const {
        for (const Edge& e : edges_)
            if (common_neighbor_count(e.u, e.v, 1) >= 1) return false;
        return true;
    }

    // No 4-cycle subgraph: no two vertices share two or more neighbors.
    bool is_c4_free() const {
        std::vector<VertexId> vs = vertices();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (common_neighbor_count(vs[i], vs[j], 2) >= 2) return false;
        return true;
    }

    bool is_properly_colored() const {
        for (VertexId v = 0; v < id_limit_; ++v)
            if (color_degree_[v] != adj_[v].size()) return false;
        return true;
    }

    EdgeColoredGraph delete_vertex(VertexId v) const {
        check_id(v);
        if (!active_[v])
            throw std::invalid_argument("vertex " + std::to_string(v) + " not in graph");
        std::vector<bool> active = active_;
        active[v] = false;
        std::vector<Edge> kept;
        kept.reserve(edges_.size());
        for (const Edge& e : edges_)
            if (e.u != v && e.v != v) kept.push_back(e);
        return EdgeColoredGraph(id_limit_, std::move(active), std::move(kept));
    }

    EdgeColoredGraph delete_color(ColorId color) const {
        std::vector<Edge> kept;
        kept.reserve(edges_.size());
        for (const Edge& e : edges_)
            if (e.color != color) kept.push_back(e);
        return EdgeColoredGraph(id_limit_, active_, std::move(kept));
    }

    EdgeColoredGraph delete_edge(VertexId a, VertexId b) const {
        check_id(a);
        check_id(b);
        if (a > b) std::swap(a, b);
        if (!has_edge(a, b))
            throw std::invalid_argument("no edge {" + std::to_string(a) + "," +
                                        std::to_string(b) + "} to delete");
        std::vector<Edge> kept;
        kept.reserve(edges_.size() - 1);
        for (const Edge& e : edges_)
            if (!(e.u == a && e.v == b)) kept.push_back(e);
        return EdgeColoredGraph(id_limit_, active_, std::move(kept));
    }

    EdgeColoredGraph induced_subgraph(const std::vector<VertexId>& keep) const {
        std::vector<bool> active(id_limit_, false);
        for (VertexId v : keep) {
            check_id(v);
            if (!active_[v])
                throw std::invalid_argument("vertex " + std::to_string(v) + " not in graph");
            active[v] = true;
        }
        std::vector<Edge> kept;
        for (const Edge& e : edges_)
            if (active[e.u] && active[e.v]) kept.push_back(e);
        return EdgeColoredGraph(id_limit_, std::move(active), std::move(kept));
    }

    const std::vector<std::pair<VertexId, ColorId>>& adjacency(VertexId v) const {
        check_id(v);
        return adj_[v];
    }

    friend bool operator==(const EdgeColoredGraph& a, const EdgeColoredGraph& b) {
        return a.id_limit_ == b.id_limit_ && a.active_ == b.active_ && a.edges_ == b.edges_;
    }

private:
    EdgeColoredGraph(std::size_t id_limit, std::vector<bool> active, std::vector<Edge> edges)
        : id_limit_(id_limit), active_(std::move(active)) {
        init_edges(std::move(edges));
    }

    void check_id(VertexId v) const {
        if (v >= id_limit_)
            throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
    }

    void init_edges(std::vector<Edge> edges) {
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            if (edges[i].u == edges[i + 1].u && edges[i].v == edges[i + 1].v)
                throw std::invalid_argument("parallel edge {" + std::to_string(edges[i].u) +
                                            "," + std::to_string(edges[i].v) + "}");
        }
        edges_ = std::move(edges);
        adj_.assign(id_limit_, {});
        for (const Edge& e : edges_) {
            check_id(e.u);
            check_id(e.v);
            if (!active_[e.u] || !active_[e.v])
                throw std::invalid_argument("edge endpoint not in graph");
            adj_[e.u].emplace_back(e.v, e.color);
            adj_[e.v].emplace_back(e.u, e.color);
            classes_[e.color].push_back(e);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
        color_degree_.assign(id_limit_, 0);
        total_color_degree_ = 0;
        for (VertexId v = 0; v < id_limit_; ++v) {
            std::set<ColorId> palette;
            for (const auto& [w, c] : adj_[v]) palette.insert(c);
            color_degree_[v] = palette.size();
            total_color_degree_ += palette.size();
        }
        active_count_ = static_cast<std::size_t>(
            std::count(active_.begin(), active_.end(), true));
    }

    // Counts common neighbors of a and b, stopping once `enough` are found.
    std::size_t common_neighbor_count(VertexId a, VertexId b, std::size_t enough) const {
        std::size_t count = 0;
        auto ia = adj_[a].begin(), ib = adj_[b].begin();
        while (ia != adj_[a].end() && ib != adj_[b].end()) {
            if (ia->first < ib->first) ++ia;
            else if (ib->first < ia->first) ++ib;
            else {
                if (++count >= enough) return count;
                ++ia;
                ++ib;
            }
        }
        return count;
    }

    static std::size_t count_components(const std::vector<Edge>& es) {
        std::map<VertexId, VertexId> parent;
        for (const Edge& e : es) {
            parent.emplace(e.u, e.u);
            parent.emplace(e.v, e.v);
        }
        auto find = [&](VertexId v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        std::size_t merges = 0;
        for (const Edge& e : es) {
            VertexId ru = find(e.u), rv = find(e.v);
            if (ru != rv) {
                parent[ru] = rv;
                ++merges;
            }
        }
        return parent.size() - merges;
    }

    std::size_t id_limit_ = 0;
    std::size_t active_count_ = 0;
    std::vector<bool> active_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<VertexId, ColorId>>> adj_;
    std::vector<std::size_t> color_degree_;
    std::size_t total_color_degree_ = 0;
    std::map<ColorId, std::vector<Edge>> classes_;
};

// True iff M's edges all exist in g with their stated colors, are pairwise
// vertex-disjoint, and carry pairwise distinct colors.
inline bool is_rainbow_matching(const EdgeColoredGraph& g, const Matching& m) {
    std::set<VertexId> vertices;
    std::set<ColorId> colors;
    for (const Edge& e : m.edges()) {
        if (!g.has_edge(e.u, e.v) || g.edge_color(e.u, e.v) != e.color)
            throw std::invalid_argument("matching edge absent from host graph");
        if (!vertices.insert(e.u).second || !vertices.insert(e.v).second) return false;
        if (!colors.insert(e.color).second) return false;
    }
    return true;
}

namespace detail {

// In the subgraph of one color class, an edge is removable when both of its
// endpoints keep another edge of that color, so neither endpoint's palette
// shrinks. A monochromatic component has such an edge iff it is not a star.
inline bool find_removable_edge(const std::vector<Edge>& class_edges, Edge& out) {
    std::map<VertexId, std::size_t> deg;
    for (const Edge& e : class_edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    std::map<VertexId, VertexId> parent;
    for (const auto& [v, _] : deg) parent[v] = v;
    auto find = [&](VertexId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Edge& e : class_edges) parent[find(e.u)] = find(e.v);

    // Components in ascending minimum-vertex order; map roots to that minimum.
    std::map<VertexId, VertexId> comp_min;
    for (const auto& [v, _] : deg) {
        VertexId root = find(v);
        auto it = comp_min.find(root);
        if (it == comp_min.end()) comp_min[root] = v;
        else it->second = std::min(it->second, v);
    }
    std::vector<std::pair<VertexId, VertexId>> order;  // (min vertex, root)
    for (const auto& [root, mn] : comp_min) order.emplace_back(mn, root);
    std::sort(order.begin(), order.end());

    for (const auto& [mn, root] : order) {
        bool found = false;
        Edge best{};
        for (const Edge& e : class_edges) {
            if (find(e.u) != root) continue;
            if (deg[e.u] >= 2 && deg[e.v] >= 2 && (!found || e < best)) {
                best = e;
                found = true;
            }
        }
        if (found) {
            out = best;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Deletes edges until every color class induces a star forest, never touching
// an edge whose removal would change a vertex palette. Total color degree is
// preserved exactly; the result is a subgraph of the input and a fixed point.
inline EdgeColoredGraph reduce_to_star_forests(const EdgeColoredGraph& g) {
    EdgeColoredGraph cur = g;
    for (;;) {
        bool deleted = false;
        for (ColorId color : cur.colors()) {
            Edge victim{};
            if (detail::find_removable_edge(cur.color_class(color).edges, victim)) {
                cur = cur.delete_edge(victim.u, victim.v);
                deleted = true;
                break;  // rescan from the smallest color
            }
        }
        if (!deleted) return cur;
    }
}

}  // namespace ecg
