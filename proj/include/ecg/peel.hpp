#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecg/graph.hpp"

namespace ecg {

enum class PeelRule {
    DeleteVertex,          // d(v) >= 3(m-i)+1, delete v
    DeleteColorClass,      // |R| (proper) or s(R) (general) >= 2(m-i)+1, delete R
    DeleteVertexAndColor,  // general only: d^R(v) >= 3(m-i)+1, delete v and R
    DeleteEdgeAndColor,    // fallback: delete u, v, and the class of uv
};

enum class PeelMode { Proper, General };

struct PeelStep {
    PeelRule kind{};
    std::size_t index = 0;  // the graph before this step is G_index
    VertexId u = 0;         // DV/DVC: the vertex; DE: smaller endpoint
    VertexId v = 0;         // DE: larger endpoint
    ColorId color = 0;      // DC/DVC/DE: the color class
    std::size_t weight = 0; // total color degree drop caused by this step

    friend bool operator==(const PeelStep&, const PeelStep&) = default;
};

struct PeelTrace {
    PeelMode mode = PeelMode::Proper;
    std::size_t target_m = 0;
    std::vector<PeelStep> steps;

    std::size_t k() const { return steps.size(); }

    friend bool operator==(const PeelTrace&, const PeelTrace&) = default;
};

class TraceMismatchError : public std::runtime_error {
public:
    explicit TraceMismatchError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline EdgeColoredGraph apply_peel_step(const EdgeColoredGraph& g, const PeelStep& step) {
    try {
        switch (step.kind) {
            case PeelRule::DeleteVertex:
                return g.delete_vertex(step.u);
            case PeelRule::DeleteColorClass:
                return g.delete_color(step.color);
            case PeelRule::DeleteVertexAndColor:
                return g.delete_vertex(step.u).delete_color(step.color);
            case PeelRule::DeleteEdgeAndColor:
                if (!g.has_edge(step.u, step.v) || g.edge_color(step.u, step.v) != step.color)
                    throw TraceMismatchError("trace edge absent at step " +
                                             std::to_string(step.index));
                return g.delete_vertex(step.u).delete_vertex(step.v).delete_color(step.color);
        }
    } catch (const std::invalid_argument& e) {
        throw TraceMismatchError("trace does not replay at step " +
                                 std::to_string(step.index) + ": " + e.what());
    } catch (const std::out_of_range& e) {
        throw TraceMismatchError("trace does not replay at step " +
                                 std::to_string(step.index) + ": " + e.what());
    }
    throw TraceMismatchError("unknown step kind");
}

// Candidate search for one peel step against G_i. Rules are tried in order;
// within a rule, candidates are taken by smallest vertex id, then smallest
// color id, then lexicographically smallest edge.
inline std::optional<PeelStep> next_peel_step(const EdgeColoredGraph& g, std::size_t m,
                                              std::size_t i, PeelMode mode) {
    const std::size_t vertex_threshold = 3 * (m - i) + 1;
    const std::size_t class_threshold = 2 * (m - i) + 1;

    for (VertexId v : g.vertices())
        if (g.color_degree(v) >= vertex_threshold)
            return PeelStep{PeelRule::DeleteVertex, i, v, 0, 0, 0};

    for (ColorId c : g.colors()) {
        std::size_t measure = mode == PeelMode::Proper ? g.class_size(c) : g.star_count(c);
        if (measure >= class_threshold)
            return PeelStep{PeelRule::DeleteColorClass, i, 0, 0, c, 0};
    }

    if (mode == PeelMode::General) {
        for (VertexId v : g.vertices()) {
            std::map<ColorId, std::size_t> at_v;
            for (const auto& [w, c] : g.adjacency(v)) ++at_v[c];
            for (const auto& [c, count] : at_v)
                if (count >= vertex_threshold)
                    return PeelStep{PeelRule::DeleteVertexAndColor, i, v, 0, c, 0};
        }
    }

    if (g.num_edges() > 0) {
        const Edge& e = g.edges().front();
        return PeelStep{PeelRule::DeleteEdgeAndColor, i, e.u, e.v, e.color, 0};
    }
    return std::nullopt;
}

// The loop stops once i reaches m: the target is met, and only for i < m are
// the thresholds 3(m-i)+1 and 2(m-i)+1 positive, which every reconstruction
// case relies on. A run may also stop earlier with an edgeless graph.
inline PeelTrace run_peel(const EdgeColoredGraph& g, std::size_t m, PeelMode mode) {
    PeelTrace trace;
    trace.mode = mode;
    trace.target_m = m;
    EdgeColoredGraph cur = g;
    for (std::size_t i = 0; i < m; ++i) {
        std::optional<PeelStep> step = next_peel_step(cur, m, i, mode);
        if (!step) break;
        EdgeColoredGraph next = apply_peel_step(cur, *step);
        step->weight = cur.total_color_degree() - next.total_color_degree();
        trace.steps.push_back(*step);
        cur = std::move(next);
    }
    return trace;
}

// Applies steps [0, prefix) to g, yielding G_prefix.
inline EdgeColoredGraph replay_prefix(const EdgeColoredGraph& g, const PeelTrace& trace,
                                      std::size_t prefix) {
    EdgeColoredGraph cur = g;
    for (std::size_t i = 0; i < prefix; ++i) cur = apply_peel_step(cur, trace.steps[i]);
    return cur;
}

// Components of a color class, ordered by ascending minimum vertex; edges
// inside each component stay lexicographically sorted.
inline std::vector<std::vector<Edge>> class_components(const std::vector<Edge>& class_edges) {
    std::map<VertexId, VertexId> parent;
    for (const Edge& e : class_edges) {
        parent.emplace(e.u, e.u);
        parent.emplace(e.v, e.v);
    }
    auto find = [&](VertexId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Edge& e : class_edges) parent[find(e.u)] = find(e.v);
    std::map<VertexId, std::vector<Edge>> by_min;
    std::map<VertexId, VertexId> root_min;
    for (const auto& [v, _] : parent) {
        VertexId root = find(v);
        auto it = root_min.find(root);
        if (it == root_min.end()) root_min[root] = v;
        else it->second = std::min(it->second, v);
    }
    for (const Edge& e : class_edges) by_min[root_min[find(e.u)]].push_back(e);
    std::vector<std::vector<Edge>> out;
    out.reserve(by_min.size());
    for (auto& [mn, es] : by_min) out.push_back(std::move(es));
    return out;
}

}  // namespace detail

// Greedy peel for properly colored inputs: repeatedly delete a vertex of
// color degree >= 3(m-i)+1, else a color class of size >= 2(m-i)+1, else the
// smallest remaining edge together with its endpoints and class. The coloring
// is not required to be proper to run; it is required for the k >= m
// guarantee and for reconstruction of DeleteColorClass steps.
inline PeelTrace peel_proper(const EdgeColoredGraph& g, std::size_t m) {
    return detail::run_peel(g, m, PeelMode::Proper);
}

// Greedy peel for arbitrary colorings whose classes are star forests (apply
// reduce_to_star_forests first). Class deletion triggers on star count, and
// a vertex-plus-class rule handles vertices with many same-colored edges.
inline PeelTrace peel_general(const EdgeColoredGraph& g, std::size_t m) {
    if (!g.all_classes_star_forests())
        throw std::invalid_argument("peel_general needs every color class to be a star forest");
    return detail::run_peel(g, m, PeelMode::General);
}

// Rebuilds a rainbow matching of size k from a peel trace by reverse
// induction: walk the steps last to first, extending the matching with an
// edge the step's rule guarantees to exist. Throws TraceMismatchError when no
// qualifying edge exists, which means the trace does not belong to g (or the
// input broke a mode precondition, e.g. an improper coloring in proper mode).
inline Matching reconstruct(const EdgeColoredGraph& g, const PeelTrace& trace) {
    std::vector<Edge> matched;
    std::set<VertexId> used_vertices;
    std::set<ColorId> used_colors;

    auto take = [&](VertexId a, VertexId b, ColorId c) {
        matched.push_back(make_edge(a, b, c));
        used_vertices.insert(a);
        used_vertices.insert(b);
        used_colors.insert(c);
    };

    for (std::size_t pos = trace.steps.size(); pos-- > 0;) {
        const PeelStep& step = trace.steps[pos];
        if (step.index != pos)
            throw TraceMismatchError("step index " + std::to_string(step.index) +
                                     " at position " + std::to_string(pos));
        EdgeColoredGraph gi = detail::replay_prefix(g, trace, pos);

        switch (step.kind) {
            case PeelRule::DeleteVertex: {
                if (used_vertices.count(step.u))
                    throw TraceMismatchError("deleted vertex already matched");
                bool done = false;
                for (const auto& [w, c] : gi.adjacency(step.u)) {
                    if (used_vertices.count(w) || used_colors.count(c)) continue;
                    take(step.u, w, c);
                    done = true;
                    break;
                }
                if (!done)
                    throw TraceMismatchError("no extension edge at deleted vertex " +
                                             std::to_string(step.u));
                break;
            }
            case PeelRule::DeleteColorClass: {
                if (used_colors.count(step.color))
                    throw TraceMismatchError("deleted color already matched");
                bool done = false;
                if (trace.mode == PeelMode::Proper) {
                    for (const Edge& e : gi.color_class(step.color).edges) {
                        if (used_vertices.count(e.u) || used_vertices.count(e.v)) continue;
                        take(e.u, e.v, e.color);
                        done = true;
                        break;
                    }
                } else {
                    // lowest-minimum-vertex star that still has a free edge
                    for (const auto& star :
                         detail::class_components(gi.color_class(step.color).edges)) {
                        for (const Edge& e : star) {
                            if (used_vertices.count(e.u) || used_vertices.count(e.v)) continue;
                            take(e.u, e.v, e.color);
                            done = true;
                            break;
                        }
                        if (done) break;
                    }
                }
                if (!done)
                    throw TraceMismatchError("no free edge in deleted color class " +
                                             std::to_string(step.color));
                break;
            }
            case PeelRule::DeleteVertexAndColor: {
                if (used_vertices.count(step.u))
                    throw TraceMismatchError("deleted vertex already matched");
                if (used_colors.count(step.color))
                    throw TraceMismatchError("deleted color already matched");
                bool done = false;
                for (const auto& [w, c] : gi.adjacency(step.u)) {
                    if (c != step.color || used_vertices.count(w)) continue;
                    take(step.u, w, c);
                    done = true;
                    break;
                }
                if (!done)
                    throw TraceMismatchError("no free class edge at deleted vertex " +
                                             std::to_string(step.u));
                break;
            }
            case PeelRule::DeleteEdgeAndColor: {
                if (!gi.has_edge(step.u, step.v) ||
                    gi.edge_color(step.u, step.v) != step.color)
                    throw TraceMismatchError("trace edge absent at step " +
                                             std::to_string(step.index));
                if (used_vertices.count(step.u) || used_vertices.count(step.v) ||
                    used_colors.count(step.color))
                    throw TraceMismatchError("trace edge conflicts with matching");
                take(step.u, step.v, step.color);
                break;
            }
        }
    }
    return Matching(std::move(matched));
}

// Replays the trace forward and returns each step's total-color-degree drop.
// Throws TraceMismatchError if a step cannot apply or a recorded weight
// disagrees with the replay.
inline std::vector<std::size_t> step_weights(const EdgeColoredGraph& g, const PeelTrace& trace) {
    std::vector<std::size_t> weights;
    weights.reserve(trace.steps.size());
    EdgeColoredGraph cur = g;
    for (std::size_t pos = 0; pos < trace.steps.size(); ++pos) {
        const PeelStep& step = trace.steps[pos];
        if (step.index != pos)
            throw TraceMismatchError("step index " + std::to_string(step.index) +
                                     " at position " + std::to_string(pos));
        EdgeColoredGraph next = detail::apply_peel_step(cur, step);
        std::size_t drop = cur.total_color_degree() - next.total_color_degree();
        if (drop != step.weight)
            throw TraceMismatchError("step " + std::to_string(pos) + " weight " +
                                     std::to_string(step.weight) + " replays as " +
                                     std::to_string(drop));
        weights.push_back(drop);
        cur = std::move(next);
    }
    return weights;
}

// One step per line after a `peel <mode> m=<m> k=<k>` header:
//   i DV v w | i DC R w | i DVC v R w | i DE u v R w
inline std::string trace_to_text(const PeelTrace& trace) {
    std::ostringstream out;
    out << "peel " << (trace.mode == PeelMode::Proper ? "proper" : "general")
        << " m=" << trace.target_m << " k=" << trace.k() << "\n";
    for (const PeelStep& s : trace.steps) {
        out << s.index << ' ';
        switch (s.kind) {
            case PeelRule::DeleteVertex:
                out << "DV " << s.u;
                break;
            case PeelRule::DeleteColorClass:
                out << "DC " << s.color;
                break;
            case PeelRule::DeleteVertexAndColor:
                out << "DVC " << s.u << ' ' << s.color;
                break;
            case PeelRule::DeleteEdgeAndColor:
                out << "DE " << s.u << ' ' << s.v << ' ' << s.color;
                break;
        }
        out << ' ' << s.weight << "\n";
    }
    return out.str();
}

namespace detail {

inline std::uint64_t parse_field(const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0)
        throw std::invalid_argument("trace header: expected " + key + "=<count>, got '" +
                                    token + "'");
    const std::string digits = token.substr(key.size() + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("trace header: bad " + key + " value '" + digits + "'");
    return std::stoull(digits);
}

}  // namespace detail

inline PeelTrace trace_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty trace");
    std::istringstream header(line);
    std::string tag, mode_word, m_token, k_token, extra;
    if (!(header >> tag >> mode_word >> m_token >> k_token) || tag != "peel" ||
        (header >> extra))
        throw std::invalid_argument("bad trace header '" + line + "'");

    PeelTrace trace;
    if (mode_word == "proper") trace.mode = PeelMode::Proper;
    else if (mode_word == "general") trace.mode = PeelMode::General;
    else throw std::invalid_argument("unknown peel mode '" + mode_word + "'");
    trace.target_m = detail::parse_field(m_token, "m");
    const std::uint64_t expected_k = detail::parse_field(k_token, "k");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        PeelStep step;
        std::string kind;
        if (!(ls >> step.index >> kind))
            throw std::invalid_argument("bad trace step '" + line + "'");
        bool ok = false;
        if (kind == "DV") {
            ok = static_cast<bool>(ls >> step.u >> step.weight);
            step.kind = PeelRule::DeleteVertex;
        } else if (kind == "DC") {
            ok = static_cast<bool>(ls >> step.color >> step.weight);
            step.kind = PeelRule::DeleteColorClass;
        } else if (kind == "DVC") {
            ok = static_cast<bool>(ls >> step.u >> step.color >> step.weight);
            step.kind = PeelRule::DeleteVertexAndColor;
        } else if (kind == "DE") {
            ok = static_cast<bool>(ls >> step.u >> step.v >> step.color >> step.weight);
            step.kind = PeelRule::DeleteEdgeAndColor;
        } else {
            throw std::invalid_argument("unknown step kind '" + kind + "'");
        }
        if (!ok || (ls >> extra))
            throw std::invalid_argument("bad trace step '" + line + "'");
        trace.steps.push_back(step);
    }
    if (trace.k() != expected_k)
        throw std::invalid_argument("trace header k=" + std::to_string(expected_k) +
                                    " but " + std::to_string(trace.k()) + " steps follow");
    return trace;
}

}  // namespace ecg
