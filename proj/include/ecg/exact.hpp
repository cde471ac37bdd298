#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ecg/graph.hpp"

namespace ecg {

struct SolveResult {
    std::size_t size = 0;
    Matching witness;
    std::uint64_t nodes_explored = 0;
    bool budget_exhausted = false;  // if false, size is the true maximum
};

enum class Outcome { No, Yes, Unknown };

struct Decision {
    Outcome outcome = Outcome::Unknown;
    std::optional<Matching> witness;  // present when outcome == Yes and m > 0
    std::uint64_t nodes_explored = 0;
};

namespace detail {

// Depth-first branch and bound over a fixed edge order: endpoint degree sum
// descending, ties lexicographic. State is the used-vertex and used-color
// sets. A node is pruned when even min(free vertices / 2, distinct unused
// colors on the remaining edges) additional edges cannot beat the incumbent.
// Include-first branching makes the first optimum found the witness.
class RainbowSolver {
public:
    RainbowSolver(const EdgeColoredGraph& g, std::optional<std::uint64_t> budget,
                  std::optional<std::size_t> target)
        : g_(g), target_(target) {
        budget_ = budget ? *budget
                         : (g.num_vertices() <= 20 ? UINT64_MAX
                                                   : std::uint64_t{10'000'000});
        order_ = g.edges();
        std::sort(order_.begin(), order_.end(), [&g](const Edge& a, const Edge& b) {
            std::size_t da = g.degree(a.u) + g.degree(a.v);
            std::size_t db = g.degree(b.u) + g.degree(b.v);
            if (da != db) return da > db;
            return a < b;
        });
        std::map<ColorId, std::size_t> dense;
        color_of_.reserve(order_.size());
        for (const Edge& e : order_)
            color_of_.push_back(dense.emplace(e.color, dense.size()).first->second);
        used_vertex_.assign(g.id_space(), 0);
        used_color_.assign(dense.size(), 0);
        stamp_.assign(dense.size(), 0);
    }

    void run() { dfs(0); }

    std::size_t best_size() const { return best_; }
    std::uint64_t nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }
    bool reached_target() const { return done_; }

    Matching witness() const {
        std::vector<Edge> picked;
        picked.reserve(best_set_.size());
        for (std::size_t i : best_set_) picked.push_back(order_[i]);
        return Matching(std::move(picked));
    }

private:
    void dfs(std::size_t idx) {
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (cur_.size() > best_) {
            best_ = cur_.size();
            best_set_ = cur_;
            if (target_ && best_ >= *target_) {
                done_ = true;
                return;
            }
        }
        if (idx == order_.size()) return;

        // In decision mode any completion short of the target is worthless,
        // so the incumbent to beat is target - 1 rather than best.
        std::size_t must_beat = target_ ? *target_ - 1 : best_;
        std::size_t vfree = (g_.num_vertices() - 2 * cur_.size()) / 2;
        if (cur_.size() + vfree <= must_beat) return;
        std::size_t need = must_beat + 1 - cur_.size();
        std::size_t avail = distinct_unused_colors(idx, need);
        if (cur_.size() + std::min(vfree, avail) <= must_beat) return;

        const Edge& e = order_[idx];
        std::size_t c = color_of_[idx];
        if (!used_vertex_[e.u] && !used_vertex_[e.v] && !used_color_[c]) {
            used_vertex_[e.u] = used_vertex_[e.v] = 1;
            used_color_[c] = 1;
            cur_.push_back(idx);
            dfs(idx + 1);
            cur_.pop_back();
            used_vertex_[e.u] = used_vertex_[e.v] = 0;
            used_color_[c] = 0;
            if (done_ || exhausted_) return;
        }
        dfs(idx + 1);
    }

    // Distinct colors not yet used on order_[idx..], counted up to `enough`.
    std::size_t distinct_unused_colors(std::size_t idx, std::size_t enough) {
        ++scan_epoch_;
        std::size_t count = 0;
        for (std::size_t i = idx; i < order_.size() && count < enough; ++i) {
            std::size_t c = color_of_[i];
            if (used_color_[c] || stamp_[c] == scan_epoch_) continue;
            stamp_[c] = scan_epoch_;
            ++count;
        }
        return count;
    }

    const EdgeColoredGraph& g_;
    std::optional<std::size_t> target_;
    std::uint64_t budget_ = UINT64_MAX;
    std::vector<Edge> order_;
    std::vector<std::size_t> color_of_;
    std::vector<char> used_vertex_;
    std::vector<char> used_color_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t scan_epoch_ = 0;
    std::vector<std::size_t> cur_;
    std::vector<std::size_t> best_set_;
    std::size_t best_ = 0;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    bool done_ = false;
};

}  // namespace detail

// Maximum rainbow matching by branch and bound. With the budget unexhausted
// the result is exact; otherwise size is a lower bound. Default budget:
// unlimited for graphs with at most 20 vertices, 10^7 nodes beyond that.
inline SolveResult max_rainbow_matching(const EdgeColoredGraph& g,
                                        std::optional<std::uint64_t> node_budget = std::nullopt) {
    detail::RainbowSolver solver(g, node_budget, std::nullopt);
    solver.run();
    SolveResult result;
    result.size = solver.best_size();
    result.witness = solver.witness();
    result.nodes_explored = solver.nodes();
    result.budget_exhausted = solver.exhausted();
    return result;
}

// Early-exit decision: Yes as soon as a size-m rainbow matching turns up, No
// only after the search space is exhausted, Unknown on budget exhaustion.
inline Decision has_rainbow_matching(const EdgeColoredGraph& g, std::size_t m,
                                     std::optional<std::uint64_t> node_budget = std::nullopt) {
    Decision decision;
    if (m == 0) {
        decision.outcome = Outcome::Yes;
        decision.witness = Matching{};
        return decision;
    }
    detail::RainbowSolver solver(g, node_budget, m);
    solver.run();
    decision.nodes_explored = solver.nodes();
    if (solver.reached_target()) {
        decision.outcome = Outcome::Yes;
        decision.witness = solver.witness();
    } else if (solver.exhausted()) {
        decision.outcome = Outcome::Unknown;
    } else {
        decision.outcome = Outcome::No;
    }
    return decision;
}

// Visits every rainbow matching of size <= max_size exactly once, in
// lexicographic edge-index order (each matching precedes its extensions,
// starting with the empty one). Exponential; meant for small edge counts.
template <typename Visitor>
void enumerate_rainbow_matchings(const EdgeColoredGraph& g, std::size_t max_size,
                                 Visitor&& visit) {
    const std::vector<Edge>& es = g.edges();
    std::vector<Edge> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        visit(Matching(cur));
        if (cur.size() >= max_size) return;
        for (std::size_t i = start; i < es.size(); ++i) {
            const Edge& e = es[i];
            bool compatible = true;
            for (const Edge& f : cur) {
                if (f.u == e.u || f.u == e.v || f.v == e.u || f.v == e.v ||
                    f.color == e.color) {
                    compatible = false;
                    break;
                }
            }
            if (!compatible) continue;
            cur.push_back(e);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

inline std::vector<Matching> all_rainbow_matchings(const EdgeColoredGraph& g,
                                                   std::size_t max_size) {
    std::vector<Matching> out;
    enumerate_rainbow_matchings(g, max_size, [&out](const Matching& m) { out.push_back(m); });
    return out;
}

}  // namespace ecg
