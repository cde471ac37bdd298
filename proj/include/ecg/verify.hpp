#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "ecg/exact.hpp"
#include "ecg/graph.hpp"
#include "ecg/peel.hpp"

namespace ecg {

enum class TheoremId { TriangleFree, C4Free, ProperColored, General, ConjectureQ1 };

// Engaged fields depend on the theorem: a structure predicate (triangle-free,
// C4-free, or properly colored), the total-color-degree threshold against
// 2mn, and a vertex-count threshold (n >= 8m or n >= 3m^2 + 4m).
struct HypothesisBreakdown {
    std::optional<bool> structure;
    bool degree = false;
    std::optional<bool> size;

    bool all() const { return degree && structure.value_or(true) && size.value_or(true); }
};

enum class VerifyMethod { Exact, Greedy };

struct VerifyReport {
    TheoremId theorem{};
    std::size_t m = 0;
    HypothesisBreakdown hypotheses;
    bool hypotheses_met = false;
    std::size_t conclusion_required_size = 0;
    Outcome conclusion_met = Outcome::Unknown;
    std::optional<Matching> witness;  // present whenever conclusion_met == Yes
    VerifyMethod method = VerifyMethod::Exact;
    std::optional<std::size_t> greedy_k;    // set when a peel ran
    bool greedy_guarantee_violated = false; // greedy fell short under met hypotheses
    std::size_t max_found = 0;              // witness size, or exact best on fallback

    // hypotheses met but conclusion definitely false: a disproof or a bug
    bool violation() const { return hypotheses_met && conclusion_met == Outcome::No; }
};

inline HypothesisBreakdown check_hypotheses(const EdgeColoredGraph& g, std::size_t m,
                                            TheoremId theorem) {
    HypothesisBreakdown h;
    const std::size_t n = g.num_vertices();
    const std::size_t bar = 2 * m * n;
    switch (theorem) {
        case TheoremId::TriangleFree:
            h.structure = g.is_triangle_free();
            h.degree = g.total_color_degree() > bar;  // strict, concludes m+1
            break;
        case TheoremId::C4Free:
            h.structure = g.is_c4_free();
            h.degree = g.total_color_degree() >= bar;
            break;
        case TheoremId::ProperColored:
            h.structure = g.is_properly_colored();
            h.degree = g.total_color_degree() >= bar;
            h.size = n >= 8 * m;
            break;
        case TheoremId::General:
            h.degree = g.total_color_degree() >= bar;
            h.size = n >= 3 * m * m + 4 * m;
            break;
        case TheoremId::ConjectureQ1:
            h.degree = g.total_color_degree() >= bar;
            break;
    }
    return h;
}

// Checks hypotheses and conclusion. The triangle-free and C4-free statements
// and the open conjecture are decided by the exact solver; the proper and
// general statements run their peel first and fall back to the exact solver
// when the peel comes up short (recorded as a guarantee violation whenever
// the hypotheses held).
inline VerifyReport verify_theorem(const EdgeColoredGraph& g, std::size_t m, TheoremId theorem,
                                   std::optional<std::uint64_t> node_budget = std::nullopt) {
    VerifyReport report;
    report.theorem = theorem;
    report.m = m;
    report.hypotheses = check_hypotheses(g, m, theorem);
    report.hypotheses_met = report.hypotheses.all();
    report.conclusion_required_size = theorem == TheoremId::TriangleFree ? m + 1 : m;

    if (theorem == TheoremId::ProperColored || theorem == TheoremId::General) {
        report.method = VerifyMethod::Greedy;
        EdgeColoredGraph host =
            theorem == TheoremId::General ? reduce_to_star_forests(g) : g;
        std::optional<Matching> rebuilt;
        try {
            PeelTrace trace = theorem == TheoremId::General ? peel_general(host, m)
                                                            : peel_proper(host, m);
            report.greedy_k = trace.k();
            if (trace.k() >= m) rebuilt = reconstruct(host, trace);
        } catch (const TraceMismatchError&) {
            rebuilt.reset();  // possible for inputs that break the mode's precondition
        }
        if (rebuilt && rebuilt->size() >= report.conclusion_required_size) {
            report.max_found = rebuilt->size();
            report.witness = std::move(rebuilt);
            report.conclusion_met = Outcome::Yes;
            return report;
        }
        if (report.hypotheses_met) report.greedy_guarantee_violated = true;
        report.method = VerifyMethod::Exact;
    }

    SolveResult solved = max_rainbow_matching(g, node_budget);
    report.max_found = solved.size;
    if (solved.size >= report.conclusion_required_size) {
        report.conclusion_met = Outcome::Yes;
        report.witness = solved.witness;
    } else if (solved.budget_exhausted) {
        report.conclusion_met = Outcome::Unknown;
    } else {
        report.conclusion_met = Outcome::No;
    }
    return report;
}

inline std::string theorem_tag(TheoremId theorem) {
    switch (theorem) {
        case TheoremId::TriangleFree: return "tri";
        case TheoremId::C4Free: return "c4";
        case TheoremId::ProperColored: return "proper";
        case TheoremId::General: return "general";
        case TheoremId::ConjectureQ1: return "q1";
    }
    return "?";
}

// Machine-readable one-liner. k echoes the greedy step count when a peel ran
// and otherwise repeats the best size found; max is the witness size or the
// solver's best.
inline std::string verdict_line(const VerifyReport& r) {
    std::ostringstream out;
    out << "theorem=" << theorem_tag(r.theorem) << " m=" << r.m
        << " hyp=" << (r.hypotheses_met ? 1 : 0) << " concl=";
    switch (r.conclusion_met) {
        case Outcome::Yes: out << '1'; break;
        case Outcome::No: out << '0'; break;
        case Outcome::Unknown: out << '?'; break;
    }
    out << " k=" << (r.greedy_k ? *r.greedy_k : r.max_found) << " max=" << r.max_found;
    return out.str();
}

// Per-edge color-degree sums against the structural bounds: at most n when
// triangle-free, at most n+1 when C4-free. A violating edge disproves the
// predicate that was just computed, so it can only mean an implementation bug.
struct DegreeSumReport {
    bool triangle_free = false;
    bool c4_free = false;
    std::size_t bound = 0;  // engaged when either predicate holds
    std::size_t max_sum = 0;
    std::optional<Edge> max_edge;
    std::optional<Edge> violating_edge;

    bool violated() const { return violating_edge.has_value(); }
};

inline DegreeSumReport check_degree_sum_bounds(const EdgeColoredGraph& g) {
    DegreeSumReport r;
    r.triangle_free = g.is_triangle_free();
    r.c4_free = g.is_c4_free();
    const std::size_t n = g.num_vertices();
    if (r.triangle_free) r.bound = n;
    else if (r.c4_free) r.bound = n + 1;
    for (const Edge& e : g.edges()) {
        std::size_t sum = g.color_degree(e.u) + g.color_degree(e.v);
        if (sum > r.max_sum) {
            r.max_sum = sum;
            r.max_edge = e;
        }
        if ((r.triangle_free || r.c4_free) && sum > r.bound && !r.violating_edge)
            r.violating_edge = e;
    }
    return r;
}

}  // namespace ecg
