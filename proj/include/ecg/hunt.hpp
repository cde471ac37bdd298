#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ecg/exact.hpp"
#include "ecg/generate.hpp"
#include "ecg/graph.hpp"
#include "ecg/io.hpp"

namespace ecg {

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t x) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << x;
    return out.str();
}

enum class HuntMode { Exhaustive, Random };

// Hypothesis met, conclusion exactly tight: max rainbow matching equals the
// required size with slack = total_color_degree - 2mn to spare.
struct NearMiss {
    EdgeColoredGraph graph;
    std::size_t m;
    std::size_t slack;
};

struct Counterexample {
    EdgeColoredGraph graph;
    std::size_t m;
    std::size_t required_size;  // m, or m+1 under the plus-one variant
    std::size_t max_size;       // re-verified exact maximum, < required_size
};

struct HuntReport {
    HuntMode mode = HuntMode::Exhaustive;
    bool plus_one = false;
    // exhaustive parameters
    std::size_t n_max = 0;
    std::size_t color_max = 0;
    // random parameters
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t n_lo = 0, n_hi = 0, m_lo = 0, m_hi = 0;

    std::uint64_t instances_examined = 0;
    std::uint64_t hypothesis_checks = 0;
    std::uint64_t unknown_results = 0;
    std::optional<Counterexample> counterexample;
    std::vector<NearMiss> near_misses;  // at most 10, tightest slack first
    double elapsed_seconds = 0.0;       // informational; not part of the report text
};

namespace detail {

// Streaming accumulator. Near misses and counterexamples carry the canonical
// instance text as a tie-break key so that merging partial results from any
// work partition yields identical output.
struct HuntAccumulator {
    static constexpr std::size_t kNearKeep = 10;

    struct RankedNear {
        std::size_t slack;
        std::string key;
        std::size_t m;
        EdgeColoredGraph graph;
    };
    struct RankedCex {
        std::string key;
        std::size_t m;
        std::size_t required;
        std::size_t max_size;
        EdgeColoredGraph graph;
    };

    std::uint64_t instances = 0;
    std::uint64_t checks = 0;
    std::uint64_t unknown = 0;
    std::vector<RankedNear> near;
    std::optional<RankedCex> cex;

    void shrink() {
        std::sort(near.begin(), near.end(), [](const RankedNear& a, const RankedNear& b) {
            return std::tie(a.slack, a.key, a.m) < std::tie(b.slack, b.key, b.m);
        });
        if (near.size() > kNearKeep) near.resize(kNearKeep);
    }

    void add_near(const EdgeColoredGraph& g, std::size_t m, std::size_t slack) {
        near.push_back(RankedNear{slack, emit_instance(g), m, g});
        if (near.size() > 4 * kNearKeep) shrink();
    }

    void add_cex(const EdgeColoredGraph& g, std::size_t m, std::size_t required,
                 std::size_t max_size) {
        RankedCex candidate{emit_instance(g), m, required, max_size, g};
        if (!cex || std::tie(candidate.key, candidate.m) < std::tie(cex->key, cex->m))
            cex.emplace(std::move(candidate));
    }

    void merge(HuntAccumulator&& other) {
        instances += other.instances;
        checks += other.checks;
        unknown += other.unknown;
        for (auto& entry : other.near) near.push_back(std::move(entry));
        if (near.size() > 4 * kNearKeep) shrink();
        if (other.cex &&
            (!cex || std::tie(other.cex->key, other.cex->m) < std::tie(cex->key, cex->m)))
            cex = std::move(other.cex);
    }
};

// Two independent unbounded solves must agree that the conclusion fails while
// the degree hypothesis holds; anything else is an internal inconsistency.
inline std::size_t verify_counterexample(const EdgeColoredGraph& g, std::size_t m,
                                         std::size_t required) {
    const std::size_t n = g.num_vertices();
    std::size_t max_size = 0;
    for (int round = 0; round < 2; ++round) {
        SolveResult r = max_rainbow_matching(g, std::numeric_limits<std::uint64_t>::max());
        if (r.budget_exhausted || r.size >= required || g.total_color_degree() < 2 * m * n)
            throw std::logic_error("counterexample failed re-verification");
        max_size = r.size;
    }
    return max_size;
}

inline void check_instance(const EdgeColoredGraph& g, std::size_t m, bool plus_one,
                           std::optional<std::uint64_t> budget, HuntAccumulator& acc) {
    const std::size_t n = g.num_vertices();
    if (g.total_color_degree() < 2 * m * n) return;  // hypothesis unmet, nothing to test
    ++acc.checks;
    const std::size_t required = m + (plus_one ? 1 : 0);
    if (n / 2 < required || g.num_colors() < required) {
        // conclusion impossible outright, so the met hypothesis is already refuted
        acc.add_cex(g, m, required, verify_counterexample(g, m, required));
        return;
    }
    Decision reach = has_rainbow_matching(g, required, budget);
    if (reach.outcome == Outcome::Unknown) {
        ++acc.unknown;
        return;
    }
    if (reach.outcome == Outcome::No) {
        acc.add_cex(g, m, required, verify_counterexample(g, m, required));
        return;
    }
    Decision beyond = has_rainbow_matching(g, required + 1, budget);
    if (beyond.outcome == Outcome::Unknown) {
        ++acc.unknown;
        return;
    }
    if (beyond.outcome == Outcome::No)
        acc.add_near(g, m, g.total_color_degree() - 2 * m * n);
}

// Restricted growth strings over the edge list: colors[0] = 0 and each next
// color is at most one past the largest used so far, capped at color_max
// distinct values. One canonical representative per color partition.
template <typename Fn>
inline void for_each_rgs(std::size_t length, std::size_t color_max, Fn&& fn) {
    if (color_max == 0) throw std::invalid_argument("color_max must be positive");
    std::vector<ColorId> colors(length, 0);
    if (length == 0) {
        fn(colors);
        return;
    }
    auto rec = [&](auto&& self, std::size_t t, std::size_t used) -> void {
        if (t == length) {
            fn(colors);
            return;
        }
        const std::size_t bound = std::min(used, color_max - 1);
        for (std::size_t v = 0; v <= bound; ++v) {
            colors[t] = static_cast<ColorId>(v);
            self(self, t + 1, used + (v == used ? 1 : 0));
        }
    };
    rec(rec, 0, 0);
}

struct GraphSpace {
    struct Block {
        std::size_t n;
        std::uint64_t masks;
        std::uint64_t offset;
    };
    std::vector<Block> blocks;
    std::uint64_t total = 0;
};

inline GraphSpace graph_space(std::size_t n_max) {
    GraphSpace space;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t pairs = n * (n - 1) / 2;
        space.blocks.push_back({n, std::uint64_t{1} << pairs, space.total});
        space.total += std::uint64_t{1} << pairs;
    }
    return space;
}

inline void hunt_colored_graphs(std::size_t n,
                                const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                std::uint64_t mask, std::size_t color_max, bool plus_one,
                                HuntAccumulator& acc) {
    std::vector<std::pair<VertexId, VertexId>> chosen;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1U) chosen.push_back(pairs[i]);
    for_each_rgs(chosen.size(), color_max, [&](const std::vector<ColorId>& colors) {
        std::vector<Edge> edges(chosen.size());
        for (std::size_t i = 0; i < chosen.size(); ++i)
            edges[i] = Edge{chosen[i].first, chosen[i].second, colors[i]};
        EdgeColoredGraph g(n, edges);
        ++acc.instances;
        const std::size_t dhat = g.total_color_degree();
        for (std::size_t m = 1; m <= n / 2; ++m) {
            if (dhat < 2 * m * n) break;  // thresholds only grow with m
            check_instance(g, m, plus_one, std::nullopt, acc);
        }
    });
}

inline HuntReport finish(HuntMode mode, HuntAccumulator&& acc) {
    HuntReport report;
    report.mode = mode;
    report.instances_examined = acc.instances;
    report.hypothesis_checks = acc.checks;
    report.unknown_results = acc.unknown;
    acc.shrink();
    report.near_misses.reserve(acc.near.size());
    for (auto& entry : acc.near)
        report.near_misses.push_back(NearMiss{std::move(entry.graph), entry.m, entry.slack});
    if (acc.cex)
        report.counterexample = Counterexample{std::move(acc.cex->graph), acc.cex->m,
                                               acc.cex->required, acc.cex->max_size};
    return report;
}

template <typename RangeFn>
inline HuntAccumulator run_partitioned(std::uint64_t total, std::size_t jobs, RangeFn&& body) {
    if (jobs == 0) jobs = 1;
    if (total > 0) jobs = static_cast<std::size_t>(std::min<std::uint64_t>(jobs, total));
    std::vector<HuntAccumulator> parts(jobs);
    if (jobs == 1) {
        body(0, total, parts[0]);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (std::size_t w = 0; w < jobs; ++w) {
            threads.emplace_back([&, w] {
                try {
                    body(total * w / jobs, total * (w + 1) / jobs, parts[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    HuntAccumulator merged;
    for (auto& p : parts) merged.merge(std::move(p));
    return merged;
}

}  // namespace detail

// Every labeled simple graph on 1..n_max vertices, every canonical coloring
// with at most color_max distinct colors, every m in [1, n/2]. Work is split
// across jobs by graph index range; results are independent of the split.
inline HuntReport hunt_exhaustive(std::size_t n_max, std::size_t color_max, std::size_t jobs = 1,
                                  bool plus_one = false) {
    if (color_max == 0) throw std::invalid_argument("color_max must be positive");
    if (n_max > 11) throw std::invalid_argument("n_max > 11 is out of reach, refusing");
    const auto start = std::chrono::steady_clock::now();
    const detail::GraphSpace space = detail::graph_space(n_max);

    detail::HuntAccumulator merged = detail::run_partitioned(
        space.total, jobs,
        [&](std::uint64_t lo, std::uint64_t hi, detail::HuntAccumulator& acc) {
            for (const auto& block : space.blocks) {
                const std::uint64_t blo = std::max(lo, block.offset);
                const std::uint64_t bhi = std::min(hi, block.offset + block.masks);
                if (blo >= bhi) continue;
                const auto pairs = detail::all_pairs(block.n);
                for (std::uint64_t idx = blo; idx < bhi; ++idx)
                    detail::hunt_colored_graphs(block.n, pairs, idx - block.offset, color_max,
                                                plus_one, acc);
            }
        });

    HuntReport report = detail::finish(HuntMode::Exhaustive, std::move(merged));
    report.plus_one = plus_one;
    report.n_max = n_max;
    report.color_max = color_max;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

struct RandomHuntConfig {
    std::size_t n_min = 6;
    std::size_t n_max = 12;
    std::size_t m_min = 1;
    std::size_t m_max = 3;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> node_budget;
    bool plus_one = false;
};

namespace detail {

// Each trial is a pure function of (seed, trial index), so any partition of
// the trial range produces the same instances.
inline void run_trial(const RandomHuntConfig& cfg, std::uint64_t t, HuntAccumulator& acc) {
    SplitMix64 rng(SplitMix64::scramble(cfg.seed + 0x9E3779B97F4A7C15ULL * (t + 1)));
    const std::size_t n = cfg.n_min + rng.next_below(cfg.n_max - cfg.n_min + 1);
    std::size_t m = cfg.m_min + rng.next_below(cfg.m_max - cfg.m_min + 1);
    if (m > n / 2) m = n / 2;
    GenConfig gc;
    gc.n = n;
    gc.seed = rng.next_u64();
    gc.m = m;
    std::optional<EdgeColoredGraph> g;
    if (t % 2 == 0) {
        gc.kind = GenKind::NearThreshold;
        gc.edge_probability = 0.6 + 0.35 * rng.next_double();
        g = gen_near_threshold(gc);
        if (!g) return;  // degree window unreachable at this density; skip the trial
    } else {
        gc.kind = GenKind::Random;
        gc.edge_probability = 0.4 + 0.5 * rng.next_double();
        gc.color_count = 1 + rng.next_below(3 * m + 2);
        g = gen_random(gc);
    }
    ++acc.instances;
    check_instance(*g, m, cfg.plus_one, cfg.node_budget, acc);
}

}  // namespace detail

inline HuntReport hunt_random(const RandomHuntConfig& cfg, std::uint64_t trials,
                              std::size_t jobs = 1) {
    if (cfg.n_min < 2 || cfg.n_min > cfg.n_max)
        throw std::invalid_argument("need 2 <= n_min <= n_max");
    if (cfg.m_min < 1 || cfg.m_min > cfg.m_max)
        throw std::invalid_argument("need 1 <= m_min <= m_max");
    const auto start = std::chrono::steady_clock::now();

    detail::HuntAccumulator merged = detail::run_partitioned(
        trials, jobs, [&](std::uint64_t lo, std::uint64_t hi, detail::HuntAccumulator& acc) {
            for (std::uint64_t t = lo; t < hi; ++t) detail::run_trial(cfg, t, acc);
        });

    HuntReport report = detail::finish(HuntMode::Random, std::move(merged));
    report.plus_one = cfg.plus_one;
    report.trials = trials;
    report.seed = cfg.seed;
    report.n_lo = cfg.n_min;
    report.n_hi = cfg.n_max;
    report.m_lo = cfg.m_min;
    report.m_hi = cfg.m_max;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// Canonical text; elapsed time is deliberately omitted so repeated runs and
// different job counts compare byte for byte.
inline std::string hunt_report_text(const HuntReport& r) {
    std::ostringstream out;
    if (r.mode == HuntMode::Exhaustive) {
        out << "hunt mode=exhaustive n_max=" << r.n_max << " color_max=" << r.color_max;
    } else {
        out << "hunt mode=random trials=" << r.trials << " seed=" << r.seed << " n=[" << r.n_lo
            << "," << r.n_hi << "] m=[" << r.m_lo << "," << r.m_hi << "]";
    }
    if (r.plus_one) out << " plus_one=1";
    out << "\n";
    out << "instances=" << r.instances_examined << " checks=" << r.hypothesis_checks
        << " unknown=" << r.unknown_results << "\n";
    if (r.counterexample) {
        const Counterexample& c = *r.counterexample;
        out << "counterexample m=" << c.m << " required=" << c.required_size
            << " max=" << c.max_size << " n=" << c.graph.num_vertices()
            << " e=" << c.graph.num_edges() << " hash=" << hex64(fnv1a64(emit_instance(c.graph)))
            << "\n";
    } else {
        out << "counterexample=none\n";
    }
    out << "near_misses=" << r.near_misses.size() << "\n";
    for (std::size_t i = 0; i < r.near_misses.size(); ++i) {
        const NearMiss& nm = r.near_misses[i];
        out << "near " << i + 1 << " m=" << nm.m << " slack=" << nm.slack
            << " n=" << nm.graph.num_vertices() << " e=" << nm.graph.num_edges()
            << " hash=" << hex64(fnv1a64(emit_instance(nm.graph))) << "\n";
    }
    return out.str();
}

// cex_<hash>.ecg for the counterexample, near_<rank>.ecg for each near miss.
// Returns the paths written.
inline std::vector<std::string> write_hunt_artifacts(const HuntReport& report,
                                                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    auto emit_file = [&](const fs::path& path, const std::string& comment,
                         const EdgeColoredGraph& g) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << comment << emit_instance(g);
        written.push_back(path.string());
    };
    if (report.counterexample) {
        const Counterexample& c = *report.counterexample;
        const std::string text = emit_instance(c.graph);
        std::ostringstream comment;
        comment << "# counterexample m=" << c.m << " required=" << c.required_size
                << " max=" << c.max_size << "\n";
        emit_file(fs::path(out_dir) / ("cex_" + hex64(fnv1a64(text)) + ".ecg"), comment.str(),
                  c.graph);
    }
    for (std::size_t i = 0; i < report.near_misses.size(); ++i) {
        const NearMiss& nm = report.near_misses[i];
        std::ostringstream comment;
        comment << "# near miss m=" << nm.m << " slack=" << nm.slack << "\n";
        emit_file(fs::path(out_dir) / ("near_" + std::to_string(i + 1) + ".ecg"), comment.str(),
                  nm.graph);
    }
    return written;
}

}  // namespace ecg
