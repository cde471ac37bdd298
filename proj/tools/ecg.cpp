#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "ecg/exact.hpp"
#include "ecg/generate.hpp"
#include "ecg/graph.hpp"
#include "ecg/hunt.hpp"
#include "ecg/io.hpp"
#include "ecg/peel.hpp"
#include "ecg/verify.hpp"

// Exit codes: 0 success / statement holds, 1 verification failure or
// counterexample or failed run, 2 bad input or usage, 3 budget exhausted.
namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kExhausted = 3;

bool color_enabled() {
    const char* v = std::getenv("ECG_COLOR");
    return v && std::string_view(v) == "1";
}

std::string paint(const std::string& text, const char* code) {
    if (!color_enabled()) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string green(const std::string& s) { return paint(s, "32"); }
std::string red(const std::string& s) { return paint(s, "31"); }
std::string yellow(const std::string& s) { return paint(s, "33"); }

std::string tri_state(const std::optional<bool>& b) {
    if (!b) return "-";
    return *b ? "1" : "0";
}

void print_matching(const ecg::Matching& m) {
    for (const ecg::Edge& e : m.edges())
        std::cout << "edge " << e.u << ' ' << e.v << ' ' << e.color << '\n';
}

struct SolveArgs {
    std::string file;
    std::uint64_t budget = 0;
    bool has_budget = false;
};

int run_solve(const SolveArgs& args) {
    auto g = ecg::load_instance(args.file);
    std::optional<std::uint64_t> budget;
    if (args.has_budget) budget = args.budget;
    ecg::SolveResult result = ecg::max_rainbow_matching(g, budget);
    std::cout << "size=" << result.size << '\n';
    print_matching(result.witness);
    std::cout << "nodes=" << result.nodes_explored << '\n';
    if (result.budget_exhausted) {
        std::cout << "budget_exhausted=1\n";
        std::cerr << yellow("budget exhausted; size is only a lower bound") << '\n';
        return kExhausted;
    }
    return kOk;
}

struct GreedyArgs {
    std::string file;
    std::string mode;
    std::size_t m = 0;
    std::string trace_path;
};

int run_greedy(const GreedyArgs& args) {
    auto g = ecg::load_instance(args.file);
    const bool general = args.mode == "general";
    ecg::EdgeColoredGraph host = g;
    if (general) {
        host = ecg::reduce_to_star_forests(g);
        if (host.num_edges() != g.num_edges())
            std::cerr << "note: reduced color classes to star forests (" << g.num_edges()
                      << " -> " << host.num_edges() << " edges)\n";
    }
    ecg::PeelTrace trace =
        general ? ecg::peel_general(host, args.m) : ecg::peel_proper(host, args.m);
    if (!args.trace_path.empty())
        ecg::write_text_file(args.trace_path, ecg::trace_to_text(trace));
    std::cout << "k=" << trace.k() << '\n';

    auto hyp = ecg::check_hypotheses(
        g, args.m, general ? ecg::TheoremId::General : ecg::TheoremId::ProperColored);
    try {
        ecg::Matching matching = ecg::reconstruct(host, trace);
        print_matching(matching);
        std::cout << "hyp met=" << (hyp.all() ? 1 : 0) << " structure=" << tri_state(hyp.structure)
                  << " degree=" << (hyp.degree ? 1 : 0) << " size=" << tri_state(hyp.size)
                  << '\n';
    } catch (const ecg::TraceMismatchError& e) {
        std::cerr << red(std::string("reconstruction failed: ") + e.what()) << '\n';
        return kFailed;
    }
    return kOk;
}

struct CheckArgs {
    std::string file;
    std::string property;
};

int run_check(const CheckArgs& args) {
    auto g = ecg::load_instance(args.file);
    bool holds = false;
    if (args.property == "triangle-free") holds = g.is_triangle_free();
    else if (args.property == "c4-free") holds = g.is_c4_free();
    else if (args.property == "proper") holds = g.is_properly_colored();
    else holds = g.all_classes_star_forests();
    std::cout << args.property << '=' << (holds ? 1 : 0) << '\n';
    return holds ? kOk : kFailed;
}

struct ReduceArgs {
    std::string file;
    std::string out;
};

int run_reduce(const ReduceArgs& args) {
    auto g = ecg::load_instance(args.file);
    auto reduced = ecg::reduce_to_star_forests(g);
    ecg::write_text_file(args.out, ecg::emit_instance(reduced));
    std::cout << "edges_before=" << g.num_edges() << " edges_after=" << reduced.num_edges()
              << " total_color_degree=" << reduced.total_color_degree() << '\n';
    return kOk;
}

struct VerifyArgs {
    std::string file;
    std::string theorem;
    std::size_t m = 0;
    std::uint64_t budget = 0;
    bool has_budget = false;
};

ecg::TheoremId theorem_from_tag(const std::string& tag) {
    if (tag == "tri") return ecg::TheoremId::TriangleFree;
    if (tag == "c4") return ecg::TheoremId::C4Free;
    if (tag == "proper") return ecg::TheoremId::ProperColored;
    if (tag == "general") return ecg::TheoremId::General;
    return ecg::TheoremId::ConjectureQ1;
}

int run_verify(const VerifyArgs& args) {
    auto g = ecg::load_instance(args.file);
    std::optional<std::uint64_t> budget;
    if (args.has_budget) budget = args.budget;
    ecg::VerifyReport report = ecg::verify_theorem(g, args.m, theorem_from_tag(args.theorem),
                                                   budget);
    std::cout << "hyp structure=" << tri_state(report.hypotheses.structure)
              << " degree=" << (report.hypotheses.degree ? 1 : 0)
              << " size=" << tri_state(report.hypotheses.size)
              << " met=" << (report.hypotheses_met ? 1 : 0) << '\n';
    if (report.witness) print_matching(*report.witness);
    std::cout << ecg::verdict_line(report) << '\n';

    if (report.violation()) {
        const std::string text = ecg::emit_instance(g);
        const std::string name =
            "violation_" + ecg::hex64(ecg::fnv1a64(text)) + ".ecg";
        ecg::write_text_file(name, "# theorem=" + args.theorem + " m=" +
                                        std::to_string(args.m) + "\n" + text);
        std::cerr << red("VIOLATION: hypotheses met but no rainbow matching of size " +
                         std::to_string(report.conclusion_required_size))
                  << "\nwrote " << name << '\n';
        return kFailed;
    }
    if (report.conclusion_met == ecg::Outcome::Unknown) {
        std::cerr << yellow("undecided: node budget exhausted") << '\n';
        return kExhausted;
    }
    if (report.greedy_guarantee_violated) {
        // conclusion still reachable by the exact fallback, but the greedy
        // guarantee broke; that should never happen and deserves a failure
        std::cerr << red("greedy guarantee violated: peel stopped short under met hypotheses")
                  << '\n';
        return kFailed;
    }
    std::cerr << green("ok") << '\n';
    return kOk;
}

struct GenArgs {
    std::string kind;
    std::size_t n = 0;
    double p = 0.5;
    std::size_t colors = 1;
    std::uint64_t seed = 0;
    std::size_t m = 0;
    bool has_m = false;
    std::string out;
};

int run_gen(const GenArgs& args) {
    ecg::GenConfig config;
    config.n = args.n;
    config.edge_probability = args.p;
    config.color_count = args.colors;
    config.seed = args.seed;
    if (args.has_m) config.m = args.m;

    std::optional<ecg::EdgeColoredGraph> g;
    if (args.kind == "random") g = ecg::gen_random(config);
    else if (args.kind == "triangle-free") g = ecg::gen_triangle_free(config);
    else if (args.kind == "c4-free") g = ecg::gen_c4_free(config);
    else if (args.kind == "proper") g = ecg::gen_proper(config);
    else g = ecg::gen_near_threshold(config);

    if (!g) {
        std::cerr << "near-threshold window unreachable at n=" << args.n
                  << " p=" << args.p << "; retry with another seed or density\n";
        return kFailed;
    }
    const std::string text = ecg::emit_instance(*g);
    if (args.out.empty()) std::cout << text;
    else ecg::write_text_file(args.out, text);
    return kOk;
}

struct HuntArgs {
    std::string mode;
    std::size_t n_max = 0;
    bool has_n_max = false;
    std::size_t colors_max = 0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t n_min = 6;
    std::size_t n_hi = 12;
    std::size_t m_min = 1;
    std::size_t m_max = 3;
    std::uint64_t budget = 0;
    bool has_budget = false;
    std::string out_dir;
    std::size_t jobs = 1;
    bool plus_one = false;
};

int run_hunt(const HuntArgs& args) {
    ecg::HuntReport report;
    if (args.mode == "exhaustive") {
        if (!args.has_n_max || args.colors_max == 0) {
            std::cerr << "exhaustive mode needs --n-max and --colors-max\n";
            return kBadInput;
        }
        report = ecg::hunt_exhaustive(args.n_max, args.colors_max, args.jobs, args.plus_one);
    } else {
        ecg::RandomHuntConfig config;
        config.n_min = args.n_min;
        config.n_max = args.has_n_max ? args.n_max : args.n_hi;
        config.m_min = args.m_min;
        config.m_max = args.m_max;
        config.seed = args.seed;
        config.plus_one = args.plus_one;
        if (args.has_budget) config.node_budget = args.budget;
        report = ecg::hunt_random(config, args.trials, args.jobs);
    }
    std::cout << ecg::hunt_report_text(report);
    std::cerr << "elapsed " << report.elapsed_seconds << "s\n";
    if (!args.out_dir.empty())
        for (const std::string& path : ecg::write_hunt_artifacts(report, args.out_dir))
            std::cerr << "wrote " << path << '\n';
    if (report.counterexample) {
        std::cerr << red("counterexample found") << '\n';
        return kFailed;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rainbow matchings in edge-colored graphs: solve, peel, verify, hunt"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "maximum rainbow matching by branch and bound");
    solve->add_option("file", solve_args.file, "instance file")->required();
    auto* solve_budget = solve->add_option("--budget", solve_args.budget, "node budget");

    GreedyArgs greedy_args;
    auto* greedy = app.add_subcommand("greedy", "peel toward a rainbow m-matching");
    greedy->add_option("file", greedy_args.file, "instance file")->required();
    greedy->add_option("--mode", greedy_args.mode, "peel mode")
        ->required()
        ->check(CLI::IsMember({"proper", "general"}));
    greedy->add_option("--m", greedy_args.m, "target matching size")->required();
    greedy->add_option("--trace", greedy_args.trace_path, "write the peel trace to this file");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "test a structural property");
    check->add_option("file", check_args.file, "instance file")->required();
    check->add_option("--property", check_args.property, "property to test")
        ->required()
        ->check(CLI::IsMember({"triangle-free", "c4-free", "proper", "star-forest"}));

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "reduce color classes to star forests");
    reduce->add_option("file", reduce_args.file, "instance file")->required();
    reduce->add_option("-o,--out", reduce_args.out, "output instance file")->required();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "check a theorem's hypotheses and conclusion");
    verify->add_option("file", verify_args.file, "instance file")->required();
    verify->add_option("--theorem", verify_args.theorem, "statement to verify")
        ->required()
        ->check(CLI::IsMember({"tri", "c4", "proper", "general", "q1"}));
    verify->add_option("--m", verify_args.m, "target matching size")->required();
    auto* verify_budget = verify->add_option("--budget", verify_args.budget, "node budget");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    gen->add_option("--kind", gen_args.kind, "generator family")
        ->required()
        ->check(CLI::IsMember({"random", "triangle-free", "c4-free", "proper",
                               "near-threshold"}));
    gen->add_option("--n", gen_args.n, "vertex count")->required();
    gen->add_option("--p", gen_args.p, "edge probability");
    gen->add_option("--colors", gen_args.colors, "palette size");
    gen->add_option("--seed", gen_args.seed, "rng seed");
    auto* gen_m = gen->add_option("--m", gen_args.m, "near-threshold target m");
    gen->add_option("-o,--out", gen_args.out, "output file (stdout when absent)");

    HuntArgs hunt_args;
    auto* hunt = app.add_subcommand("hunt", "search for conjecture counterexamples");
    hunt->add_option("--mode", hunt_args.mode, "search mode")
        ->required()
        ->check(CLI::IsMember({"exhaustive", "random"}));
    auto* hunt_n_max = hunt->add_option("--n-max", hunt_args.n_max, "largest vertex count");
    hunt->add_option("--colors-max", hunt_args.colors_max,
                     "distinct color cap (exhaustive mode)");
    hunt->add_option("--trials", hunt_args.trials, "random trials");
    hunt->add_option("--seed", hunt_args.seed, "rng seed");
    hunt->add_option("--n-min", hunt_args.n_min, "smallest vertex count (random mode)");
    hunt->add_option("--m-min", hunt_args.m_min, "smallest target m (random mode)");
    hunt->add_option("--m-max", hunt_args.m_max, "largest target m (random mode)");
    auto* hunt_budget = hunt->add_option("--budget", hunt_args.budget,
                                         "per-solve node budget (random mode)");
    hunt->add_option("--out-dir", hunt_args.out_dir, "directory for instance artifacts");
    hunt->add_option("--jobs", hunt_args.jobs, "worker threads");
    hunt->add_flag("--plus-one", hunt_args.plus_one, "hunt the m+1 strengthening instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    solve_args.has_budget = solve_budget->count() > 0;
    verify_args.has_budget = verify_budget->count() > 0;
    gen_args.has_m = gen_m->count() > 0;
    hunt_args.has_n_max = hunt_n_max->count() > 0;
    hunt_args.has_budget = hunt_budget->count() > 0;

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (greedy->parsed()) return run_greedy(greedy_args);
        if (check->parsed()) return run_check(check_args);
        if (reduce->parsed()) return run_reduce(reduce_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (gen->parsed()) return run_gen(gen_args);
        if (hunt->parsed()) return run_hunt(hunt_args);
    } catch (const ecg::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::logic_error& e) {
        std::cerr << red(std::string("internal inconsistency: ") + e.what()) << '\n';
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}
