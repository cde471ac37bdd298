#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ecg/generate.hpp"
#include "ecg/graph.hpp"
#include "ecg/io.hpp"

using namespace ecg;

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next_u64() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next_u64() == 0x06c45d188009454fULL);

    SECTION("same seed, same stream") {
        SplitMix64 a(12345), b(12345);
        for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
    }

    SECTION("helpers") {
        SplitMix64 r(99);
        CHECK_THROWS_AS(r.next_below(0), std::invalid_argument);
        for (int i = 0; i < 200; ++i) {
            CHECK(r.next_below(7) < 7);
            double d = r.next_double();
            CHECK(d >= 0.0);
            CHECK(d < 1.0);
        }
    }
}

TEST_CASE("random generator") {
    GenConfig config;
    config.n = 7;
    config.color_count = 3;
    config.seed = 41;

    SECTION("probability extremes") {
        config.edge_probability = 0.0;
        CHECK(gen_random(config).num_edges() == 0);
        config.edge_probability = 1.0;
        CHECK(gen_random(config).num_edges() == 21);
    }

    SECTION("colors stay inside the palette") {
        config.edge_probability = 0.8;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            config.seed = seed;
            EdgeColoredGraph g = gen_random(config);
            for (const Edge& e : g.edges()) CHECK(e.color < 3);
        }
    }

    SECTION("byte-identical reproduction") {
        config.edge_probability = 0.5;
        CHECK(emit_instance(gen_random(config)) == emit_instance(gen_random(config)));
    }

    SECTION("different seeds usually differ") {
        config.edge_probability = 0.5;
        std::set<std::string> texts;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            config.seed = seed;
            texts.insert(emit_instance(gen_random(config)));
        }
        CHECK(texts.size() >= 9);
    }

    SECTION("degenerate sizes") {
        config.n = 0;
        CHECK(gen_random(config).num_edges() == 0);
        config.n = 1;
        CHECK(gen_random(config).num_edges() == 0);
    }

    SECTION("bad arguments") {
        config.edge_probability = 1.5;
        CHECK_THROWS_AS(gen_random(config), std::invalid_argument);
        config.edge_probability = 0.5;
        config.color_count = 0;
        CHECK_THROWS_AS(gen_random(config), std::invalid_argument);
    }
}

TEST_CASE("structured generators satisfy their structure") {
    GenConfig config;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        config.n = 5 + seed % 8;
        config.edge_probability = 0.3 + 0.07 * static_cast<double>(seed % 10);
        config.color_count = 2 + seed % 4;
        config.seed = seed * 6151;
        CAPTURE(seed);
        CHECK(gen_triangle_free(config).is_triangle_free());
        CHECK(gen_c4_free(config).is_c4_free());
        CHECK(gen_proper(config).is_properly_colored());
    }

    SECTION("c4-free generation survives full density") {
        config.n = 10;
        config.edge_probability = 1.0;
        config.seed = 5;
        auto g = gen_c4_free(config);
        CHECK(g.is_c4_free());
        CHECK(g.num_edges() > 0);
    }
}

TEST_CASE("greedy proper recoloring") {
    SECTION("path gets alternating colors") {
        EdgeColoredGraph path(3, {{0, 1, 9}, {1, 2, 9}});
        auto recolored = greedy_proper_recoloring(path);
        CHECK(recolored.edge_color(0, 1) == 0);
        CHECK(recolored.edge_color(1, 2) == 1);
        CHECK(recolored.is_properly_colored());
    }

    SECTION("star needs one color per edge") {
        std::vector<Edge> edges;
        for (VertexId v = 1; v <= 5; ++v) edges.push_back(Edge{0, v, 0});
        auto recolored = greedy_proper_recoloring(EdgeColoredGraph(6, edges));
        for (VertexId v = 1; v <= 5; ++v) CHECK(recolored.edge_color(0, v) == v - 1);
        CHECK(recolored.is_properly_colored());
    }

    SECTION("proper input stays proper and keeps its shape") {
        EdgeColoredGraph g(4, {{0, 1, 5}, {2, 3, 5}, {0, 2, 8}});
        auto recolored = greedy_proper_recoloring(g);
        CHECK(recolored.num_edges() == g.num_edges());
        for (const Edge& e : g.edges()) CHECK(recolored.has_edge(e.u, e.v));
        CHECK(recolored.is_properly_colored());
    }
}

TEST_CASE("near-threshold generator lands in the degree window") {
    GenConfig config;
    config.kind = GenKind::NearThreshold;
    std::size_t produced = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        config.n = 8 + seed % 5;
        config.edge_probability = 0.55 + 0.04 * static_cast<double>(seed % 10);
        config.seed = seed * 909091;
        config.m = 1 + seed % 2;
        auto g = gen_near_threshold(config);
        if (!g) continue;  // support too sparse for the window; legitimate
        ++produced;
        const std::size_t lo = 2 * *config.m * config.n;
        CAPTURE(seed);
        CHECK(g->total_color_degree() >= lo);
        CHECK(g->total_color_degree() < lo + 2 * config.n);
        CHECK(g->num_vertices() == config.n);
    }
    CHECK(produced >= 20);

    SECTION("unreachable window reports failure") {
        config.n = 4;
        config.m = 3;  // needs total color degree 24, impossible on 4 vertices
        config.edge_probability = 1.0;
        config.seed = 1;
        CHECK_FALSE(gen_near_threshold(config).has_value());
    }

    SECTION("m is mandatory") {
        config.m.reset();
        CHECK_THROWS_AS(gen_near_threshold(config), std::invalid_argument);
    }

    SECTION("deterministic") {
        config.n = 10;
        config.m = 1;
        config.edge_probability = 0.7;
        config.seed = 77;
        auto a = gen_near_threshold(config);
        auto b = gen_near_threshold(config);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(emit_instance(*a) == emit_instance(*b));
    }
}
