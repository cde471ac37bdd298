#include <catch2/catch_amalgamated.hpp>

#include "ecg/generate.hpp"
#include "ecg/graph.hpp"

using namespace ecg;

namespace {

EdgeColoredGraph rainbow_triangle() {
    return EdgeColoredGraph(3, {{0, 1, 1}, {0, 2, 2}, {1, 2, 3}});
}

EdgeColoredGraph mono_triangle() {
    return EdgeColoredGraph(3, {{0, 1, 7}, {0, 2, 7}, {1, 2, 7}});
}

EdgeColoredGraph proper_k4() {
    return EdgeColoredGraph(4, {{0, 1, 0}, {2, 3, 0}, {0, 2, 1}, {1, 3, 1}, {0, 3, 2}, {1, 2, 2}});
}

}  // namespace

TEST_CASE("construction rejects malformed inputs") {
    CHECK_THROWS_AS(EdgeColoredGraph(3, {{1, 1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(EdgeColoredGraph(3, {{0, 1, 0}, {1, 0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(EdgeColoredGraph(2, {{0, 2, 0}}), std::out_of_range);
    // endpoints are canonicalized to u < v
    EdgeColoredGraph g(3, {{2, 0, 5}});
    CHECK(g.edges() == std::vector<Edge>{{0, 2, 5}});
}

TEST_CASE("color degree") {
    EdgeColoredGraph single(2, {{0, 1, 7}});
    CHECK(single.color_degree(0) == 1);

    EdgeColoredGraph star(3, {{0, 1, 3}, {0, 2, 3}});
    CHECK(star.color_degree(0) == 1);  // repeated color counted once
    CHECK(star.color_degree(1) == 1);

    EdgeColoredGraph tri = rainbow_triangle();
    for (VertexId v = 0; v < 3; ++v) CHECK(tri.color_degree(v) == 2);

    CHECK_THROWS_AS(single.color_degree(5), std::out_of_range);
}

TEST_CASE("restricted color degree counts edges, not colors") {
    EdgeColoredGraph star(3, {{0, 1, 3}, {0, 2, 3}});
    CHECK(star.restricted_color_degree(0, 3) == 2);
    CHECK(star.restricted_color_degree(0, 5) == 0);
    EdgeColoredGraph tri = rainbow_triangle();
    for (VertexId v = 0; v < 3; ++v)
        CHECK(tri.restricted_color_degree(v, 1) <= 1);
}

TEST_CASE("total and minimum color degree") {
    CHECK(EdgeColoredGraph(5, {}).total_color_degree() == 0);
    CHECK(rainbow_triangle().total_color_degree() == 6);
    CHECK(mono_triangle().total_color_degree() == 3);

    CHECK(rainbow_triangle().min_color_degree() == 2);
    EdgeColoredGraph tri_plus(4, {{0, 1, 1}, {0, 2, 2}, {1, 2, 3}});
    CHECK(tri_plus.min_color_degree() == 0);  // isolated vertex
    CHECK(EdgeColoredGraph(2, {{0, 1, 9}}).min_color_degree() == 1);
    CHECK_THROWS_AS(EdgeColoredGraph(0, {}).min_color_degree(), std::invalid_argument);
}

TEST_CASE("colors between vertex sets") {
    EdgeColoredGraph single(2, {{0, 1, 7}});
    CHECK(single.colors_between({0}, {1}) == std::set<ColorId>{7});
    CHECK(single.colors_between({0}, {0}) == std::set<ColorId>{});
    EdgeColoredGraph tri = rainbow_triangle();
    CHECK(tri.colors_between({0}, {1, 2}) == std::set<ColorId>{1, 2});
    CHECK_THROWS_AS(single.colors_between({9}, {0}), std::out_of_range);
}

TEST_CASE("class size and star count") {
    CHECK(mono_triangle().class_size(7) == 3);
    CHECK(mono_triangle().class_size(8) == 0);
    for (ColorId c : {0u, 1u, 2u}) CHECK(proper_k4().class_size(c) == 2);

    EdgeColoredGraph one_star(3, {{0, 1, 4}, {0, 2, 4}});
    CHECK(one_star.star_count(4) == 1);
    EdgeColoredGraph two_edges(4, {{0, 1, 4}, {2, 3, 4}});
    CHECK(two_edges.star_count(4) == 2);
    EdgeColoredGraph path4(4, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}});
    CHECK(path4.star_count(4) == 1);
    CHECK(path4.star_count(9) == 0);
}

TEST_CASE("star forest predicate") {
    EdgeColoredGraph one_star(3, {{0, 1, 4}, {0, 2, 4}});
    CHECK(one_star.is_star_forest(4));
    EdgeColoredGraph path4(4, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}});
    CHECK_FALSE(path4.is_star_forest(4));
    CHECK_FALSE(mono_triangle().is_star_forest(7));
    CHECK(mono_triangle().is_star_forest(42));  // absent color, vacuous
}

TEST_CASE("triangle-free and C4-free predicates") {
    CHECK_FALSE(mono_triangle().is_triangle_free());
    EdgeColoredGraph c4(4, {{0, 1, 0}, {1, 2, 1}, {2, 3, 0}, {0, 3, 1}});
    CHECK(c4.is_triangle_free());
    EdgeColoredGraph c5(5, {{0, 1, 0}, {1, 2, 1}, {2, 3, 2}, {3, 4, 3}, {0, 4, 4}});
    CHECK(c5.is_triangle_free());

    CHECK_FALSE(c4.is_c4_free());
    EdgeColoredGraph k4 = proper_k4();
    CHECK_FALSE(k4.is_c4_free());
    CHECK(c5.is_c4_free());
}

TEST_CASE("proper coloring predicate") {
    EdgeColoredGraph bad(3, {{0, 1, 1}, {1, 2, 1}});
    CHECK_FALSE(bad.is_properly_colored());
    EdgeColoredGraph good(3, {{0, 1, 1}, {1, 2, 2}});
    CHECK(good.is_properly_colored());
    CHECK(EdgeColoredGraph(4, {}).is_properly_colored());
}

TEST_CASE("rainbow matching predicate") {
    EdgeColoredGraph g(4, {{0, 1, 1}, {2, 3, 1}});
    CHECK(is_rainbow_matching(g, Matching{}));
    CHECK_FALSE(is_rainbow_matching(g, Matching({{0, 1, 1}, {2, 3, 1}})));
    EdgeColoredGraph h(4, {{0, 1, 1}, {2, 3, 2}});
    CHECK(is_rainbow_matching(h, Matching({{0, 1, 1}, {2, 3, 2}})));
    CHECK_THROWS_AS(is_rainbow_matching(h, Matching({{0, 2, 1}})), std::invalid_argument);
    CHECK_THROWS_AS(Matching({{0, 1, 1}, {1, 2, 2}}), std::invalid_argument);
}

TEST_CASE("deletions keep vertex ids stable") {
    EdgeColoredGraph tri = rainbow_triangle();

    EdgeColoredGraph del = tri.delete_vertex(0);
    CHECK(del.num_vertices() == 2);
    CHECK(del.id_space() == 3);
    CHECK_FALSE(del.is_active(0));
    CHECK(del.edges() == std::vector<Edge>{{1, 2, 3}});
    CHECK_THROWS_AS(del.delete_vertex(0), std::invalid_argument);

    CHECK(mono_triangle().delete_color(7).num_edges() == 0);
    CHECK(mono_triangle().delete_color(7).num_vertices() == 3);

    EdgeColoredGraph ind = tri.induced_subgraph({0, 1});
    CHECK(ind.edges() == std::vector<Edge>{{0, 1, 1}});
    CHECK(ind.num_vertices() == 2);

    CHECK(tri.delete_edge(0, 1).num_edges() == 2);
    CHECK_THROWS_AS(tri.delete_edge(0, 1).delete_edge(0, 1), std::invalid_argument);
}

TEST_CASE("star forest reduction on named instances") {
    EdgeColoredGraph path4(4, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}});
    EdgeColoredGraph reduced = reduce_to_star_forests(path4);
    CHECK(reduced.edges() == std::vector<Edge>{{0, 1, 4}, {2, 3, 4}});
    CHECK(path4.total_color_degree() == 4);
    CHECK(reduced.total_color_degree() == 4);

    EdgeColoredGraph tri_reduced = reduce_to_star_forests(mono_triangle());
    CHECK(tri_reduced.num_edges() == 2);
    CHECK(tri_reduced.edges() == std::vector<Edge>{{0, 2, 7}, {1, 2, 7}});
    CHECK(tri_reduced.total_color_degree() == 3);

    EdgeColoredGraph star(3, {{0, 1, 4}, {0, 2, 4}});
    CHECK(reduce_to_star_forests(star) == star);  // fixed point
}

TEST_CASE("core invariants over a random corpus") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GenConfig cfg;
        cfg.n = 3 + seed % 9;
        cfg.edge_probability = 0.15 * (seed % 7);
        cfg.color_count = 1 + seed % 5;
        cfg.seed = seed * 977;
        EdgeColoredGraph g = gen_random(cfg);
        CAPTURE(seed);

        std::size_t total = 0;
        for (VertexId v = 0; v < g.id_space(); ++v) {
            CHECK(g.color_degree(v) <= g.degree(v));
            CHECK(g.color_degree(v) <= g.num_colors());
            total += g.color_degree(v);
        }
        CHECK(total == g.total_color_degree());

        bool proper_by_degrees = true;
        for (VertexId v = 0; v < g.id_space(); ++v)
            if (g.color_degree(v) != g.degree(v)) proper_by_degrees = false;
        CHECK(g.is_properly_colored() == proper_by_degrees);

        if (g.is_triangle_free()) {
            for (const Edge& e : g.edges())
                CHECK(g.degree(e.u) + g.degree(e.v) <= g.num_vertices());
        }
        if (g.is_c4_free()) {
            for (const Edge& e : g.edges())
                CHECK(g.degree(e.u) + g.degree(e.v) <= g.num_vertices() + 1);
        }

        for (ColorId c : g.colors()) {
            CHECK(g.star_count(c) <= g.class_size(c));
            bool perfect_on_support = g.star_count(c) == g.class_size(c);
            std::map<VertexId, int> deg;
            for (const Edge& e : g.color_class(c).edges) {
                deg[e.u]++;
                deg[e.v]++;
            }
            bool all_deg_one = true;
            for (auto& [v, d] : deg)
                if (d != 1) all_deg_one = false;
            CHECK(perfect_on_support == all_deg_one);
        }

        EdgeColoredGraph reduced = reduce_to_star_forests(g);
        CHECK(reduced.total_color_degree() == g.total_color_degree());
        CHECK(reduced.num_edges() <= g.num_edges());
        for (const Edge& e : reduced.edges()) CHECK(g.has_edge(e.u, e.v));
        CHECK(reduced.all_classes_star_forests());
        CHECK(reduce_to_star_forests(reduced) == reduced);
    }
}

TEST_CASE("proper colorings bound class sizes by floor(n/2)") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GenConfig cfg;
        cfg.n = 4 + seed % 8;
        cfg.edge_probability = 0.7;
        cfg.seed = 5000 + seed;
        EdgeColoredGraph g = gen_proper(cfg);
        REQUIRE(g.is_properly_colored());
        for (ColorId c : g.colors()) CHECK(g.class_size(c) <= g.num_vertices() / 2);
    }
}
