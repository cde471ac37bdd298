#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>

#include "ecg/generate.hpp"
#include "ecg/graph.hpp"
#include "ecg/io.hpp"

using namespace ecg;

namespace {

void expect_parse_error(const std::string& text, std::size_t line,
                        const std::string& fragment) {
    try {
        parse_instance(text);
        FAIL("expected a parse error mentioning '" << fragment << "'");
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(fragment));
    }
}

}  // namespace

TEST_CASE("parsing well-formed instances") {
    SECTION("single edge") {
        auto g = parse_instance("ecg 1\n2 1\n0 1 7\n");
        CHECK(g.num_vertices() == 2);
        CHECK(g.num_edges() == 1);
        CHECK(g.edge_color(0, 1) == 7);
    }

    SECTION("edgeless graph keeps its isolated vertices") {
        auto g = parse_instance("ecg 1\n3 0\n");
        CHECK(g.num_vertices() == 3);
        CHECK(g.num_edges() == 0);
    }

    SECTION("comments may appear anywhere") {
        auto g = parse_instance(
            "# generated by hand\n"
            "ecg 1\n"
            "# counts\n"
            "4 2\n"
            "0 1 0\n"
            "# middle\n"
            "2 3 5\n"
            "# trailing\n");
        CHECK(g.num_vertices() == 4);
        CHECK(g.num_edges() == 2);
        CHECK(g.edge_color(2, 3) == 5);
    }

    SECTION("missing trailing newline and CR line endings are tolerated") {
        CHECK(parse_instance("ecg 1\n2 1\n0 1 7").num_edges() == 1);
        CHECK(parse_instance("ecg 1\r\n2 1\r\n0 1 7\r\n").num_edges() == 1);
    }
}

TEST_CASE("parse errors carry line numbers") {
    expect_parse_error("", 0, "missing 'ecg 1' header");
    expect_parse_error("ecg 2\n2 1\n0 1 7\n", 1, "bad header");
    expect_parse_error("ecg 1\n", 1, "missing '<n> <e>'");
    expect_parse_error("ecg 1\n2\n", 2, "counts line");
    expect_parse_error("ecg 1\n2 x\n", 2, "bad edge count");
    expect_parse_error("ecg 1\n2  1\n0 1 7\n", 2, "counts line");  // double space
    expect_parse_error("ecg 1\n2 1\n1 0 7\n", 3, "u < v");
    expect_parse_error("ecg 1\n2 1\n0 0 7\n", 3, "u < v");
    expect_parse_error("ecg 1\n2 1\n0 2 7\n", 3, "out of range");
    expect_parse_error("ecg 1\n2 1\n0 1 -3\n", 3, "bad color id");
    expect_parse_error("ecg 1\n2 1\n0 1\n", 3, "edge line");
    expect_parse_error("ecg 1\n4 2\n0 1 7\n", 3, "expected 2 edge lines, found 1");
    expect_parse_error("ecg 1\n4 2\n0 1 7\n# fine\n0 1 9\n", 5, "duplicate edge");
    expect_parse_error("ecg 1\n2 1\n0 1 7\n0 1 8\n", 4, "trailing content");
    expect_parse_error("ecg 1\n2 9\n", 2, "exceeds simple-graph maximum");
    expect_parse_error("ecg 1\n2 1\n0 1 5000000000\n", 3, "out of range");  // > 32 bits
}

TEST_CASE("emitting instances") {
    SECTION("canonical text") {
        EdgeColoredGraph g(2, {{0, 1, 7}});
        CHECK(emit_instance(g) == "ecg 1\n2 1\n0 1 7\n");
        CHECK(emit_instance(EdgeColoredGraph(3, {})) == "ecg 1\n3 0\n");
    }

    SECTION("edges come out in lexicographic order regardless of input order") {
        EdgeColoredGraph g(4, {{2, 3, 1}, {0, 1, 0}, {1, 2, 2}});
        CHECK(emit_instance(g) == "ecg 1\n4 3\n0 1 0\n1 2 2\n2 3 1\n");
    }

    SECTION("graphs with deletions cannot be serialized") {
        EdgeColoredGraph g(4, {{0, 1, 0}, {2, 3, 1}});
        auto h = g.delete_vertex(0);
        CHECK_THROWS_AS(emit_instance(h), std::invalid_argument);
    }
}

TEST_CASE("round trip law on a random corpus") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GenConfig config;
        config.n = 1 + seed % 9;
        config.edge_probability = 0.1 * static_cast<double>(seed % 11);
        config.color_count = 1 + seed % 6;
        config.seed = seed * 7919;
        auto g = gen_random(config);
        auto text = emit_instance(g);
        CHECK(parse_instance(text) == g);
        CHECK(emit_instance(parse_instance(text)) == text);
    }
}

TEST_CASE("file helpers") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ecg_io_test";
    fs::create_directories(dir);
    const std::string path = (dir / "roundtrip.ecg").string();

    EdgeColoredGraph g(5, {{0, 1, 2}, {1, 4, 0}, {2, 3, 2}});
    write_text_file(path, emit_instance(g));
    CHECK(load_instance(path) == g);
    CHECK(read_text_file(path) == emit_instance(g));
    CHECK_THROWS_AS(load_instance((dir / "missing.ecg").string()), std::runtime_error);
    fs::remove_all(dir);
}
