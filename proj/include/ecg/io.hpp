#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecg/graph.hpp"

namespace ecg {

// Instance file layout:
//   ecg 1
//   <n> <e>
//   <u> <v> <c>    (e lines, 0 <= u < v < n, c any non-negative color id)
// Lines starting with '#' are comments and may appear anywhere. Tokens are
// separated by single spaces.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ' ') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::uint64_t parse_number(const std::string& field, std::size_t line_no,
                                  const char* what, std::uint64_t limit) {
    if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line_no, std::string("bad ") + what + " '" + field + "'");
    std::uint64_t value = 0;
    for (char ch : field) {
        if (value > limit / 10) throw ParseError(line_no, std::string(what) + " out of range");
        value = value * 10 + static_cast<std::uint64_t>(ch - '0');
        if (value > limit) throw ParseError(line_no, std::string(what) + " out of range");
    }
    return value;
}

}  // namespace detail

inline EdgeColoredGraph parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto next_significant = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line[0] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string cur;
    if (!next_significant(cur)) throw ParseError(line_no, "missing 'ecg 1' header");
    if (cur != "ecg 1") throw ParseError(line_no, "bad header '" + cur + "', expected 'ecg 1'");

    if (!next_significant(cur)) throw ParseError(line_no, "missing '<n> <e>' counts line");
    auto fields = detail::split_fields(cur);
    if (fields.size() != 2)
        throw ParseError(line_no, "counts line must be '<n> <e>'");
    const auto n = detail::parse_number(fields[0], line_no, "vertex count",
                                        std::numeric_limits<VertexId>::max());
    const auto e = detail::parse_number(fields[1], line_no, "edge count",
                                        std::numeric_limits<std::uint32_t>::max());
    if (e > (n == 0 ? 0 : n * (n - 1) / 2))
        throw ParseError(line_no, "edge count exceeds simple-graph maximum");

    std::vector<Edge> edges;
    edges.reserve(e);
    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (!next_significant(cur))
            throw ParseError(line_no, "expected " + std::to_string(e) + " edge lines, found " +
                                          std::to_string(i));
        fields = detail::split_fields(cur);
        if (fields.size() != 3)
            throw ParseError(line_no, "edge line must be '<u> <v> <c>'");
        const auto u = detail::parse_number(fields[0], line_no, "vertex id",
                                            std::numeric_limits<VertexId>::max());
        const auto v = detail::parse_number(fields[1], line_no, "vertex id",
                                            std::numeric_limits<VertexId>::max());
        const auto c = detail::parse_number(fields[2], line_no, "color id",
                                            std::numeric_limits<ColorId>::max());
        if (u >= v) throw ParseError(line_no, "edge endpoints must satisfy u < v");
        if (v >= n) throw ParseError(line_no, "vertex id " + std::to_string(v) + " out of range");
        if (!seen.emplace(static_cast<VertexId>(u), static_cast<VertexId>(v)).second)
            throw ParseError(line_no, "duplicate edge " + fields[0] + " " + fields[1]);
        edges.push_back(Edge{static_cast<VertexId>(u), static_cast<VertexId>(v),
                             static_cast<ColorId>(c)});
    }
    if (next_significant(cur))
        throw ParseError(line_no, "trailing content after " + std::to_string(e) + " edges");
    return EdgeColoredGraph(static_cast<std::size_t>(n), edges);
}

// Canonical form: header, counts, then edges in lexicographic order, one per
// line, newline terminated. Graphs with deletions applied cannot round-trip
// through the file format (it has no mask), so they are rejected.
inline std::string emit_instance(const EdgeColoredGraph& g) {
    if (g.is_masked())
        throw std::invalid_argument("cannot emit a graph with deletions applied");
    std::ostringstream out;
    out << "ecg 1\n" << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.color << '\n';
    return out.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

inline EdgeColoredGraph load_instance(const std::string& path) {
    return parse_instance(read_text_file(path));
}

}  // namespace ecg
