// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Edge-list text format:
//   # comment
//   p ge <n> <m>
//   e <u> <v> <w>      (1-indexed labels, m lines)
// The writer emits the canonical form (sorted, collapsed edges, shortest
// round-trip weights), so write(parse(write(g))) is byte-identical.

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "twpad/errors.hpp"
#include "twpad/graph.hpp"

namespace twpad {

namespace detail {

inline std::string format_weight(Weight w) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    if (ec != std::errc{}) {
        throw ArgumentError("cannot format weight");
    }
    return std::string(buf, ptr);
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

template <class T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line);
    }
    return value;
}

/// Calls fn(tokens, line_number) for every non-empty line not starting with
/// one of the comment characters.
template <class Fn>
void for_each_line(std::string_view text, std::string_view comment_chars, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        auto tokens = split_tokens(text.substr(pos, end - pos));
        if (!tokens.empty() && comment_chars.find(tokens.front().front()) == std::string_view::npos) {
            fn(tokens, line_no);
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
}

} // namespace detail

inline WeightedGraph parse_edge_list(std::string_view text) {
    bool have_header = false;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Edge> edges;
    detail::for_each_line(text, "#", [&](const std::vector<std::string_view>& tok, std::size_t line) {
        if (tok[0] == "p") {
            if (have_header) {
                throw ParseError("duplicate header", line);
            }
            if (tok.size() != 4 || tok[1] != "ge") {
                throw ParseError("expected header 'p ge <n> <m>'", line);
            }
            n = detail::parse_number<std::size_t>(tok[2], line, "vertex count");
            m = detail::parse_number<std::size_t>(tok[3], line, "edge count");
            have_header = true;
            edges.reserve(m);
        } else if (tok[0] == "e") {
            if (!have_header) {
                throw ParseError("edge before header", line);
            }
            if (tok.size() != 4) {
                throw ParseError("expected 'e <u> <v> <w>'", line);
            }
            const auto u = detail::parse_number<long long>(tok[1], line, "vertex label");
            const auto v = detail::parse_number<long long>(tok[2], line, "vertex label");
            const auto w = detail::parse_number<double>(tok[3], line, "weight");
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
                throw ParseError("vertex label outside 1.." + std::to_string(n), line);
            }
            if (u == v) {
                throw ParseError("self-loop", line);
            }
            if (!(w >= 0.0)) {
                throw ParseError("negative weight", line);
            }
            edges.push_back(Edge{static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
        } else {
            throw ParseError("unknown line type '" + std::string(tok[0]) + "'", line);
        }
    });
    if (!have_header) {
        throw ParseError("missing 'p ge' header", 0);
    }
    if (edges.size() != m) {
        throw ParseError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()), 0);
    }
    return WeightedGraph(n, std::move(edges));
}

inline std::string write_edge_list(const WeightedGraph& g) {
    std::string out = "p ge " + std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const Edge& e : g.edges()) {
        out += "e " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " + detail::format_weight(e.w) + "\n";
    }
    return out;
}

} // namespace twpad
