// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frobcirc {

inline constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;

/// Explicit undirected graph on vertices 0..size()-1. Used wherever a
/// structure has to be checked vertex by vertex (covers, exports, oracles).
struct AdjacencyGraph {
    std::vector<std::vector<std::uint32_t>> adjacency;
    std::vector<std::string> labels;  // optional; empty means "use the index"

    std::size_t size() const { return adjacency.size(); }
    std::size_t edge_count() const;
    std::string label(std::uint32_t v) const;
};

/// Single-source BFS; unreachable vertices get kUnreachable.
std::vector<std::uint32_t> bfs_distances(const AdjacencyGraph& g, std::uint32_t source);

/// Graphviz DOT, one `u -- v` line per unordered edge.
std::string to_dot(const AdjacencyGraph& g, const std::string& name);

/// "u v" per line, one line per unordered edge with u < v.
std::string to_edge_list(const AdjacencyGraph& g);

}  // namespace frobcirc
