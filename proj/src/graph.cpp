// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/graph.hpp"

#include <deque>
#include <sstream>

namespace frobcirc {

std::size_t AdjacencyGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency) twice += nbrs.size();
    return twice / 2;
}

std::string AdjacencyGraph::label(std::uint32_t v) const {
    return labels.empty() ? std::to_string(v) : labels[v];
}

std::vector<std::uint32_t> bfs_distances(const AdjacencyGraph& g, std::uint32_t source) {
    std::vector<std::uint32_t> dist(g.size(), kUnreachable);
    std::deque<std::uint32_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (auto v : g.adjacency[u]) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::string to_dot(const AdjacencyGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph \"" << name << "\" {\n";
    for (std::uint32_t u = 0; u < g.size(); ++u) {
        out << "  \"" << g.label(u) << "\";\n";
    }
    for (std::uint32_t u = 0; u < g.size(); ++u) {
        for (auto v : g.adjacency[u]) {
            if (u < v) out << "  \"" << g.label(u) << "\" -- \"" << g.label(v) << "\";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string to_edge_list(const AdjacencyGraph& g) {
    std::ostringstream out;
    for (std::uint32_t u = 0; u < g.size(); ++u) {
        for (auto v : g.adjacency[u]) {
            if (u < v) out << g.label(u) << ' ' << g.label(v) << '\n';
        }
    }
    return out.str();
}

}  // namespace frobcirc
