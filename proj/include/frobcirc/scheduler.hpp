// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "frobcirc/circulant.hpp"
#include "frobcirc/eisenstein.hpp"

namespace frobcirc {

/// Largest order for which the diagram (and everything built on it) is
/// constructed explicitly.
inline constexpr std::uint64_t kMaxDiagramOrder = 10'000'000;

/// Cell (i, j) of the first sector; vertex = i + j·a mod n.
struct YCell {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    Residue vertex = 0;

    std::uint32_t distance() const { return i + j; }
    friend bool operator==(const YCell&, const YCell&) = default;
};

/// Minimum distance diagram produced by the ring-by-ring orbit sweep.
struct DistanceDiagram {
    std::uint64_t n = 0;
    Residue a = 0;
    std::uint32_t r = 0;
    std::vector<std::uint32_t> profile;  // i_0 .. i_r
    std::vector<YCell> sector;           // Y, in discovery order

    std::uint32_t diameter() const;  // max(i_j + j)
};

DistanceDiagram build_diagram(const FrobeniusCirculant& g);

/// Cell (i, j, k) of the whole diagram X: vertex (i + j·a)·a^k.
struct HexCell {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;
    Residue vertex = 0;
};

/// All n - 1 nonzero vertices with their hexagonal coordinates, sector by sector.
std::vector<HexCell> hexagonal_coordinates(const FrobeniusCirculant& g, const DistanceDiagram& d);

/// n_1 .. n_D: number of Y cells with i + j = t.
std::vector<std::uint64_t> type_vector(const DistanceDiagram& d);

/// n_1 .. n_D from the canonical (c, d) of the isomorphic EJ graph, using the
/// piecewise formula and, for c + d even, the midpoint expression.
std::vector<std::uint64_t> type_vector_from_cd(CanonicalPair cd, std::uint64_t n);

/// sum_j i_j (i_j + 2j + 1).
std::uint64_t forwarding_index(const DistanceDiagram& d);

/// 2 · sum_t t·n_t.
std::uint64_t forwarding_index_from_type(const std::vector<std::uint64_t>& type);

/// The (c, d) closed forms for π, split on the parity of c + d. Reported for
/// comparison only; see README.
double forwarding_index_closed_form(CanonicalPair cd, std::uint64_t n);

/// (3n / 2) · π. Throws PreconditionError on overflow.
std::uint64_t wiener_index(std::uint64_t n, std::uint64_t pi);

/// (n - 1) / 6.
std::uint64_t gossip_time(const FrobeniusCirculant& g);

/// Shortest-path spanning tree rooted at 0, replicated over the six sectors.
struct TreeBranch {
    YCell child;
    Residue parent = 0;  // parent of child.vertex in sector 0
    std::array<Arc, 6> arcs{};  // (parent·a^k, child·a^k), k = 0..5
};

struct SpanningTree {
    std::uint64_t n = 0;
    std::vector<Residue> parent;        // parent[0] == 0
    std::vector<std::uint32_t> level;   // depth
    std::vector<TreeBranch> branches;   // one per Y cell, ordered by (i + j, j, i)
};

/// Parent of Y cell (i, j): (i-1, j) when i >= 2, else (1, j-1) when j >= 1, else 0.
SpanningTree build_spanning_tree(const FrobeniusCirculant& g, const DistanceDiagram& d);

/// Vertices of the route from u to v: the tree path 0 -> v - u translated by u.
std::vector<Residue> route(const SpanningTree& t, Residue u, Residue v);

struct RoutingLoads {
    std::array<std::uint64_t, 6> arc_load{};  // indexed like connection_set()
    bool arc_uniform = false;
    bool edge_uniform = false;
    std::uint64_t max_arc_load = 0;
    std::uint64_t max_edge_load = 0;
};

/// Loads of the translated-tree routing over all n(n-1) ordered pairs,
/// aggregated through subtree sizes.
RoutingLoads routing_loads(const FrobeniusCirculant& g, const SpanningTree& t);

/// True iff every tree depth equals the BFS distance from 0.
bool is_shortest_path_tree(const FrobeniusCirculant& g, const SpanningTree& t);

struct Transmission {
    Residue tail = 0;
    Residue head = 0;
    Residue origin = 0;

    friend bool operator==(const Transmission&, const Transmission&) = default;
};

struct GossipSchedule {
    std::uint64_t n = 0;
    /// When set, each step lists only the transmissions of the message
    /// originating at 0; step t also sends (tail + u, head + u) with origin u
    /// for every vertex u.
    bool translation_invariant = false;
    std::vector<std::vector<Transmission>> steps;

    std::size_t total_steps() const { return steps.size(); }
    std::vector<Transmission> expanded(std::size_t step) const;
    /// Same schedule with every step expanded.
    GossipSchedule explicit_form() const;
};

/// One step per tree branch, in branch order; total (n - 1) / 6 steps.
GossipSchedule gossip_schedule(const FrobeniusCirculant& g, const SpanningTree& t);

struct BroadcastAssignment {
    Residue vertex = 0;
    std::uint32_t time = 0;
    Residue sender = 0;

    friend bool operator==(const BroadcastAssignment&, const BroadcastAssignment&) = default;
};

struct BroadcastSchedule {
    std::uint64_t n = 0;
    Residue source = 0;
    std::vector<BroadcastAssignment> assignments;  // sorted by (time, vertex)
    std::uint32_t horizon = 0;
};

/// The explicit scheme L rooted at 0.
BroadcastSchedule broadcast_schedule(const FrobeniusCirculant& g, const DistanceDiagram& d);

/// Same schedule shifted so that it is rooted at source.
BroadcastSchedule translate(const BroadcastSchedule& s, Residue source);

struct BroadcastSearchOptions {
    std::uint64_t exhaustive_bound = 200;
    std::uint64_t node_budget = 20'000'000;
};

struct BroadcastCertificate {
    std::uint32_t diameter = 0;
    std::uint32_t horizon = 0;           // of the scheme L
    std::optional<std::uint32_t> exact;  // b(Γ) when the search finished
    bool certified = false;
    std::uint64_t nodes = 0;
    std::optional<BroadcastSchedule> witness;  // set when the search beats L
};

/// Branch-and-bound over informed sets, up to symmetry, for every horizon
/// below that of L. Skipped (certified = false) above the exhaustive bound or
/// when the node budget runs out.
BroadcastCertificate broadcast_time(const FrobeniusCirculant& g, const DistanceDiagram& d,
                                    const BroadcastSearchOptions& options = {});

struct BroadcastSearchResult {
    std::optional<bool> feasible;  // nullopt when the budget ran out
    std::uint64_t nodes = 0;
    std::optional<BroadcastSchedule> witness;
};

/// Whether some single-port broadcast from 0 finishes within `steps` steps;
/// a witness schedule accompanies a positive answer.
BroadcastSearchResult broadcast_search(const FrobeniusCirculant& g, std::uint32_t steps, std::uint64_t node_budget);

struct Metrics {
    std::uint64_t n = 0;
    Residue a = 0;
    Residue canonical_generator = 0;
    CanonicalPair cd;
    std::uint32_t diameter = 0;
    std::vector<std::uint64_t> type_vector;
    std::uint64_t pi = 0;
    std::uint64_t arc_pi = 0;
    double pi_closed_form = 0;  // reported alongside, never asserted
    std::uint64_t wiener = 0;
    std::uint64_t gossip_time = 0;
    std::optional<BroadcastCertificate> broadcast;  // needs the diagram
};

Metrics compute_metrics(const FrobeniusCirculant& g, const BroadcastSearchOptions& options = {});

}  // namespace frobcirc
