// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "frobcirc/circulant.hpp"
#include "frobcirc/graph.hpp"
#include "frobcirc/scheduler.hpp"

namespace frobcirc {

struct SimulationOptions {
    /// Orders up to this limit track every (vertex, origin) pair. Larger orders
    /// require a translation-invariant schedule and track origin 0 only.
    std::uint64_t full_state_limit = 20'000;
};

struct GossipReport {
    bool valid = false;
    std::string diagnostic;                     // first violation, empty when valid
    std::size_t failed_step = 0;                // 1-based; 0 when valid
    std::optional<std::size_t> completion_step; // first step after which everyone knows everything
    std::size_t steps_executed = 0;
    bool full_state = false;
    bool every_arc_once = false;  // each step uses every arc of the graph exactly once
    bool origin_matching = false; // from step 2 on, each origin's arcs form a matching
    bool shortest_paths = false;  // every transmission moves a message one step farther from its origin
};

/// Store-and-forward, all-port, full-duplex execution. Stops at the first
/// violation: unknown arc, arc used twice in a step, or a tail that does not
/// hold the message at the start of the step. Incomplete dissemination after
/// the last step is reported as a violation as well.
GossipReport run_gossip(const FrobeniusCirculant& g, const GossipSchedule& s, const SimulationOptions& options = {});

struct BroadcastReport {
    bool valid = false;
    std::string diagnostic;
    std::uint32_t failed_time = 0;
    std::uint32_t horizon = 0;
    std::uint32_t diameter = 0;
};

/// Single-port execution from source: the sender must be an informed
/// neighbour, each vertex sends at most once per step and receives exactly once.
BroadcastReport run_broadcast(const FrobeniusCirculant& g, const BroadcastSchedule& s, Residue source);

/// Flooding: every step, each arc (u, v) carries the lowest-numbered origin u
/// held at the start of the step and v lacks. Returns the completion step.
/// Requires a connected graph with at most kMaxBaselineOrder vertices.
inline constexpr std::uint64_t kMaxBaselineOrder = 5'000;
std::size_t greedy_gossip_baseline(const AdjacencyGraph& g);

}  // namespace frobcirc
