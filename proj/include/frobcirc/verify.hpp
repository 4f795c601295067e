// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "frobcirc/numtheory.hpp"

namespace frobcirc {

struct VerifyOptions {
    std::uint64_t max_n = 5'000;
    unsigned threads = 0;                       // 0: FROBCIRC_THREADS, else hardware concurrency
    std::uint64_t full_state_limit = 1'500;     // full gossip simulation up to this order
    std::uint64_t iso_limit = 5'000;            // explicit isomorphism check
    std::uint64_t routing_limit = 5'000;        // explicit path-walk load count
    std::uint64_t quotient_limit = 20'000;      // quotient covers over all divisors
    std::uint64_t exhaustive_bound = 0;         // exact broadcast search (0 disables)
};

struct GraphCheck {
    std::uint64_t n = 0;
    Residue a = 0;
    std::vector<std::string> failures;  // empty when every invariant holds
};

/// Every invariant for TL_n(a, a-1, 1): classification, diagram, metrics
/// against BFS, EJ round trip and isomorphism, distance distribution, routing,
/// gossip and broadcast simulation, quotient covers.
GraphCheck check_graph(std::uint64_t n, Residue a, const VerifyOptions& options);

struct VerifyReport {
    std::uint64_t orders = 0;  // constructible orders visited
    std::uint64_t graphs = 0;  // isomorphism classes checked
    std::vector<GraphCheck> failures;
    bool ok() const { return failures.empty(); }
};

/// check_graph for one generator per isomorphism class of every
/// constructible n <= max_n, fanned out over worker threads. progress, if
/// given, is called with (done, total) from the calling thread.
VerifyReport verify_all(const VerifyOptions& options,
                        const std::function<void(std::size_t, std::size_t)>& progress = {});

/// Worker count from FROBCIRC_THREADS, else the hardware concurrency (>= 1).
unsigned default_thread_count();

}  // namespace frobcirc
