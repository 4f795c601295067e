// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "frobcirc/error.hpp"
#include "frobcirc/scheduler.hpp"
#include "frobcirc/simulator.hpp"
#include "oracles.hpp"

using namespace frobcirc;

namespace {

GossipSchedule schedule_for(const FrobeniusCirculant& g) { return gossip_schedule(g, build_spanning_tree(g, build_diagram(g))); }

// Store-and-forward, all-port flooding along the explicit schedule with
// per-vertex knowledge sets; returns the step after which everyone knows
// everything, or 0 on a violation.
std::size_t oracle_gossip(std::uint64_t n, Residue a, const GossipSchedule& s) {
    const auto adj = oracle::circulant(n, a);
    std::vector<std::vector<bool>> know(n, std::vector<bool>(n, false));
    for (std::uint64_t v = 0; v < n; ++v) know[v][v] = true;
    for (std::size_t i = 0; i < s.total_steps(); ++i) {
        const auto step = s.expanded(i);
        std::set<std::pair<Residue, Residue>> used;
        std::vector<std::pair<Residue, Residue>> deliveries;
        for (const auto& x : step) {
            if (!used.insert({x.tail, x.head}).second) return 0;
            if (std::find(adj[x.tail].begin(), adj[x.tail].end(), x.head) == adj[x.tail].end()) return 0;
            if (!know[x.tail][x.origin]) return 0;
            deliveries.emplace_back(x.head, x.origin);
        }
        for (auto [v, o] : deliveries) know[v][o] = true;
    }
    for (const auto& row : know)
        for (bool b : row)
            if (!b) return 0;
    return s.total_steps();
}

}  // namespace

TEST(Simulator, GeneratedGossipIsValid) {
    for (std::uint64_t n = 7; n <= 800; n += 6)
        for (auto a : oracle::scan_solutions(n)) {
            const FrobeniusCirculant g(n, a);
            const auto s = schedule_for(g);
            const auto r = run_gossip(g, s);
            ASSERT_TRUE(r.valid) << n << " " << a << ": " << r.diagnostic;
            EXPECT_TRUE(r.full_state);
            EXPECT_EQ(r.completion_step, (n - 1) / 6);
            EXPECT_TRUE(r.every_arc_once && r.origin_matching && r.shortest_paths);
            if (n <= 200) EXPECT_EQ(oracle_gossip(n, a, s), (n - 1) / 6);
        }
}

TEST(Simulator, ReducedModeAgrees) {
    for (std::uint64_t n : {49u, 301u, 1519u, 4123u}) {
        const FrobeniusCirculant g(n, oracle::scan_solutions(n).front());
        const auto s = schedule_for(g);
        const auto reduced = run_gossip(g, s, {0});
        EXPECT_FALSE(reduced.full_state);
        EXPECT_TRUE(reduced.valid) << reduced.diagnostic;
        EXPECT_EQ(reduced.completion_step, (n - 1) / 6);
        if (n <= 1519) {
            const auto full = run_gossip(g, s);
            EXPECT_TRUE(full.full_state);
            EXPECT_EQ(full.completion_step, reduced.completion_step);
        }
    }
}

TEST(Simulator, DuplicatedArcIsRejected) {
    const FrobeniusCirculant g(49, 31);
    auto s = schedule_for(g).explicit_form();
    s.steps[2].push_back(s.steps[2].front());
    const auto r = run_gossip(g, s);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.failed_step, 3u);
    EXPECT_NE(r.diagnostic.find("used twice"), std::string::npos) << r.diagnostic;
}

TEST(Simulator, ForwardingUnknownMessageIsRejected) {
    const FrobeniusCirculant g(49, 31);
    auto s = schedule_for(g).explicit_form();
    std::swap(s.steps[0], s.steps[3]);
    const auto r = run_gossip(g, s);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.failed_step, 1u);
}

TEST(Simulator, NonAdjacentTransmissionIsRejected) {
    const FrobeniusCirculant g(49, 31);
    auto s = schedule_for(g).explicit_form();
    s.steps[0][0].head = (s.steps[0][0].tail + 5) % 49;
    EXPECT_FALSE(run_gossip(g, s).valid);
}

TEST(Simulator, TruncatedScheduleDoesNotComplete) {
    const FrobeniusCirculant g(49, 31);
    auto s = schedule_for(g);
    s.steps.pop_back();
    const auto r = run_gossip(g, s);
    EXPECT_FALSE(r.completion_step);
    EXPECT_FALSE(r.valid);
}

TEST(Simulator, LargeExplicitScheduleNeedsFullState) {
    const FrobeniusCirculant g(301, oracle::scan_solutions(301).front());
    EXPECT_THROW(run_gossip(g, schedule_for(g).explicit_form(), {100}), PreconditionError);
}

TEST(Simulator, BroadcastReports) {
    const FrobeniusCirculant g(49, 31);
    const auto s = broadcast_schedule(g, build_diagram(g));
    const auto ok = run_broadcast(g, s, 0);
    EXPECT_TRUE(ok.valid) << ok.diagnostic;
    EXPECT_EQ(ok.horizon, 7u);
    EXPECT_EQ(ok.diameter, 4u);

    auto twice = s;
    for (auto& x : twice.assignments)
        if (x.time == 3 && x.sender == 0) x.time = 2;  // source sends twice in round 2
    const auto bad = run_broadcast(g, twice, 0);
    EXPECT_FALSE(bad.valid);
    EXPECT_EQ(bad.failed_time, 2u);

    auto early = s;
    early.assignments.back().time = 1;
    EXPECT_FALSE(run_broadcast(g, early, 0).valid);

    auto missing = s;
    missing.assignments.pop_back();
    EXPECT_FALSE(run_broadcast(g, missing, 0).valid);
}

TEST(Simulator, GreedyBaselineIsSlower) {
    const std::map<std::uint64_t, std::pair<Residue, std::size_t>> expected{{7, {3, 1}}, {43, {7, 24}}, {49, {31, 33}}};
    for (const auto& [n, v] : expected) {
        const FrobeniusCirculant g(n, v.first);
        const auto steps = greedy_gossip_baseline(g.materialize());
        EXPECT_EQ(steps, v.second) << n;
        EXPECT_GE(steps, (n - 1) / 6);
    }
}
