// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "frobcirc/eisenstein.hpp"
#include "frobcirc/error.hpp"
#include "frobcirc/scheduler.hpp"
#include "oracles.hpp"

using namespace frobcirc;

namespace {

std::vector<std::pair<std::uint64_t, Residue>> graphs_up_to(std::uint64_t max_n) {
    std::vector<std::pair<std::uint64_t, Residue>> out;
    for (std::uint64_t n = 7; n <= max_n; n += 6)
        for (auto a : oracle::scan_solutions(n)) out.emplace_back(n, a);
    return out;
}

// Single-port broadcast rules checked from scratch: every non-source vertex
// hears once, from a neighbour informed strictly earlier, and no vertex sends
// twice in one round.
std::string broadcast_violation(std::uint64_t n, Residue a, const BroadcastSchedule& s) {
    const auto adj = oracle::circulant(n, a);
    std::vector<std::uint32_t> informed(n, UINT32_MAX);
    informed[s.source] = 0;
    std::set<std::pair<Residue, std::uint32_t>> busy;
    for (const auto& x : s.assignments) {
        if (x.vertex >= n || x.sender >= n) return "vertex out of range";
        if (informed[x.vertex] != UINT32_MAX) return "vertex informed twice";
        informed[x.vertex] = x.time;
    }
    for (const auto& x : s.assignments) {
        if (x.time == 0 || x.time > s.horizon) return "time outside the horizon";
        if (informed[x.sender] >= x.time) return "sender not informed in time";
        if (std::find(adj[x.sender].begin(), adj[x.sender].end(), x.vertex) == adj[x.sender].end())
            return "sender not adjacent";
        if (!busy.insert({x.sender, x.time}).second) return "sender used twice in one round";
    }
    for (auto t : informed)
        if (t == UINT32_MAX) return "vertex never informed";
    return {};
}

}  // namespace

TEST(Diagram, FortyNine) {
    const FrobeniusCirculant g(49, 31);
    const auto d = build_diagram(g);
    EXPECT_EQ(d.profile, (std::vector<std::uint32_t>{4, 3, 1, 0, 0}));
    EXPECT_EQ(d.r, 4u);
    EXPECT_EQ(d.diameter(), 4u);
    std::set<Residue> y;
    for (const auto& c : d.sector) {
        y.insert(c.vertex);
        EXPECT_EQ(c.vertex, (c.i + std::uint64_t{c.j} * 31) % 49);
    }
    EXPECT_EQ(y, (std::set<Residue>{1, 2, 3, 4, 32, 33, 34, 14}));
    EXPECT_EQ(type_vector(d), (std::vector<std::uint64_t>{1, 2, 3, 2}));
}

TEST(Diagram, SmallProfiles) {
    const std::map<std::pair<std::uint64_t, Residue>, std::vector<std::uint32_t>> expected{
        {{7, 3}, {1, 0}},         {{13, 4}, {2, 0, 0}},       {{19, 8}, {2, 1, 0}},
        {{37, 11}, {3, 2, 1, 0}}, {{43, 7}, {3, 3, 1, 0}},
    };
    for (const auto& [key, profile] : expected) {
        const FrobeniusCirculant g(key.first, key.second);
        EXPECT_EQ(build_diagram(g).profile, profile) << key.first;
    }
}

TEST(Diagram, SectorRotationsTileTheGroup) {
    for (auto [n, a] : graphs_up_to(1500)) {
        const FrobeniusCirculant g(n, a);
        const auto d = build_diagram(g);
        const auto dist = oracle::bfs(oracle::circulant(n, a), 0);
        const auto hex = hexagonal_coordinates(g, d);
        ASSERT_EQ(hex.size(), n - 1);
        std::set<Residue> seen;
        for (const auto& h : hex) {
            EXPECT_EQ(dist[h.vertex], h.i + h.j) << n << " " << a;
            EXPECT_EQ(h.vertex, mul_mod((h.i + std::uint64_t{h.j} * a) % n, g.powers()[h.k], n));
            seen.insert(h.vertex);
        }
        EXPECT_EQ(seen.size(), n - 1);
        EXPECT_FALSE(seen.count(0));
        std::uint64_t rows = 0;
        for (std::size_t j = 0; j < d.profile.size(); ++j) {
            rows += d.profile[j];
            if (j > 0) EXPECT_LE(d.profile[j], d.profile[j - 1]);
        }
        EXPECT_EQ(rows, (n - 1) / 6);
        EXPECT_EQ(d.profile.front(), d.r);
        EXPECT_EQ(d.diameter(), *std::max_element(dist.begin(), dist.end()));
    }
}

TEST(Metrics, AgainstBfs) {
    for (auto [n, a] : graphs_up_to(2000)) {
        const FrobeniusCirculant g(n, a);
        const auto d = build_diagram(g);
        const auto adj = oracle::circulant(n, a);
        const auto spheres = oracle::spheres(adj);
        const auto tv = type_vector(d);
        ASSERT_EQ(tv.size() + 1, spheres.size());
        for (std::size_t t = 0; t < tv.size(); ++t) EXPECT_EQ(6 * tv[t], spheres[t + 1]);
        const auto sum = oracle::distance_sum(adj);
        const auto pi = forwarding_index(d);
        // n·sum ordered distances spread over 3n edges
        EXPECT_EQ(3 * pi, sum) << n;
        EXPECT_EQ(forwarding_index_from_type(tv), pi);
        EXPECT_EQ(2 * wiener_index(n, pi), n * sum);
        EXPECT_EQ(gossip_time(g), (n - 1) / 6);
        EXPECT_EQ(type_vector_from_cd(circulant_to_ej(g).canonical, n), tv) << n;
    }
}

TEST(Metrics, ClosedFormIsReportedOnly) {
    EXPECT_DOUBLE_EQ(forwarding_index_closed_form({6, 1}, 43), 36.0);
    EXPECT_DOUBLE_EQ(forwarding_index_closed_form({5, 3}, 49), 363.5);
}

TEST(Metrics, HexagonalMeshes) {
    for (std::uint64_t k = 2; k <= 15; ++k) {
        const std::uint64_t n = 3 * k * k + 3 * k + 1;
        const FrobeniusCirculant g(n, 3 * k + 2);
        const auto d = build_diagram(g);
        std::vector<std::uint32_t> profile;
        for (std::uint64_t i = k + 1; i-- > 0;) profile.push_back(static_cast<std::uint32_t>(i));
        EXPECT_EQ(d.profile, profile) << k;
        EXPECT_EQ(d.diameter(), k);
        EXPECT_EQ(3 * forwarding_index(d), oracle::distance_sum(oracle::circulant(n, 3 * k + 2)));
        EXPECT_EQ(forwarding_index(d), k * (k + 1) * (2 * k + 1) / 3) << k;
        EXPECT_EQ(gossip_time(g), k * (k + 1) / 2);
    }
}

TEST(Metrics, FortyNineSummary) {
    const auto m = compute_metrics(FrobeniusCirculant(49, 31), {0, 0});
    EXPECT_EQ(m.canonical_generator, 19u);
    EXPECT_EQ(m.cd, (CanonicalPair{5, 3}));
    EXPECT_EQ(m.diameter, 4u);
    EXPECT_EQ(m.pi, 44u);
    EXPECT_EQ(m.arc_pi, 22u);
    EXPECT_EQ(m.wiener, 3234u);
    EXPECT_EQ(m.gossip_time, 8u);
    ASSERT_TRUE(m.broadcast);
    EXPECT_EQ(m.broadcast->horizon, 7u);
    EXPECT_FALSE(m.broadcast->certified);
}

TEST(Routing, TreeIsShortestPath) {
    for (auto [n, a] : graphs_up_to(1000)) {
        const FrobeniusCirculant g(n, a);
        const auto t = build_spanning_tree(g, build_diagram(g));
        EXPECT_TRUE(is_shortest_path_tree(g, t));
        const auto dist = oracle::bfs(oracle::circulant(n, a), 0);
        ASSERT_EQ(t.parent.size(), n);
        EXPECT_EQ(t.parent[0], 0u);
        for (Residue v = 1; v < n; ++v) {
            EXPECT_EQ(t.level[v], dist[v]);
            EXPECT_EQ(dist[t.parent[v]] + 1, dist[v]);
            EXPECT_TRUE(g.as_circulant().is_adjacent(v, t.parent[v]));
        }
        EXPECT_EQ(t.branches.size(), (n - 1) / 6);
    }
    const FrobeniusCirculant g(49, 31);
    EXPECT_EQ(build_spanning_tree(g, build_diagram(g)).parent[34], 33u);
}

TEST(Routing, RoutesAreShortestPaths) {
    const Residue a = oracle::scan_solutions(217).front();
    const FrobeniusCirculant g(217, a);
    const auto t = build_spanning_tree(g, build_diagram(g));
    const auto adj = oracle::circulant(217, a);
    for (Residue u = 0; u < 217; u += 13) {
        const auto dist = oracle::bfs(adj, static_cast<std::uint32_t>(u));
        for (Residue v = 0; v < 217; ++v) {
            const auto path = route(t, u, v);
            ASSERT_EQ(path.front(), u);
            ASSERT_EQ(path.back(), v);
            EXPECT_EQ(path.size(), dist[v] + 1u);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_TRUE(g.as_circulant().is_adjacent(path[i], path[i + 1]));
        }
    }
}

TEST(Routing, LoadsMatchExplicitPathWalk) {
    for (auto [n, a] : graphs_up_to(400)) {
        const FrobeniusCirculant g(n, a);
        const auto d = build_diagram(g);
        const auto t = build_spanning_tree(g, d);
        const auto loads = routing_loads(g, t);
        // walk all n(n-1) routes and count uses of every arc (v, v + s)
        const auto& c = g.as_circulant();
        std::vector<std::uint64_t> arc_use(6 * n, 0);
        for (Residue u = 0; u < n; ++u)
            for (Residue v = 0; v < n; ++v) {
                const auto path = route(t, u, v);
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    ++arc_use[6 * path[i] + static_cast<std::size_t>(c.arc_label(path[i], path[i + 1]))];
            }
        std::set<std::uint64_t> arcs(arc_use.begin(), arc_use.end()), edges;
        for (Residue v = 0; v < n; ++v)
            for (int k = 0; k < 6; ++k) {
                const auto w = add_mod(v, c.connection_set()[static_cast<std::size_t>(k)], n);
                edges.insert(arc_use[6 * v + static_cast<std::size_t>(k)] +
                             arc_use[6 * w + static_cast<std::size_t>(c.arc_label(w, v))]);
            }
        const auto pi = forwarding_index(d);
        EXPECT_EQ(arcs, (std::set<std::uint64_t>{pi / 2})) << n << " " << a;
        EXPECT_EQ(edges, (std::set<std::uint64_t>{pi}));
        EXPECT_TRUE(loads.arc_uniform && loads.edge_uniform);
        EXPECT_EQ(loads.max_arc_load, pi / 2);
        EXPECT_EQ(loads.max_edge_load, pi);
    }
}

TEST(Gossip, TemplateShape) {
    for (auto [n, a] : graphs_up_to(1000)) {
        const FrobeniusCirculant g(n, a);
        const auto s = gossip_schedule(g, build_spanning_tree(g, build_diagram(g)));
        EXPECT_TRUE(s.translation_invariant);
        ASSERT_EQ(s.total_steps(), (n - 1) / 6);
        for (std::size_t i = 0; i < s.total_steps(); ++i) {
            ASSERT_EQ(s.steps[i].size(), 6u);
            std::set<Residue> labels;
            for (const auto& x : s.steps[i]) {
                EXPECT_EQ(x.origin, 0u);
                labels.insert(sub_mod(x.head, x.tail, n));
            }
            EXPECT_EQ(labels, std::set<Residue>(g.connection_set().begin(), g.connection_set().end()));
            if (n <= 200) EXPECT_EQ(s.expanded(i).size(), 6 * n);
        }
    }
    const FrobeniusCirculant g7(7, 3);
    const auto explicit_form = gossip_schedule(g7, build_spanning_tree(g7, build_diagram(g7))).explicit_form();
    EXPECT_FALSE(explicit_form.translation_invariant);
    EXPECT_EQ(explicit_form.steps.front().size(), 42u);
}

TEST(Broadcast, SchemeHorizons) {
    const std::map<std::pair<std::uint64_t, Residue>, std::uint32_t> expected{{{49, 31}, 7}, {{43, 7}, 6}, {{7, 3}, 3}};
    for (const auto& [key, horizon] : expected) {
        const FrobeniusCirculant g(key.first, key.second);
        const auto s = broadcast_schedule(g, build_diagram(g));
        EXPECT_EQ(s.horizon, horizon);
        EXPECT_EQ(broadcast_violation(key.first, key.second, s), "");
    }
}

TEST(Broadcast, SchemeIsValidEverywhere) {
    for (auto [n, a] : graphs_up_to(3000)) {
        const FrobeniusCirculant g(n, a);
        const auto d = build_diagram(g);
        const auto s = broadcast_schedule(g, d);
        EXPECT_EQ(broadcast_violation(n, a, s), "") << n << " " << a;
        EXPECT_TRUE(s.horizon == d.diameter() + 2 || s.horizon == d.diameter() + 3) << n << " " << a;
        if (n <= 300) {
            const auto moved = translate(s, n / 2);
            EXPECT_EQ(moved.source, n / 2);
            EXPECT_EQ(broadcast_violation(n, a, moved), "");
        }
    }
}

TEST(Broadcast, ExactValues) {
    const FrobeniusCirculant g43(43, 7), g49(49, 31), g7(7, 3);
    const auto b43 = broadcast_time(g43, build_diagram(g43));
    ASSERT_TRUE(b43.certified);
    EXPECT_EQ(b43.exact, 6u);
    const auto b7 = broadcast_time(g7, build_diagram(g7));
    EXPECT_EQ(b7.exact, 3u);

    // a 6-round broadcast exists for n = 49 although the scheme needs 7
    const auto b49 = broadcast_time(g49, build_diagram(g49));
    ASSERT_TRUE(b49.certified);
    EXPECT_EQ(b49.exact, 6u);
    EXPECT_EQ(b49.horizon, 7u);
    ASSERT_TRUE(b49.witness);
    EXPECT_EQ(b49.witness->horizon, 6u);
    EXPECT_EQ(broadcast_violation(49, 31, *b49.witness), "");

    const auto five = broadcast_search(g49, 5, 20'000'000);
    ASSERT_TRUE(five.feasible);
    EXPECT_FALSE(*five.feasible);
}

TEST(Broadcast, ExactWithinTwoOfDiameter) {
    for (auto [n, a] : graphs_up_to(130)) {
        if (canonical_generator(n, a) != a) continue;
        const FrobeniusCirculant g(n, a);
        const auto d = build_diagram(g);
        const auto b = broadcast_time(g, d);
        ASSERT_TRUE(b.certified) << n;
        const auto lower = std::max<std::uint32_t>(d.diameter(), static_cast<std::uint32_t>(std::ceil(std::log2(n))));
        EXPECT_GE(*b.exact, lower);
        EXPECT_TRUE(*b.exact == d.diameter() + 2 || *b.exact == d.diameter() + 3) << n;
        EXPECT_LE(*b.exact, b.horizon);
        if (b.witness) EXPECT_EQ(broadcast_violation(n, a, *b.witness), "");
    }
}

TEST(Broadcast, OrderLimits) {
    const FrobeniusCirculant g(1519, oracle::scan_solutions(1519).front());
    const auto b = broadcast_time(g, build_diagram(g));
    EXPECT_FALSE(b.certified);
    EXPECT_FALSE(b.exact);
}
