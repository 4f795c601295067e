// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <set>

#include "frobcirc/circulant.hpp"
#include "frobcirc/error.hpp"
#include "oracles.hpp"

using namespace frobcirc;

namespace {

std::vector<std::pair<std::uint64_t, Residue>> small_graphs(std::uint64_t max_n) {
    std::vector<std::pair<std::uint64_t, Residue>> out;
    for (std::uint64_t n = 7; n <= max_n; n += 6)
        for (auto a : oracle::scan_solutions(n))
            out.emplace_back(n, a);
    return out;
}

}  // namespace

TEST(Circulant, RejectsNonSolutions) {
    EXPECT_THROW(FrobeniusCirculant(49, 30), PreconditionError);
    EXPECT_THROW(FrobeniusCirculant(21, 5), PreconditionError);
    EXPECT_NO_THROW(FrobeniusCirculant(49, 31));
}

TEST(Circulant, PowersFormTheConnectionSet) {
    for (auto [n, a] : small_graphs(400)) {
        const FrobeniusCirculant g(n, a);
        std::set<Residue> powers(g.powers().begin(), g.powers().end());
        std::set<Residue> s(g.connection_set().begin(), g.connection_set().end());
        const auto brute = oracle::connection_set(n, a);
        EXPECT_EQ(powers, s) << n << " " << a;
        EXPECT_EQ(s, std::set<Residue>(brute.begin(), brute.end())) << n << " " << a;
        EXPECT_EQ(g.powers()[0], 1u);
        EXPECT_EQ(g.powers()[3], n - 1);
        EXPECT_EQ(mul_mod(g.powers()[5], a, n), 1u);
        for (int k = 0; k < 6; ++k) EXPECT_EQ(g.power_index(g.powers()[static_cast<std::size_t>(k)]), k);
    }
}

TEST(Circulant, NeighborsAndAdjacency) {
    const FrobeniusCirculant g(49, 31);
    const auto adj = oracle::circulant(49, 31);
    for (Residue v = 0; v < 49; ++v) {
        auto nb = g.neighbors(v);
        std::multiset<Residue> mine(nb.begin(), nb.end()), brute(adj[v].begin(), adj[v].end());
        EXPECT_EQ(mine, brute);
        for (auto w : nb) EXPECT_TRUE(g.as_circulant().is_adjacent(v, w));
    }
    EXPECT_FALSE(g.as_circulant().is_adjacent(0, 5));
    EXPECT_EQ(g.materialize().edge_count(), 3u * 49);
}

TEST(Circulant, HOrbitIsMultiplicative) {
    const FrobeniusCirculant g(91, 17);
    const auto orbit = g.h_orbit(5);
    std::set<Residue> expect;
    for (auto h : g.powers()) expect.insert(mul_mod(5, h, 91));
    EXPECT_TRUE(std::is_sorted(orbit.begin(), orbit.end()));
    EXPECT_EQ(std::set<Residue>(orbit.begin(), orbit.end()), expect);
}

TEST(Circulant, ClosedFormDistanceMatchesBfs) {
    for (auto [n, a] : small_graphs(700)) {
        const FrobeniusCirculant g(n, a);
        const auto d = oracle::bfs(oracle::circulant(n, a), 0);
        for (Residue u = 0; u < n; ++u) ASSERT_EQ(distance_closed_form(g, u), d[u]) << n << " " << a << " " << u;
        const auto lib = bfs_distances(g, 0);
        EXPECT_TRUE(std::equal(lib.begin(), lib.end(), d.begin()));
        EXPECT_LE(*std::max_element(d.begin(), d.end()), diameter_upper_bound(n));
    }
}

TEST(Circulant, MultiplicationByAIsACompleteRotation) {
    for (auto [n, a] : small_graphs(500)) {
        const FrobeniusCirculant g(n, a);
        EXPECT_TRUE(is_complete_rotation(g, a));
        EXPECT_TRUE(is_complete_rotation(g, g.powers()[5]));
        EXPECT_FALSE(is_complete_rotation(g, n - 1));  // order 2, fixes S but is not a 6-cycle
    }
}

TEST(Circulant, HamiltonDecompositionCoversEveryEdgeOnce) {
    for (auto [n, a] : small_graphs(300)) {
        const FrobeniusCirculant g(n, a);
        std::set<std::pair<Residue, Residue>> edges;
        for (const auto& cycle : hamilton_decomposition(g)) {
            ASSERT_EQ(cycle.size(), n);
            EXPECT_EQ(std::set<Residue>(cycle.begin(), cycle.end()).size(), n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto u = cycle[i], v = cycle[(i + 1) % n];
                EXPECT_TRUE(g.as_circulant().is_adjacent(u, v));
                edges.insert(std::minmax(u, v));
            }
        }
        EXPECT_EQ(edges.size(), 3 * n);
    }
}

TEST(Circulant, CanonicalGeneratorPicksOnePerClass) {
    for (std::uint64_t n : {91u, 133u, 1519u, 4123u}) {
        std::set<Residue> canon;
        for (auto a : oracle::scan_solutions(n)) {
            const auto c = canonical_generator(n, a);
            EXPECT_EQ(oracle::connection_set(n, c), oracle::connection_set(n, a)) << n;
            canon.insert(c);
        }
        EXPECT_EQ(canon.size(), oracle::distinct_connection_sets(n));
    }
}

TEST(Circulant, NinetyOneGivesTwoNonIsomorphicGraphs) {
    // different sphere sizes certify that the two classes are not isomorphic
    const auto s10 = oracle::spheres(oracle::circulant(91, 10));
    const auto s17 = oracle::spheres(oracle::circulant(91, 17));
    EXPECT_EQ(s10, (std::vector<std::uint64_t>{1, 6, 12, 18, 24, 24, 6}));
    EXPECT_EQ(s17, (std::vector<std::uint64_t>{1, 6, 12, 18, 24, 30}));
}

TEST(Graph, ExportFormats) {
    const auto g = FrobeniusCirculant(7, 3).materialize();
    const auto dot = to_dot(g, "TL_7");
    EXPECT_NE(dot.find("graph \"TL_7\" {"), std::string::npos);
    const auto edges = to_edge_list(g);
    EXPECT_EQ(std::count(edges.begin(), edges.end(), '\n'), 21);
}
