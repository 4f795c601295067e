// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "frobcirc/eisenstein.hpp"
#include "frobcirc/error.hpp"
#include "oracles.hpp"

using namespace frobcirc;

namespace {

// canonical (c, d) with c >= d >= 0 and 2 <= c^2 + cd + d^2 <= max_norm
std::vector<CanonicalPair> canonical_pairs(std::int64_t max_norm) {
    std::vector<CanonicalPair> out;
    for (std::int64_t c = 1; c * c <= max_norm; ++c)
        for (std::int64_t d = 0; d <= c && c * c + c * d + d * d <= max_norm; ++d)
            if (c * c + c * d + d * d >= 2) out.push_back({c, d});
    return out;
}

}  // namespace

TEST(Eisenstein, RingArithmetic) {
    const EJInt rho{0, 1};
    EXPECT_EQ(rho * rho, (EJInt{-1, 1}));
    EXPECT_EQ(rho * rho * rho, (EJInt{-1, 0}));
    for (int k = 0; k < 12; ++k) EXPECT_EQ(ej_norm(ej_unit(k)), 1);
    EXPECT_EQ(ej_unit(2), (EJInt{-1, 1}));
    EXPECT_EQ(ej_unit(-1), ej_unit(5));
    EXPECT_EQ(ej_norm({5, 3}), 49);
    EXPECT_EQ(ej_swap({5, 3}), (EJInt{3, 5}));
    EXPECT_EQ(ej_swap({5, 3}), rho * ej_conj({5, 3}));
    EXPECT_EQ(to_string(EJInt{1, 6}), "1+6ρ");

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coord(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const EJInt u{coord(rng), coord(rng)}, v{coord(rng), coord(rng)};
        EXPECT_EQ(ej_norm(u * v), ej_norm(u) * ej_norm(v));
        EXPECT_EQ(u * ej_conj(u), (EJInt{ej_norm(u), 0}));
        if (v.is_zero()) continue;
        const auto [q, r] = ej_divmod(u, v);
        EXPECT_EQ(q * v + r, u);
        EXPECT_LT(ej_norm(r), ej_norm(v));
    }
}

TEST(Eisenstein, GcdDividesBoth) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coord(-200, 200);
    for (int i = 0; i < 500; ++i) {
        const EJInt k{coord(rng), coord(rng)}, u{coord(rng), coord(rng)}, v{coord(rng), coord(rng)};
        if (k.is_zero() || (u.is_zero() && v.is_zero())) continue;
        const auto g = ej_gcd(k * u, k * v);
        EXPECT_TRUE(ej_divmod(k * u, g).remainder.is_zero());
        EXPECT_TRUE(ej_divmod(k * v, g).remainder.is_zero());
        EXPECT_TRUE(ej_divmod(g, k).remainder.is_zero());
    }
    EXPECT_THROW(ej_gcd({0, 0}, {0, 0}), PreconditionError);
}

TEST(Eisenstein, CanonicalizeIsAClassInvariant) {
    for (const auto& p : canonical_pairs(600)) {
        const EJInt alpha = p.as_ej();
        EXPECT_EQ(canonicalize(alpha), p);
        for (int k = 0; k < 6; ++k) {
            EXPECT_EQ(canonicalize(alpha * ej_unit(k)), p);
            EXPECT_EQ(canonicalize(ej_swap(alpha) * ej_unit(k)), p);
            EXPECT_EQ(canonicalize(ej_conj(alpha) * ej_unit(k)), p);
        }
        const auto assoc = canonical_associate(alpha * ej_unit(4));
        EXPECT_GT(assoc.x, 0);
        EXPECT_GE(assoc.y, 0);
    }
}

TEST(Eisenstein, QuotientMatchesLatticeOracle) {
    for (const auto& p : canonical_pairs(400)) {
        const EJQuotient q(p.as_ej());
        const oracle::EJLattice lattice(p.c, p.d);
        ASSERT_EQ(q.size(), lattice.order());
        std::set<std::uint64_t> images;
        for (std::uint32_t v = 0; v < q.size(); ++v) {
            const auto r = q.representative(v);
            images.insert(lattice.index(r.x, r.y));
            EXPECT_EQ(q.index_of(r + p.as_ej() * EJInt{3, -2}), v);
        }
        EXPECT_EQ(images.size(), q.size());
        EXPECT_EQ(oracle::spheres(q.to_graph().adjacency), oracle::spheres(lattice.graph()));
    }
}

TEST(Eisenstein, DistanceDistributionMatchesBfs) {
    bool midpoint = false, endpoint = false, non_primitive = false;
    for (const auto& p : canonical_pairs(5000)) {
        const auto brute = oracle::spheres(oracle::EJLattice(p.c, p.d).graph());
        ASSERT_EQ(distance_distribution(p.as_ej()), brute) << p.c << "+" << p.d << "ρ";
        EXPECT_EQ(ej_diameter(p.as_ej()) + 1, brute.size());
        midpoint = midpoint || (p.c + p.d) % 2 == 0;
        endpoint = endpoint || (p.c - p.d) % 3 == 0;
        non_primitive = non_primitive || std::gcd(p.c, p.d) > 1;
    }
    EXPECT_TRUE(midpoint && endpoint && non_primitive);
}

TEST(Eisenstein, CirculantRoundTrip) {
    for (std::uint64_t n = 7; n <= 3000; n += 6)
        for (auto a : oracle::scan_solutions(n)) {
            const FrobeniusCirculant g(n, a);
            const auto ej = circulant_to_ej(g);
            EXPECT_EQ(ej_norm(ej.alpha), static_cast<std::int64_t>(n));
            EXPECT_EQ(std::gcd(ej.canonical.c, ej.canonical.d), 1);
            EXPECT_EQ(ej_to_circulant(ej.alpha).generator(), canonical_generator(n, a));
            EXPECT_EQ(ej_to_circulant(ej.canonical.as_ej()).generator(), canonical_generator(n, a));
        }
}

TEST(Eisenstein, Examples) {
    EXPECT_EQ(circulant_to_ej(FrobeniusCirculant(49, 31)).canonical, (CanonicalPair{5, 3}));
    EXPECT_EQ(circulant_to_ej(FrobeniusCirculant(43, 7)).canonical, (CanonicalPair{6, 1}));
    EXPECT_EQ(circulant_to_ej(FrobeniusCirculant(7, 3)).canonical, (CanonicalPair{2, 1}));
    EXPECT_EQ(circulant_to_ej(FrobeniusCirculant(91, 10)).canonical, (CanonicalPair{9, 1}));
    EXPECT_EQ(circulant_to_ej(FrobeniusCirculant(91, 17)).canonical, (CanonicalPair{6, 5}));
    EXPECT_THROW(ej_to_circulant({6, 3}), PreconditionError);
    EXPECT_THROW(ej_to_circulant({2, 0}), PreconditionError);
}

TEST(Eisenstein, IsoMapPreservesEdges) {
    for (std::uint64_t n = 7; n <= 1500; n += 6)
        for (auto a : oracle::scan_solutions(n)) {
            const FrobeniusCirculant g(n, a);
            const auto alpha = circulant_to_ej(g).alpha;
            const auto image = iso_map(g, alpha);
            ASSERT_TRUE(is_isomorphism(g, alpha, image)) << n << " " << a;

            // independent check through the lattice oracle
            const oracle::EJLattice lattice(alpha.x, alpha.y);
            std::vector<std::uint64_t> idx(n);
            for (Residue v = 0; v < n; ++v) idx[v] = lattice.index(image[v].x, image[v].y);
            EXPECT_EQ(std::set<std::uint64_t>(idx.begin(), idx.end()).size(), n);
            const auto adj = lattice.graph();
            for (Residue v = 0; v < n; ++v)
                for (auto w : g.neighbors(v))
                    EXPECT_NE(std::find(adj[idx[v]].begin(), adj[idx[v]].end(), idx[w]), adj[idx[v]].end());
        }
}

TEST(Eisenstein, IsomorphismCheckRejectsBadMaps) {
    const FrobeniusCirculant g(49, 31);
    const auto alpha = circulant_to_ej(g).alpha;
    auto image = iso_map(g, alpha);
    std::swap(image[1], image[2]);
    EXPECT_FALSE(is_isomorphism(g, alpha, image));
}

TEST(Eisenstein, WitnessSatisfiesItsEquation) {
    for (std::uint64_t n = 7; n <= 3000; n += 6)
        for (auto a : oracle::scan_solutions(n)) {
            const FrobeniusCirculant g(n, a);
            const auto alpha = circulant_to_ej(g).alpha;
            const auto w = find_witness(g, alpha);
            EXPECT_TRUE(witness_lhs(g, w) == 1) << n << " " << a << " " << to_string(w.which);
            EXPECT_EQ(canonicalize(w.alpha), canonicalize(alpha));
        }
}

TEST(Eisenstein, ArcTransitivity) {
    for (const auto& p : canonical_pairs(800)) {
        if (ej_norm(p.as_ej()) < 7) continue;
        EXPECT_TRUE(verify_arc_transitive(p.as_ej(), 800)) << p.c << "+" << p.d << "ρ";
    }
    EXPECT_THROW(verify_arc_transitive({40, 0}, 1000), PreconditionError);
}
