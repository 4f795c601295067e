// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "frobcirc/graph.hpp"
#include "frobcirc/numtheory.hpp"

namespace frobcirc {

/// Materialized adjacency is only built up to this order.
inline constexpr std::uint64_t kMaxMaterializedOrder = 1'000'000;

/// Ordered pair of adjacent vertices.
struct Arc {
    Residue tail = 0;
    Residue head = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// 6-valent circulant TL_n(a, b, c) = Cay(Z_n, {±a, ±b, ±c}), stored implicitly.
class Circulant {
public:
    Circulant(std::uint64_t n, std::array<Residue, 3> steps);

    std::uint64_t order() const { return n_; }
    const std::array<Residue, 3>& steps() const { return steps_; }
    /// {±a, ±b, ±c} sorted ascending.
    const std::array<Residue, 6>& connection_set() const { return connection_; }
    bool is_adjacent(Residue u, Residue v) const;
    /// Index of (head - tail) in connection_set(), or -1 if not an arc.
    int arc_label(Residue tail, Residue head) const;
    std::array<Residue, 6> neighbors(Residue v) const;

    AdjacencyGraph materialize() const;

private:
    std::uint64_t n_;
    std::array<Residue, 3> steps_;
    std::array<Residue, 6> connection_;
};

/// TL_n(a, a-1, 1) with a^2 - a + 1 ≡ 0 (mod n) and n ≡ 1 (mod 6): the
/// connection set equals the order-6 multiplicative group H = <a>.
class FrobeniusCirculant {
public:
    /// Validates every structural invariant; throws PreconditionError.
    FrobeniusCirculant(std::uint64_t n, Residue a);

    std::uint64_t order() const { return n_; }
    Residue generator() const { return a_; }
    /// a^0, a^1, ..., a^5 modulo n; equals {1, a, a-1, -1, -a, 1-a}.
    const std::array<Residue, 6>& powers() const { return powers_; }
    const std::array<Residue, 6>& connection_set() const { return circulant_.connection_set(); }
    const Circulant& as_circulant() const { return circulant_; }

    std::array<Residue, 6> neighbors(Residue v) const;
    /// {x·h : h ∈ H}, sorted; x must be nonzero.
    std::array<Residue, 6> h_orbit(Residue x) const;
    /// Index k with a^k = h, or -1 when h ∉ H.
    int power_index(Residue h) const;

    AdjacencyGraph materialize() const { return circulant_.materialize(); }

private:
    std::uint64_t n_;
    Residue a_;
    std::array<Residue, 6> powers_;
    Circulant circulant_;
};

std::vector<std::uint32_t> bfs_distances(const Circulant& g, Residue source);
std::vector<std::uint32_t> bfs_distances(const FrobeniusCirculant& g, Residue source);

/// Bound on the diameter derived from the maximal order 3k^2 + 3k + 1 of a
/// diameter-k geometric circulant: ceil((1 + sqrt(12n - 3)) / 3).
std::uint32_t diameter_upper_bound(std::uint64_t n);

/// min{i + j : u ≡ (i + j·a)·a^k (mod n), i, j >= 0, 0 <= k <= 5}.
std::uint32_t distance_closed_form(const FrobeniusCirculant& g, Residue u);
std::uint32_t distance_closed_form(const FrobeniusCirculant& g, Residue u, std::uint32_t search_bound);

/// True iff multiplication by m fixes the connection set and cycles it as a
/// single 6-cycle. Requires gcd(m, n) = 1.
bool is_complete_rotation(const FrobeniusCirculant& g, Residue m);

/// Three Hamilton cycles stepping by 1, a and a-1, each starting at 0.
std::array<std::vector<Residue>, 3> hamilton_decomposition(const FrobeniusCirculant& g);

/// min(a, -a^2 mod n): one representative per isomorphism class.
Residue canonical_generator(std::uint64_t n, Residue a);

}  // namespace frobcirc
