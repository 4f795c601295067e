// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "frobcirc/circulant.hpp"
#include "frobcirc/graph.hpp"

namespace frobcirc {

/// x + yρ with ρ = (1 + sqrt(-3)) / 2, so ρ^2 = ρ - 1 and ρ^3 = -1.
/// Arithmetic is exact and throws PreconditionError on int64 overflow.
struct EJInt {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const EJInt&, const EJInt&) = default;
    bool is_zero() const { return x == 0 && y == 0; }
};

EJInt operator+(EJInt u, EJInt v);
EJInt operator-(EJInt u, EJInt v);
EJInt operator-(EJInt u);
EJInt operator*(EJInt u, EJInt v);

inline EJInt ej_add(EJInt u, EJInt v) { return u + v; }
inline EJInt ej_neg(EJInt u) { return -u; }
inline EJInt ej_mul(EJInt u, EJInt v) { return u * v; }
/// Complex conjugate: (x + y) - yρ.
EJInt ej_conj(EJInt u);
/// d + cρ for u = c + dρ; equals ρ·conj(u).
EJInt ej_swap(EJInt u);
/// x^2 + xy + y^2.
std::int64_t ej_norm(EJInt u);
/// ρ^k for any integer k: 1, ρ, -1+ρ, -1, -ρ, 1-ρ.
EJInt ej_unit(int k);

std::string to_string(EJInt u);

struct EJDivMod {
    EJInt quotient;
    EJInt remainder;
};

/// u = q·v + r with N(r) < N(v). Each coordinate of u/v is rounded to the
/// nearest integer, halves toward negative infinity.
EJDivMod ej_divmod(EJInt u, EJInt v);

/// Associate of u with x > 0 and y >= 0; 0 stays 0.
EJInt canonical_associate(EJInt u);

/// Greatest common divisor in canonical associate form.
EJInt ej_gcd(EJInt u, EJInt v);

struct CanonicalPair {
    std::int64_t c = 0;
    std::int64_t d = 0;

    friend bool operator==(const CanonicalPair&, const CanonicalPair&) = default;
    EJInt as_ej() const { return {c, d}; }
};

/// Among the twelve elements ρ^j·α and ρ^j·swap(α), the one with c >= d >= 0;
/// lexicographically largest on ties.
CanonicalPair canonicalize(EJInt alpha);

struct EJIntHash {
    std::size_t operator()(const EJInt& u) const noexcept {
        return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(u.x) * 0x9E3779B97F4A7C15ULL ^
                                          static_cast<std::uint64_t>(u.y));
    }
};

/// Explicit residue system of Z[ρ]/(α). Vertex k is the ej_divmod remainder
/// of its class; vertices are numbered in BFS order from 0 along unit steps.
/// Works for every nonzero α, including units (a single vertex).
class EJQuotient {
public:
    explicit EJQuotient(EJInt alpha);

    EJInt modulus() const { return alpha_; }
    std::size_t size() const { return reps_.size(); }
    const std::vector<EJInt>& representatives() const { return reps_; }
    EJInt representative(std::uint32_t v) const { return reps_.at(v); }
    EJInt reduce(EJInt u) const { return ej_divmod(u, alpha_).remainder; }
    /// Vertex index of the class of u.
    std::uint32_t index_of(EJInt u) const;
    /// Index of v + ρ^k for k = 0..5 (may repeat when N(α) < 7).
    const std::array<std::uint32_t, 6>& unit_neighbors(std::uint32_t v) const { return steps_.at(v); }

    /// Simple graph: loops and repeated neighbours dropped. Labels "x+yρ".
    AdjacencyGraph to_graph() const;

private:
    EJInt alpha_;
    std::vector<EJInt> reps_;
    std::vector<std::array<std::uint32_t, 6>> steps_;
    std::unordered_map<EJInt, std::uint32_t, EJIntHash> index_;
};

/// The Cayley graph EJ_α; requires N(α) >= 7.
struct EJGraph {
    EJInt alpha;
    std::uint64_t n = 0;
    CanonicalPair canonical;
};

EJGraph make_ej_graph(EJInt alpha);

/// α = gcd(n, a - ρ), the generator of the kernel of x + yρ -> x + ya (mod n).
EJGraph circulant_to_ej(const FrobeniusCirculant& g);

/// -c·d^{-1} mod N(α) before canonicalization; x + yρ -> x + y·a (mod n)
/// then has kernel (α).
Residue ej_generator(EJInt alpha);

/// Frobenius circulant with canonical generator isomorphic to EJ_α.
/// Requires gcd(c, d) = 1, N(α) ≡ 1 (mod 6), N(α) >= 7.
FrobeniusCirculant ej_to_circulant(EJInt alpha);

/// Multiplier m used by iso_map: m·S = {±c, ±d, ±(c+d)}.
std::int64_t iso_multiplier(const FrobeniusCirculant& g, EJInt alpha);

/// Vertex u of g goes to ψ(m·u) where ψ(dx - cy) = x + yρ (mod α).
/// Entries are ej_divmod remainders modulo α.
std::vector<EJInt> iso_map(const FrobeniusCirculant& g, EJInt alpha);

/// Exhaustive check that image is a bijection onto Z[ρ]/(α) carrying the
/// edges of g onto the edges of EJ_α.
bool is_isomorphism(const FrobeniusCirculant& g, EJInt alpha, const std::vector<EJInt>& image);

/// W_0..W_D from the closed form for canonical (c, d).
std::vector<std::uint64_t> distance_distribution(EJInt alpha);
std::uint32_t ej_diameter(EJInt alpha);

enum class WitnessCase { Eq7, Eq8, Eq9 };

std::string to_string(WitnessCase c);

struct DiophantineWitness {
    WitnessCase which = WitnessCase::Eq7;
    std::int64_t m = 0;
    std::int64_t r = 0;
    std::int64_t s = 0;
    EJInt alpha;  // the associate/swap of the input that has the case form
};

/// Searches the associates of α and of swap(α), in the order
/// (ρ^j·α, j = 0..5) then (ρ^j·swap(α)), for the first (case, r) with
/// |r|, |s| <= 2 + ceil(sqrt(n)). Throws PreconditionError when none exists.
DiophantineWitness find_witness(const FrobeniusCirculant& g, EJInt alpha);

/// Value of the left-hand side of the equation named by w.
__int128 witness_lhs(const FrobeniusCirculant& g, const DiophantineWitness& w);

/// Orbit of one arc under translations and multiplication by ρ covers all
/// 6·N(α) arcs. Requires 7 <= N(α) <= bound.
bool verify_arc_transitive(EJInt alpha, std::uint64_t bound);

}  // namespace frobcirc
