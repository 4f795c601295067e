// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobcirc/circulant.hpp"
#include "frobcirc/eisenstein.hpp"
#include "frobcirc/graph.hpp"

namespace frobcirc {

/// Vertex map from a covering graph onto a base graph.
struct CoverMap {
    std::uint64_t total_order = 0;
    std::uint64_t base_order = 0;
    std::uint64_t fold = 0;
    std::vector<std::uint32_t> projection;  // indexed by total-graph vertex
};

struct CoverCheck {
    bool ok = false;
    std::string diagnostic;  // empty when ok
};

/// Surjectivity, uniform fibres of size fold, and a neighbourhood bijection
/// at every vertex. Reports the first violation found.
CoverCheck verify_cover(const CoverMap& map, const AdjacencyGraph& total, const AdjacencyGraph& base);

/// upper: A -> B, lower: B -> C; returns A -> C.
CoverMap compose_covers(const CoverMap& upper, const CoverMap& lower);

struct CirculantQuotient {
    FrobeniusCirculant base;
    CoverMap map;
};

/// Quotient by the subgroup generated by m: base order m, v -> v mod m.
/// Requires m | n and 1 < m < n.
CirculantQuotient quotient_circulant(const FrobeniusCirculant& g, std::uint64_t m);

struct EJCover {
    EJInt product;               // αβ
    AdjacencyGraph constructed;  // built from EJ_α by the lifting rule, indexed like EJQuotient(αβ)
    bool matches_direct = false; // constructed == EJQuotient(αβ).to_graph()
    CoverMap map;                // EJQuotient(αβ) index -> EJQuotient(α) index
};

/// Builds EJ_{αβ} from EJ_α: vertex αδ + ξ is joined to α(δ + η) + ξ'
/// whenever ξ - ξ' = αη + ε for a unit ε. Requires N(α) >= 7, β != 0.
EJCover ej_cover_expand(EJInt alpha, EJInt beta);

struct FrobeniusReduction {
    std::uint64_t ell = 1;     // gcd(c, d)
    EJInt reduced_alpha;       // α / ell
    Residue generator = 0;     // -c'·d'^{-1} mod n'; x + yρ -> x + y·generator is the projection
    FrobeniusCirculant base;   // canonical generator, same connection set
    CoverMap map;              // EJQuotient(α) index -> base vertex
};

/// EJ_α as an ell^2-fold cover of the Frobenius circulant isomorphic to
/// EJ_{α/ell}. Requires N(α) ≡ 1 (mod 6), N(α) >= 7 and α not an associate
/// of a rational integer.
FrobeniusReduction frobenius_reduction(EJInt alpha);

}  // namespace frobcirc
