// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/covers.hpp"

#include <algorithm>
#include <numeric>

#include "frobcirc/error.hpp"

namespace frobcirc {

CoverCheck verify_cover(const CoverMap& map, const AdjacencyGraph& total, const AdjacencyGraph& base) {
    auto fail = [](std::string msg) { return CoverCheck{false, std::move(msg)}; };
    if (map.total_order != total.size() || map.projection.size() != total.size())
        return fail("projection length " + std::to_string(map.projection.size()) + " differs from total order " +
                    std::to_string(total.size()));
    if (map.base_order != base.size())
        return fail("base order " + std::to_string(map.base_order) + " differs from base graph size " +
                    std::to_string(base.size()));
    if (base.size() == 0 || map.fold * base.size() != total.size())
        return fail("fold " + std::to_string(map.fold) + " times base order is not the total order");

    std::vector<std::uint64_t> fibre(base.size(), 0);
    for (std::size_t u = 0; u < total.size(); ++u) {
        if (map.projection[u] >= base.size())
            return fail("vertex " + std::to_string(u) + " maps outside the base graph");
        ++fibre[map.projection[u]];
    }
    for (std::size_t v = 0; v < base.size(); ++v) {
        if (fibre[v] != map.fold)
            return fail("fibre over base vertex " + std::to_string(v) + " has size " + std::to_string(fibre[v]) +
                        ", expected " + std::to_string(map.fold));
    }

    std::vector<std::uint32_t> image;
    for (std::size_t u = 0; u < total.size(); ++u) {
        image.clear();
        for (auto w : total.adjacency[u]) image.push_back(map.projection[w]);
        std::sort(image.begin(), image.end());
        const auto& target = base.adjacency[map.projection[u]];
        std::vector<std::uint32_t> sorted_target(target.begin(), target.end());
        std::sort(sorted_target.begin(), sorted_target.end());
        if (image != sorted_target)
            return fail("neighbourhood of vertex " + std::to_string(u) + " is not mapped bijectively onto that of " +
                        std::to_string(map.projection[u]));
    }
    return {true, {}};
}

CoverMap compose_covers(const CoverMap& upper, const CoverMap& lower) {
    require(upper.base_order == lower.total_order, "compose_covers: orders do not chain");
    CoverMap out{upper.total_order, lower.base_order, upper.fold * lower.fold, {}};
    out.projection.reserve(upper.projection.size());
    for (auto v : upper.projection) {
        require(v < lower.projection.size(), "compose_covers: projection out of range");
        out.projection.push_back(lower.projection[v]);
    }
    return out;
}

CirculantQuotient quotient_circulant(const FrobeniusCirculant& g, std::uint64_t m) {
    const auto n = g.order();
    require(m > 1 && m < n && n % m == 0,
            "quotient_circulant: m = " + std::to_string(m) + " is not a proper nontrivial divisor of " +
                std::to_string(n));
    require(n <= kMaxMaterializedOrder, "quotient_circulant: order too large to materialize the projection");
    const Residue am = g.generator() % m;
    FrobeniusCirculant base(m, canonical_generator(m, am));
    CoverMap map{n, m, n / m, std::vector<std::uint32_t>(n)};
    for (Residue v = 0; v < n; ++v) map.projection[v] = static_cast<std::uint32_t>(v % m);
    return {std::move(base), std::move(map)};
}

EJCover ej_cover_expand(EJInt alpha, EJInt beta) {
    require(!alpha.is_zero() && ej_norm(alpha) >= 7, "ej_cover_expand: N(alpha) must be at least 7");
    require(!beta.is_zero(), "ej_cover_expand: beta must be nonzero");
    const EJInt product = alpha * beta;
    const EJQuotient qa(alpha), qb(beta), qab(product);
    const std::size_t na = qa.size(), nb = qb.size(), n = qab.size();
    ensure(na * nb == n, "ej_cover_expand: N(alpha)·N(beta) differs from N(alpha·beta)");

    // Vertex αδ + ξ for ξ a residue mod α and δ a residue mod β.
    std::vector<std::uint32_t> lifted(na * nb);
    std::vector<bool> hit(n, false);
    for (std::size_t xi = 0; xi < na; ++xi) {
        for (std::size_t de = 0; de < nb; ++de) {
            const auto v = qab.index_of(alpha * qb.representative(static_cast<std::uint32_t>(de)) +
                                        qa.representative(static_cast<std::uint32_t>(xi)));
            ensure(!hit[v], "ej_cover_expand: cosets of (alpha)/(alpha·beta) overlap");
            hit[v] = true;
            lifted[xi * nb + de] = v;
        }
    }

    EJCover out{product, {}, false, {static_cast<std::uint64_t>(n), na, nb, std::vector<std::uint32_t>(n)}};
    out.constructed.adjacency.resize(n);
    for (std::size_t xi = 0; xi < na; ++xi) {
        const EJInt x = qa.representative(static_cast<std::uint32_t>(xi));
        for (int k = 0; k < 6; ++k) {
            // ξ - ε = αη + ξ'
            const auto [eta, xi_rep] = ej_divmod(x - ej_unit(k), alpha);
            const auto xi2 = qa.index_of(xi_rep);
            for (std::size_t de = 0; de < nb; ++de) {
                const auto de2 = qb.index_of(qb.representative(static_cast<std::uint32_t>(de)) + eta);
                out.constructed.adjacency[lifted[xi * nb + de]].push_back(lifted[xi2 * nb + de2]);
            }
        }
        for (std::size_t de = 0; de < nb; ++de) out.map.projection[lifted[xi * nb + de]] = static_cast<std::uint32_t>(xi);
    }
    for (auto& adj : out.constructed.adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    const AdjacencyGraph direct = qab.to_graph();
    out.constructed.labels = direct.labels;
    out.matches_direct = direct.adjacency == out.constructed.adjacency;
    return out;
}

FrobeniusReduction frobenius_reduction(EJInt alpha) {
    require(!alpha.is_zero(), "frobenius_reduction: alpha must be nonzero");
    const auto n = static_cast<std::uint64_t>(ej_norm(alpha));
    require(n >= 7, "frobenius_reduction: N(alpha) must be at least 7");
    require(n % 6 == 1, "frobenius_reduction: N(alpha) = " + std::to_string(n) + " is not ≡ 1 (mod 6)");
    require(canonicalize(alpha).d != 0, "frobenius_reduction: alpha is an associate of a rational integer");

    const auto ell = static_cast<std::uint64_t>(std::gcd(alpha.x < 0 ? -alpha.x : alpha.x, alpha.y < 0 ? -alpha.y : alpha.y));
    const auto l = static_cast<std::int64_t>(ell);
    const EJInt reduced{alpha.x / l, alpha.y / l};
    const auto n2 = static_cast<std::uint64_t>(ej_norm(reduced));
    ensure(n2 * ell * ell == n, "frobenius_reduction: N(alpha) != ell^2 N(alpha')");
    const Residue a = ej_generator(reduced);

    FrobeniusReduction out{ell, reduced, a, ej_to_circulant(reduced), {}};
    const EJQuotient q(alpha);
    out.map = {n, n2, ell * ell, std::vector<std::uint32_t>(q.size())};
    for (std::uint32_t v = 0; v < q.size(); ++v) {
        const EJInt u = q.representative(v);
        out.map.projection[v] = static_cast<std::uint32_t>(add_mod(mod_reduce(u.x, n2), mul_mod(mod_reduce(u.y, n2), a, n2), n2));
    }
    return out;
}

}  // namespace frobcirc
