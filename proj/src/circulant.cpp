// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "frobcirc/error.hpp"

namespace frobcirc {

namespace {

std::array<Residue, 6> signed_steps(std::uint64_t n, const std::array<Residue, 3>& steps) {
    std::array<Residue, 6> s{};
    for (std::size_t i = 0; i < 3; ++i) {
        s[2 * i] = steps[i] % n;
        s[2 * i + 1] = sub_mod(0, steps[i], n);
    }
    std::sort(s.begin(), s.end());
    return s;
}

Circulant checked_frobenius_circulant(std::uint64_t n, Residue a) {
    require(n >= 7, "Frobenius circulant order must be at least 7");
    require(n <= kMaxModulus, "Frobenius circulant order exceeds 2^62");
    require(a < n, "generator must lie in [0, n)");
    require(add_mod(sub_mod(mul_mod(a, a, n), a, n), 1, n) == 0,
            "a = " + std::to_string(a) + " does not satisfy a^2 - a + 1 ≡ 0 (mod " + std::to_string(n) + ")");
    require(n % 6 == 1, "order " + std::to_string(n) + " is not ≡ 1 (mod 6)");
    return Circulant(n, {a, a - 1, 1});
}

}  // namespace

Circulant::Circulant(std::uint64_t n, std::array<Residue, 3> steps) : n_(n), steps_(steps) {
    require(n >= 7 && n <= kMaxModulus, "circulant order must lie in [7, 2^62]");
    for (auto s : steps) require(s >= 1 && s < n, "circulant steps must lie in [1, n)");
    connection_ = signed_steps(n, steps);
    require(std::adjacent_find(connection_.begin(), connection_.end()) == connection_.end(),
            "circulant connection set {±a, ±b, ±c} is not 6 distinct residues");
    const auto g = std::gcd(std::gcd(std::gcd(steps[0], steps[1]), steps[2]), n);
    require(g == 1, "circulant is disconnected: gcd(a, b, c, n) != 1");
}

bool Circulant::is_adjacent(Residue u, Residue v) const { return arc_label(u, v) >= 0; }

int Circulant::arc_label(Residue tail, Residue head) const {
    if (tail >= n_ || head >= n_) return -1;
    const Residue diff = sub_mod(head, tail, n_);
    const auto it = std::lower_bound(connection_.begin(), connection_.end(), diff);
    if (it == connection_.end() || *it != diff) return -1;
    return static_cast<int>(it - connection_.begin());
}

std::array<Residue, 6> Circulant::neighbors(Residue v) const {
    require(v < n_, "vertex out of range");
    std::array<Residue, 6> out{};
    for (std::size_t i = 0; i < 6; ++i) out[i] = add_mod(v, connection_[i], n_);
    std::sort(out.begin(), out.end());
    return out;
}

AdjacencyGraph Circulant::materialize() const {
    require(n_ <= kMaxMaterializedOrder, "order too large to materialize");
    AdjacencyGraph g;
    g.adjacency.resize(n_);
    for (Residue v = 0; v < n_; ++v) {
        const auto nb = neighbors(v);
        g.adjacency[v].assign(nb.begin(), nb.end());
    }
    return g;
}

FrobeniusCirculant::FrobeniusCirculant(std::uint64_t n, Residue a)
    : n_(n), a_(a), powers_{}, circulant_(checked_frobenius_circulant(n, a)) {
    Residue h = 1;
    for (auto& p : powers_) {
        p = h;
        h = mul_mod(h, a, n);
    }
    ensure(h == 1, "a does not have order dividing 6");
    // Semiregularity of H on Z_n \ {0}.
    for (std::size_t k = 1; k < 6; ++k) {
        require(std::gcd(sub_mod(powers_[k], 1, n), n) == 1,
                "H is not semiregular: gcd(h - 1, n) != 1 for h = " + std::to_string(powers_[k]));
    }
    auto sorted = powers_;
    std::sort(sorted.begin(), sorted.end());
    ensure(sorted == circulant_.connection_set(), "H = <a> differs from {±1, ±a, ±(a-1)}");
}

std::array<Residue, 6> FrobeniusCirculant::neighbors(Residue v) const { return circulant_.neighbors(v); }

std::array<Residue, 6> FrobeniusCirculant::h_orbit(Residue x) const {
    require(x < n_, "vertex out of range");
    require(x != 0, "the H-orbit of 0 is trivial; x must be nonzero");
    std::array<Residue, 6> out{};
    for (std::size_t k = 0; k < 6; ++k) out[k] = mul_mod(x, powers_[k], n_);
    std::sort(out.begin(), out.end());
    ensure(std::adjacent_find(out.begin(), out.end()) == out.end(), "H-orbit has fewer than 6 elements");
    return out;
}

int FrobeniusCirculant::power_index(Residue h) const {
    for (std::size_t k = 0; k < 6; ++k) {
        if (powers_[k] == h) return static_cast<int>(k);
    }
    return -1;
}

std::vector<std::uint32_t> bfs_distances(const Circulant& g, Residue source) {
    const auto n = g.order();
    require(source < n, "BFS source out of range");
    std::vector<std::uint32_t> dist(n, kUnreachable);
    std::deque<Residue> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const Residue u = queue.front();
        queue.pop_front();
        for (auto s : g.connection_set()) {
            const Residue v = add_mod(u, s, n);
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<std::uint32_t> bfs_distances(const FrobeniusCirculant& g, Residue source) {
    return bfs_distances(g.as_circulant(), source);
}

std::uint32_t diameter_upper_bound(std::uint64_t n) {
    const long double root = std::sqrt(12.0L * static_cast<long double>(n) - 3.0L);
    return static_cast<std::uint32_t>(std::ceil((1.0L + root) / 3.0L));
}

std::uint32_t distance_closed_form(const FrobeniusCirculant& g, Residue u) {
    return distance_closed_form(g, u, diameter_upper_bound(g.order()));
}

std::uint32_t distance_closed_form(const FrobeniusCirculant& g, Residue u, std::uint32_t search_bound) {
    const auto n = g.order();
    require(u < n, "vertex out of range");
    if (u == 0) return 0;
    const auto& pw = g.powers();
    std::uint64_t best = ~std::uint64_t{0};
    for (std::size_t k = 0; k < 6; ++k) {
        // u ≡ w·a^k  with  w = u·a^(-k) = u·a^(6-k)
        const Residue w = mul_mod(u, pw[(6 - k) % 6], n);
        for (std::uint64_t j = 0; j <= search_bound && j < best; ++j) {
            const Residue i = sub_mod(w, mul_mod(j, g.generator(), n), n);
            best = std::min<std::uint64_t>(best, i + j);
        }
    }
    return static_cast<std::uint32_t>(best);
}

bool is_complete_rotation(const FrobeniusCirculant& g, Residue m) {
    const auto n = g.order();
    require(std::gcd(m % n, n) == 1, "complete-rotation test needs gcd(m, n) = 1");
    const auto& s = g.connection_set();
    // Follow the orbit of 1 under x -> m·x; a single 6-cycle visiting all of S.
    std::array<bool, 6> seen{};
    Residue x = s[0];
    for (int step = 0; step < 6; ++step) {
        const auto it = std::lower_bound(s.begin(), s.end(), x);
        if (it == s.end() || *it != x) return false;
        const auto idx = static_cast<std::size_t>(it - s.begin());
        if (seen[idx]) return false;
        seen[idx] = true;
        x = mul_mod(x, m, n);
    }
    return x == s[0];
}

std::array<std::vector<Residue>, 3> hamilton_decomposition(const FrobeniusCirculant& g) {
    const auto n = g.order();
    require(n <= kMaxMaterializedOrder, "order too large for an explicit Hamilton decomposition");
    const std::array<Residue, 3> steps{1, g.generator(), sub_mod(g.generator(), 1, n)};
    std::array<std::vector<Residue>, 3> cycles;
    for (std::size_t c = 0; c < 3; ++c) {
        ensure(std::gcd(steps[c], n) == 1, "Hamilton step is not a unit");
        cycles[c].reserve(n);
        Residue v = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            cycles[c].push_back(v);
            v = add_mod(v, steps[c], n);
        }
    }
    return cycles;
}

Residue canonical_generator(std::uint64_t n, Residue a) {
    require(n >= 1 && n <= kMaxModulus, "order out of range");
    require(a < n && add_mod(sub_mod(mul_mod(a, a, n), a, n), 1, n) == 0,
            "canonical_generator: a is not a root of x^2 - x + 1 modulo n");
    return std::min(a, sub_mod(0, mul_mod(a, a, n), n));
}

}  // namespace frobcirc
