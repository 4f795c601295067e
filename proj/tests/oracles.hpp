// SPDX-License-Identifier: Apache-2.0
// Brute-force reference implementations. Nothing here calls into the library
// except for plain data types, so results can be compared against it.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// every a in [0, n) with a^2 - a + 1 = 0 (mod n)
inline std::vector<u64> scan_solutions(u64 n) {
    std::vector<u64> out;
    for (u64 a = 0; a < n; ++a) {
        const unsigned __int128 v = static_cast<unsigned __int128>(a) * a + 1 + n - a % n;
        if (v % n == 0) out.push_back(a);
    }
    return out;
}

inline unsigned distinct_primes(u64 n) {
    unsigned k = 0;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ++k;
        while (n % p == 0) n /= p;
    }
    return k + (n > 1 ? 1 : 0);
}

// sorted {±1, ±a, ±(a-1)} mod n
inline std::array<u64, 6> connection_set(u64 n, u64 a) {
    const u64 b = (a + n - 1) % n;
    std::array<u64, 6> s{1, n - 1, a % n, (n - a % n) % n, b, (n - b) % n};
    std::sort(s.begin(), s.end());
    return s;
}

// distinct connection sets among the solutions: graphs up to equality of S
inline std::size_t distinct_connection_sets(u64 n) {
    std::set<std::array<u64, 6>> sets;
    for (auto a : scan_solutions(n)) sets.insert(connection_set(n, a));
    return sets.size();
}

using Adjacency = std::vector<std::vector<std::uint32_t>>;

inline Adjacency circulant(u64 n, u64 a) {
    Adjacency adj(n);
    const auto s = connection_set(n, a);
    for (u64 v = 0; v < n; ++v)
        for (auto x : s) adj[v].push_back(static_cast<std::uint32_t>((v + x) % n));
    return adj;
}

inline std::vector<std::uint32_t> bfs(const Adjacency& adj, std::uint32_t src) {
    std::vector<std::uint32_t> d(adj.size(), UINT32_MAX);
    std::deque<std::uint32_t> q{src};
    d[src] = 0;
    while (!q.empty()) {
        const auto v = q.front();
        q.pop_front();
        for (auto w : adj[v])
            if (d[w] == UINT32_MAX) {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
    }
    return d;
}

// sphere sizes |{v : d(0, v) = t}| for t = 0..ecc
inline std::vector<u64> spheres(const Adjacency& adj) {
    const auto d = bfs(adj, 0);
    std::vector<u64> s(*std::max_element(d.begin(), d.end()) + 1, 0);
    for (auto x : d) ++s[x];
    return s;
}

inline u64 distance_sum(const Adjacency& adj) {
    const auto d = bfs(adj, 0);
    return std::accumulate(d.begin(), d.end(), u64{0});
}

// Z[rho]/(alpha) built from first principles: reduce c + d*rho by the lattice
// spanned by alpha and rho*alpha with a Hermite basis of the ideal.
struct EJLattice {
    i64 c, d;  // alpha = c + d rho
    i64 n;     // norm
    i64 h, t;  // ideal = {(k t + m g, k h)}
    i64 g;

    EJLattice(i64 c_, i64 d_) : c(c_), d(d_) {
        n = c * c + c * d + d * d;
        // basis alpha = (c, d), rho alpha = (-d, c + d); Euclid on the y column
        i64 y1 = d, y2 = c + d, x1 = c, x2 = -d;
        while (y2 != 0) {
            const i64 q = y1 / y2;
            y1 -= q * y2;
            x1 -= q * x2;
            std::swap(y1, y2);
            std::swap(x1, x2);
        }
        if (y1 < 0) {
            y1 = -y1;
            x1 = -x1;
        }
        h = y1;
        t = x1;
        g = n / h;
    }

    u64 order() const { return static_cast<u64>(n); }

    // vertex index of x + y rho
    u64 index(i64 x, i64 y) const {
        i64 k = y / h;
        if (y - k * h < 0) --k;
        y -= k * h;
        x -= k * t;
        x %= g;
        if (x < 0) x += g;
        return static_cast<u64>(y * g + x);
    }

    Adjacency graph() const {
        Adjacency adj(order());
        const i64 ux[6] = {1, -1, 0, 0, -1, 1}, uy[6] = {0, 0, 1, -1, 1, -1};
        for (i64 y = 0; y < h; ++y)
            for (i64 x = 0; x < g; ++x)
                for (int k = 0; k < 6; ++k)
                    adj[index(x, y)].push_back(static_cast<std::uint32_t>(index(x + ux[k], y + uy[k])));
        return adj;
    }
};

}  // namespace oracle
