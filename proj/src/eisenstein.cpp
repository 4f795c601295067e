// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "frobcirc/error.hpp"

namespace frobcirc {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    require(v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max(),
            "Eisenstein-Jacobi arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Nearest integer to p / den (den > 0), halves toward negative infinity.
i128 round_half_down(i128 p, i128 den) { return -floor_div(den - 2 * p, 2 * den); }

std::int64_t abs64(std::int64_t v) {
    require(v != std::numeric_limits<std::int64_t>::min(), "Eisenstein-Jacobi arithmetic overflow");
    return v < 0 ? -v : v;
}

std::int64_t gcd_cd(EJInt u) { return std::gcd(abs64(u.x), abs64(u.y)); }

// s, t with a·s + b·t = gcd(a, b) >= 0.
void extended_gcd(i128 a, i128 b, i128& g, i128& s, i128& t) {
    i128 old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (r != 0) {
        const i128 q = old_r / r;
        i128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s1;
        old_s = s1;
        s1 = tmp;
        tmp = old_t - q * t1;
        old_t = t1;
        t1 = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
}

std::array<Residue, 6> signed_set(std::uint64_t n, std::int64_t p, std::int64_t q) {
    std::array<Residue, 6> out{mod_reduce(p, n), mod_reduce(-p, n), mod_reduce(q, n),
                               mod_reduce(-q, n), mod_reduce(p + q, n), mod_reduce(-(p + q), n)};
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

EJInt operator+(EJInt u, EJInt v) { return {narrow(i128{u.x} + v.x), narrow(i128{u.y} + v.y)}; }

EJInt operator-(EJInt u, EJInt v) { return {narrow(i128{u.x} - v.x), narrow(i128{u.y} - v.y)}; }

EJInt operator-(EJInt u) { return {narrow(-i128{u.x}), narrow(-i128{u.y})}; }

EJInt operator*(EJInt u, EJInt v) {
    const i128 x = i128{u.x} * v.x - i128{u.y} * v.y;
    const i128 y = i128{u.x} * v.y + i128{v.x} * u.y + i128{u.y} * v.y;
    return {narrow(x), narrow(y)};
}

EJInt ej_conj(EJInt u) { return {narrow(i128{u.x} + u.y), narrow(-i128{u.y})}; }

EJInt ej_swap(EJInt u) { return {u.y, u.x}; }

std::int64_t ej_norm(EJInt u) { return narrow(i128{u.x} * u.x + i128{u.x} * u.y + i128{u.y} * u.y); }

EJInt ej_unit(int k) {
    static constexpr std::array<EJInt, 6> kUnits{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
    return kUnits[static_cast<std::size_t>(((k % 6) + 6) % 6)];
}

std::string to_string(EJInt u) {
    std::string s = std::to_string(u.x);
    s += u.y < 0 ? "-" : "+";
    const auto mag = static_cast<std::uint64_t>(u.y);
    s += std::to_string(u.y < 0 ? 0 - mag : mag);
    s += "ρ";
    return s;
}

EJDivMod ej_divmod(EJInt u, EJInt v) {
    require(!v.is_zero(), "ej_divmod: division by zero");
    const i128 n = ej_norm(v);
    // u / v = u·conj(v) / N(v)
    const i128 cx = i128{v.x} + v.y;
    const i128 cy = -i128{v.y};
    const i128 px = i128{u.x} * cx - i128{u.y} * cy;
    const i128 py = i128{u.x} * cy + cx * u.y + i128{u.y} * cy;
    const EJInt q{narrow(round_half_down(px, n)), narrow(round_half_down(py, n))};
    const EJInt r = u - q * v;
    ensure(ej_norm(r) < n, "ej_divmod: remainder norm not below divisor norm");
    return {q, r};
}

EJInt canonical_associate(EJInt u) {
    if (u.is_zero()) return u;
    for (int k = 0; k < 6; ++k) {
        const EJInt w = u * ej_unit(k);
        if (w.x > 0 && w.y >= 0) return w;
    }
    ensure(false, "canonical_associate: no associate in the first sector");
    return u;
}

EJInt ej_gcd(EJInt u, EJInt v) {
    require(!(u.is_zero() && v.is_zero()), "ej_gcd: both arguments are zero");
    while (!v.is_zero()) {
        const EJInt r = ej_divmod(u, v).remainder;
        u = v;
        v = r;
    }
    return canonical_associate(u);
}

CanonicalPair canonicalize(EJInt alpha) {
    require(!alpha.is_zero(), "canonicalize: alpha must be nonzero");
    bool found = false;
    CanonicalPair best;
    for (const EJInt base : {alpha, ej_swap(alpha)}) {
        for (int k = 0; k < 6; ++k) {
            const EJInt w = base * ej_unit(k);
            if (w.x >= w.y && w.y >= 0) {
                const CanonicalPair cand{w.x, w.y};
                if (!found || cand.c > best.c || (cand.c == best.c && cand.d > best.d)) best = cand;
                found = true;
            }
        }
    }
    ensure(found, "canonicalize: no associate with c >= d >= 0");
    return best;
}

EJQuotient::EJQuotient(EJInt alpha) : alpha_(alpha) {
    require(!alpha.is_zero(), "EJ quotient needs a nonzero modulus");
    const std::int64_t n = ej_norm(alpha);
    require(static_cast<std::uint64_t>(n) <= kMaxMaterializedOrder, "EJ quotient too large to materialize");
    reps_.reserve(static_cast<std::size_t>(n));
    steps_.reserve(static_cast<std::size_t>(n));
    index_.reserve(static_cast<std::size_t>(n));

    reps_.push_back({0, 0});
    steps_.push_back({});
    index_.emplace(EJInt{0, 0}, 0);
    for (std::size_t head = 0; head < reps_.size(); ++head) {
        for (int k = 0; k < 6; ++k) {
            const EJInt w = reduce(reps_[head] + ej_unit(k));
            auto [it, inserted] = index_.emplace(w, static_cast<std::uint32_t>(reps_.size()));
            if (inserted) {
                reps_.push_back(w);
                steps_.push_back({});
            }
            steps_[head][static_cast<std::size_t>(k)] = it->second;
        }
    }
    ensure(reps_.size() == static_cast<std::size_t>(n), "EJ quotient: residue count differs from N(alpha)");
}

std::uint32_t EJQuotient::index_of(EJInt u) const {
    const auto it = index_.find(reduce(u));
    ensure(it != index_.end(), "EJ quotient: remainder missing from residue system");
    return it->second;
}

AdjacencyGraph EJQuotient::to_graph() const {
    AdjacencyGraph g;
    g.adjacency.resize(reps_.size());
    g.labels.reserve(reps_.size());
    for (std::size_t v = 0; v < reps_.size(); ++v) {
        auto& adj = g.adjacency[v];
        for (auto w : steps_[v]) {
            if (w != v) adj.push_back(w);
        }
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        g.labels.push_back(to_string(reps_[v]));
    }
    return g;
}

EJGraph make_ej_graph(EJInt alpha) {
    require(!alpha.is_zero(), "EJ graph needs a nonzero generator");
    const std::int64_t n = ej_norm(alpha);
    require(n >= 7, "EJ graph needs N(alpha) >= 7, got " + std::to_string(n));
    return {alpha, static_cast<std::uint64_t>(n), canonicalize(alpha)};
}

EJGraph circulant_to_ej(const FrobeniusCirculant& g) {
    const auto n = static_cast<std::int64_t>(g.order());
    const EJInt alpha = ej_gcd({n, 0}, {static_cast<std::int64_t>(g.generator()), -1});
    ensure(ej_norm(alpha) == n, "circulant_to_ej: N(alpha) differs from n");
    ensure(gcd_cd(alpha) == 1, "circulant_to_ej: gcd(c, d) != 1");
    return make_ej_graph(alpha);
}

Residue ej_generator(EJInt alpha) {
    require(!alpha.is_zero(), "ej_generator: alpha must be nonzero");
    require(gcd_cd(alpha) == 1, "gcd(c, d) = " + std::to_string(gcd_cd(alpha)) + " != 1");
    const auto n = static_cast<std::uint64_t>(ej_norm(alpha));
    require(n >= 7, "N(alpha) must be at least 7");
    const Residue d_inv = inverse_mod(mod_reduce(alpha.y, n), n);
    return mul_mod(mod_reduce(alpha.x, n) == 0 ? 0 : n - mod_reduce(alpha.x, n), d_inv, n);
}

FrobeniusCirculant ej_to_circulant(EJInt alpha) {
    require(!alpha.is_zero(), "ej_to_circulant: alpha must be nonzero");
    require(gcd_cd(alpha) == 1, "ej_to_circulant: gcd(c, d) = " + std::to_string(gcd_cd(alpha)) + " != 1");
    const auto n = static_cast<std::uint64_t>(ej_norm(alpha));
    require(n >= 7, "ej_to_circulant: N(alpha) must be at least 7");
    require(n % 6 == 1, "ej_to_circulant: N(alpha) = " + std::to_string(n) + " is not ≡ 1 (mod 6)");
    const Residue a = ej_generator(alpha);
    return FrobeniusCirculant(n, canonical_generator(n, a));
}

std::int64_t iso_multiplier(const FrobeniusCirculant& g, EJInt alpha) {
    const auto n = g.order();
    require(!alpha.is_zero() && static_cast<std::uint64_t>(ej_norm(alpha)) == n,
            "iso_map: N(alpha) must equal the order of the circulant");
    require(gcd_cd(alpha) == 1, "iso_map: gcd(c, d) != 1");
    const std::int64_t c = alpha.x, d = alpha.y;
    const auto target = signed_set(n, c, d);
    for (const std::int64_t m : {c, -c, d, -d, c + d, -(c + d)}) {
        const Residue mm = mod_reduce(m, n);
        if (std::gcd(mm, n) != 1) continue;
        std::array<Residue, 6> image{};
        for (std::size_t i = 0; i < 6; ++i) image[i] = mul_mod(mm, g.connection_set()[i], n);
        std::sort(image.begin(), image.end());
        if (image == target) return m;
    }
    precondition_failed("iso_map: no multiplier carries {±1, ±a, ±(a-1)} onto {±c, ±d, ±(c+d)}");
}

std::vector<EJInt> iso_map(const FrobeniusCirculant& g, EJInt alpha) {
    const auto n = g.order();
    require(n <= kMaxMaterializedOrder, "iso_map: order too large to materialize");
    const std::int64_t m = iso_multiplier(g, alpha);
    // d·x0 - c·y0 = 1, so ψ(w) = w·(x0 + y0ρ).
    i128 gg = 0, s = 0, t = 0;
    extended_gcd(alpha.y, alpha.x, gg, s, t);
    ensure(gg == 1, "iso_map: Bezout coefficients failed");
    const EJInt unit_image = ej_divmod({narrow(s), narrow(-t)}, alpha).remainder;
    const Residue mm = mod_reduce(m, n);
    std::vector<EJInt> out(n);
    for (Residue u = 0; u < n; ++u) {
        const auto w = static_cast<std::int64_t>(mul_mod(mm, u, n));
        out[u] = ej_divmod(EJInt{w, 0} * unit_image, alpha).remainder;
    }
    return out;
}

bool is_isomorphism(const FrobeniusCirculant& g, EJInt alpha, const std::vector<EJInt>& image) {
    const auto n = g.order();
    if (image.size() != n) return false;
    const EJQuotient q(alpha);
    if (q.size() != n) return false;
    std::vector<std::uint32_t> idx(n);
    std::vector<bool> hit(n, false);
    for (Residue u = 0; u < n; ++u) {
        if (q.reduce(image[u]) != image[u]) return false;
        idx[u] = q.index_of(image[u]);
        if (hit[idx[u]]) return false;
        hit[idx[u]] = true;
    }
    for (Residue u = 0; u < n; ++u) {
        const auto& nb = q.unit_neighbors(idx[u]);
        for (auto s : g.connection_set()) {
            const auto w = idx[add_mod(u, s, n)];
            if (std::find(nb.begin(), nb.end(), w) == nb.end()) return false;
        }
    }
    return true;
}

std::uint32_t ej_diameter(EJInt alpha) {
    const auto [c, d] = canonicalize(alpha);
    return static_cast<std::uint32_t>((2 * c + d) / 3);
}

std::vector<std::uint64_t> distance_distribution(EJInt alpha) {
    const auto [c, d] = canonicalize(alpha);
    const auto n = static_cast<std::uint64_t>(ej_norm(alpha));
    const std::int64_t diam = (2 * c + d) / 3;
    std::vector<std::uint64_t> w(static_cast<std::size_t>(diam) + 1, 0);
    w[0] = 1;
    std::int64_t midpoint = -1;
    for (std::int64_t t = 1; t <= diam; ++t) {
        auto& wt = w[static_cast<std::size_t>(t)];
        if (2 * t < c + d) {
            wt = static_cast<std::uint64_t>(6 * t);
        } else if (2 * t == c + d) {
            midpoint = t;
        } else if (3 * t < 2 * c + d) {
            wt = static_cast<std::uint64_t>(6 * (2 * c + d) - 18 * t);
        } else {
            wt = 2;  // 3t = 2c + d, so c ≡ d (mod 3)
        }
    }
    if (midpoint >= 0) {
        std::uint64_t rest = 0;
        for (auto v : w) rest += v;
        ensure(rest <= n, "distance_distribution: entries exceed N(alpha)");
        w[static_cast<std::size_t>(midpoint)] = n - rest;
    }
    return w;
}

std::string to_string(WitnessCase c) {
    switch (c) {
        case WitnessCase::Eq7: return "eq7";
        case WitnessCase::Eq8: return "eq8";
        case WitnessCase::Eq9: return "eq9";
    }
    return "?";
}

__int128 witness_lhs(const FrobeniusCirculant& g, const DiophantineWitness& w) {
    const i128 n = g.order(), a = g.generator();
    const i128 k = (a * a - a + 1) / n;
    const i128 m = w.m, r = w.r, s = w.s;
    i128 linear = 0;
    switch (w.which) {
        case WitnessCase::Eq7: linear = -((a - 2) * r + (2 * a - 1) * s); break;
        case WitnessCase::Eq8: linear = (a + 1) * r + (2 * a - 1) * s; break;
        case WitnessCase::Eq9: linear = (a + 1) * r - (a - 2) * s; break;
    }
    return k * m * m + linear * m + (r * r + r * s + s * s) * n;
}

DiophantineWitness find_witness(const FrobeniusCirculant& g, EJInt alpha) {
    const auto n64 = g.order();
    require(n64 <= (std::uint64_t{1} << 30), "find_witness: order above 2^30");
    require(static_cast<std::uint64_t>(ej_norm(alpha)) == n64, "find_witness: N(alpha) must equal n");
    const i128 n = n64, a = g.generator();
    const auto bound = static_cast<std::int64_t>(2 + std::ceil(std::sqrt(static_cast<double>(n64))));

    std::vector<EJInt> variants;
    for (const EJInt base : {alpha, ej_swap(alpha)}) {
        for (int j = 0; j < 6; ++j) variants.push_back(base * ej_unit(j));
    }
    for (const EJInt& v : variants) {
        const i128 c = v.x, d = v.y;
        for (const auto which : {WitnessCase::Eq7, WitnessCase::Eq8, WitnessCase::Eq9}) {
            for (std::int64_t idx = 0; idx <= 2 * bound; ++idx) {
                const std::int64_t r = (idx % 2 == 1) ? (idx + 1) / 2 : -idx / 2;
                i128 m = c - r * n;
                i128 num = 0;
                if (which == WitnessCase::Eq9) {
                    if (m % a != 0) continue;
                    m /= a;
                    num = d + m * (a - 1);
                } else if (which == WitnessCase::Eq7) {
                    num = d + m * a;
                } else {
                    num = d - m * (a - 1);
                }
                if (num % n != 0) continue;
                const i128 s = num / n;
                if (s > bound || s < -bound) continue;
                const i128 am = m < 0 ? -m : m;
                if (std::gcd(static_cast<std::uint64_t>(am % n), n64) != 1) continue;
                DiophantineWitness w{which, narrow(m), r, static_cast<std::int64_t>(s), v};
                if (witness_lhs(g, w) == 1) return w;
            }
        }
    }
    precondition_failed("find_witness: no (m, r, s) within |r|, |s| <= " + std::to_string(bound) + " for alpha = " +
                        to_string(alpha));
}

bool verify_arc_transitive(EJInt alpha, std::uint64_t bound) {
    require(!alpha.is_zero(), "verify_arc_transitive: alpha must be nonzero");
    const auto n = static_cast<std::uint64_t>(ej_norm(alpha));
    require(n >= 7, "verify_arc_transitive: N(alpha) must be at least 7");
    require(n <= bound, "verify_arc_transitive: N(alpha) = " + std::to_string(n) + " exceeds bound " +
                            std::to_string(bound));
    const EJQuotient q(alpha);
    std::vector<std::uint32_t> times_rho(n);
    for (std::uint32_t v = 0; v < n; ++v) times_rho[v] = q.index_of(q.representative(v) * ej_unit(1));

    // Each generator must send arcs to arcs.
    for (std::uint32_t v = 0; v < n; ++v) {
        for (std::size_t k = 0; k < 6; ++k) {
            const auto head = q.unit_neighbors(v)[k];
            if (q.unit_neighbors(times_rho[v])[(k + 1) % 6] != times_rho[head]) return false;
        }
    }

    // Arc (v, v + ρ^k) has id 6v + k.
    std::vector<bool> seen(6 * n, false);
    std::deque<std::uint64_t> queue{0};
    seen[0] = true;
    std::uint64_t count = 1;
    auto visit = [&](std::uint64_t id) {
        if (!seen[id]) {
            seen[id] = true;
            ++count;
            queue.push_back(id);
        }
    };
    while (!queue.empty()) {
        const std::uint64_t id = queue.front();
        queue.pop_front();
        const auto v = static_cast<std::uint32_t>(id / 6);
        const auto k = id % 6;
        visit(6 * std::uint64_t{q.unit_neighbors(v)[0]} + k);  // + 1
        visit(6 * std::uint64_t{q.unit_neighbors(v)[1]} + k);  // + ρ
        visit(6 * std::uint64_t{times_rho[v]} + (k + 1) % 6);   // · ρ
    }
    return count == 6 * n;
}

}  // namespace frobcirc
